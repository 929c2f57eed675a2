"""Category-level constructions over fuzzy functions.

Transport of equalities along raw matrices, finite products and coproducts,
the degree laws of the fuzzy category, and search probes for the four
universal properties the theory leaves open.
"""
from dataclasses import dataclass, field
from itertools import product as cartesian

import numpy as np

from .checks import CheckReport
from .errors import (BudgetExceeded, CarrierTooLarge, DimensionMismatch, EmptyFamily,
                     ImageNotAFuzzyFunction, MonoidMismatch, NotTopSurjective,
                     RawViolates1ff, RawViolates2ff, RawViolates3ff, UnknownCatalogName)
from .fuzzfn import FuzzyFunction, axiom_hits, compose, identity
from .lvset import crisp_equality, equality_defect, make_lvset


def _raw(monoid, raw):
    raw = np.asarray(raw)
    if raw.dtype.kind not in "iu":
        raw = monoid.parse(raw.tolist())
    return raw.astype(np.int64)


def preimage_equality(raw, cod, elements=None):
    """Largest equality on X making ``raw`` a fuzzy function into ``cod``.

    E_X(x,x') = ⋀_y (F(x,y)↦F(x',y)) ∧ (F(x',y)↦F(x,y)).
    """
    m = cod.monoid
    F = _raw(m, raw)
    if F.ndim != 2 or F.shape[1] != cod.size or F.shape[0] == 0:
        raise DimensionMismatch("raw matrix must be |X|×|Y|", F.shape)
    n = F.shape[0]
    elements = elements or [f"x{i}" for i in range(n)]
    h1, _, h3 = axiom_hits(m, crisp_equality(m, n), cod.E, F)
    if h1 is not None:
        raise RawViolates1ff("raw matrix fails (1ff)", (elements[h1[0]],) + tuple(cod.elements[i] for i in h1[1:]))
    if h3 is not None:
        raise RawViolates3ff("raw matrix fails (3ff)", (elements[h3[0]],) + tuple(cod.elements[i] for i in h3[1:]))
    fwd = m.residuum[F[:, None, :], F[None, :, :]]
    both = m.meet[fwd, fwd.transpose(1, 0, 2)]
    return make_lvset(m, m.meet_reduce(both, axis=2), elements)


def image_equality(raw, dom, elements=None, check_1ff=True):
    """Smallest equality on Y for which ``raw`` satisfies (3ff).

    E_Y(y,y') = ⋁_x F(x,y)*F(x,y'). Requires raw to be ⊤-surjective. The
    result is re-validated: if it is not *-transitive TransitivityFail is
    raised, and if raw fails (1ff) against it ImageNotAFuzzyFunction is raised
    (then no equality on Y makes raw a fuzzy function, since (1ff) only gets
    harder as the equality grows). ``check_1ff=False`` skips that last check
    and returns the equality anyway.
    """
    m = dom.monoid
    F = _raw(m, raw)
    if F.ndim != 2 or F.shape[0] != dom.size or F.shape[1] == 0:
        raise DimensionMismatch("raw matrix must be |X|×|Y|", F.shape)
    k = F.shape[1]
    elements = elements or [f"y{i}" for i in range(k)]
    _, h2, _ = axiom_hits(m, dom.E, crisp_equality(m, k), F)
    if h2 is not None:
        raise RawViolates2ff("raw matrix fails (2ff)",
                             (dom.elements[h2[0]], dom.elements[h2[1]], elements[h2[2]]))
    EY = m.join_reduce(m.tnorm[F[:, :, None], F[:, None, :]], axis=0)
    diag = np.diag(EY)
    short = np.flatnonzero(diag != m.top)
    if len(short):
        y = int(short[0])
        raise NotTopSurjective("raw is not ⊤-surjective; E_Y(y,y) < ⊤",
                               (elements[y], m.label(diag[y])))
    Y = make_lvset(m, EY, elements)
    h1, _, _ = axiom_hits(m, dom.E, EY, F)
    if h1 is not None and check_1ff:
        x, y, y2 = h1
        raise ImageNotAFuzzyFunction("raw fails (1ff) against the image equality",
                                     (dom.elements[x], elements[y], elements[y2]))
    return Y


@dataclass(frozen=True, eq=False)
class Product:
    lvset: object
    factors: tuple
    coords: np.ndarray
    projections: tuple

    def pair(self, functions):
        """⟨F_i⟩(x, y) = ⋀_i F_i(x, y_i)."""
        functions = list(functions)
        if len(functions) != len(self.factors):
            raise DimensionMismatch("one function per factor", (len(functions), len(self.factors)))
        dom = functions[0].dom
        for F, Y in zip(functions, self.factors):
            if F.dom != dom or F.cod != Y:
                raise MonoidMismatch("functions must share a domain and hit the factors")
        m = dom.monoid
        stack = np.stack([F.F[:, self.coords[:, i]] for i, F in enumerate(functions)])
        return FuzzyFunction(dom, self.lvset, m.meet_reduce(stack, axis=0), check=False)


def _check_family(family):
    family = list(family)
    if not family:
        raise EmptyFamily("family of L-valued sets is empty")
    m = family[0].monoid
    if any(X.monoid != m for X in family):
        raise MonoidMismatch("family members use different monoids")
    return family, m


def product_lvset(family, cap=64):
    """Product (Y, E) with E(y,y') = ⋀_i E_i(y_i, y'_i).

    Projection i is realised as p_i(y, z) = E_i(y_i, z); on crisp factors this
    is the relation "⊤ iff the i-th coordinate of y is z".
    """
    family, m = _check_family(family)
    total = int(np.prod([X.size for X in family]))
    if total > cap:
        raise CarrierTooLarge(f"product carrier has {total} > {cap} tuples", (total, cap))
    coords = np.array(list(cartesian(*[range(X.size) for X in family])), dtype=np.int64)
    coords = coords.reshape(total, len(family))
    stack = np.stack([X.E[np.ix_(coords[:, i], coords[:, i])] for i, X in enumerate(family)])
    E = m.meet_reduce(stack, axis=0)
    elements = ["(" + ",".join(X.elements[c] for X, c in zip(family, row)) + ")" for row in coords]
    Y = make_lvset(m, E, elements, validate=False)
    projs = tuple(FuzzyFunction(Y, X, X.E[coords[:, i], :], check=False)
                  for i, X in enumerate(family))
    coords.flags.writeable = False
    return Product(Y, tuple(family), coords, projs)


@dataclass(frozen=True, eq=False)
class Coproduct:
    lvset: object
    summands: tuple
    offsets: tuple
    injections: tuple

    def block(self, i):
        return np.arange(self.offsets[i], self.offsets[i] + self.summands[i].size)

    def copair(self, functions):
        """⊕F_i(x, y) = F_i(x, y) for x in the i-th summand."""
        functions = list(functions)
        if len(functions) != len(self.summands):
            raise DimensionMismatch("one function per summand")
        cod = functions[0].cod
        for F, X in zip(functions, self.summands):
            if F.cod != cod or F.dom != X:
                raise MonoidMismatch("functions must leave the summands and share a codomain")
        return FuzzyFunction(self.lvset, cod, np.vstack([F.F for F in functions]), check=False)


def coproduct_lvset(family):
    """Disjoint sum: E_i inside each block, ⊥ across blocks."""
    family, m = _check_family(family)
    sizes = [X.size for X in family]
    offsets = tuple(int(v) for v in np.concatenate([[0], np.cumsum(sizes)[:-1]]))
    n = sum(sizes)
    E = np.full((n, n), m.bot, dtype=np.int64)
    elements = []
    for i, X in enumerate(family):
        o = offsets[i]
        E[o:o + X.size, o:o + X.size] = X.E
        elements += [f"{i}:{e}" for e in X.elements]
    S = make_lvset(m, E, elements, validate=False)
    inj = tuple(FuzzyFunction(X, S, E[offsets[i]:offsets[i] + X.size, :], check=False)
                for i, X in enumerate(family))
    return Coproduct(S, tuple(family), offsets, inj)


@dataclass
class DegreeLedger:
    omega: dict = field(default_factory=dict)
    mu: dict = field(default_factory=dict)


def omega(X):
    """ω(X, E) = inf_x E(x, x)."""
    return int(X.monoid.meet_reduce(np.diag(X.E), axis=0))


def degree_ledger(objects, morphisms):
    led = DegreeLedger()
    for i, X in enumerate(objects):
        led.omega[i] = omega(X)
    for j, F in enumerate(morphisms):
        led.mu[j] = F.mu
    return led


def degree_law_audit(objects, morphisms):
    """Check the three fuzzy-category degree laws on a sample.

    Law (2) is checked on every composable ordered pair of sampled morphisms,
    law (3) on the identity of every sampled object.
    """
    rep = CheckReport()
    if not objects and not morphisms:
        return rep
    m = (objects[0] if objects else morphisms[0].dom).monoid
    lab = m.labels

    hit = None
    for j, F in enumerate(morphisms):
        bound = m.meet[omega(F.dom), omega(F.cod)]
        if not m.leq[F.mu, bound]:
            hit = (j, lab[F.mu], lab[bound])
            break
    rep.add("(1) μ(f) ≤ ω(X)∧ω(Y)", hit is None, hit)

    hit = None
    for j, F in enumerate(morphisms):
        for k, G in enumerate(morphisms):
            if F.cod != G.dom:
                continue
            GF = compose(G, F)
            bound = m.tnorm[G.mu, F.mu]
            if not m.leq[bound, GF.mu]:
                hit = (j, k, lab[GF.mu], lab[bound])
                break
        if hit:
            break
    rep.add("(2) μ(g∘f) ≥ μ(g)*μ(f)", hit is None, hit)

    hit = None
    for i, X in enumerate(objects):
        w = omega(X)
        mu_id = identity(X).mu
        if not (w == mu_id == m.top):
            hit = (i, lab[mu_id], lab[w])
            break
    rep.add("(3) μ(e_X) = ω(X) = ⊤", hit is None, hit)
    return rep


# --- universal-property probes --------------------------------------------

PROBES = ("initial_structure", "final_structure", "fset_bottom_products", "ftop_products")


@dataclass
class ProbeResult:
    """Outcome of an exhaustive search; never a proof either way."""
    question: str
    counterexample: dict | None
    examined: int
    complete: bool
    note: str = ""

    @property
    def verdict(self):
        if self.counterexample is not None:
            return "counterexample found"
        if self.complete:
            return "none found within bounds"
        return "none found within budget (search incomplete)"


def all_equalities(m, n):
    """Every L-valued equality on n points (brute force; tiny n only)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for vals in cartesian(range(m.size), repeat=len(pairs)):
        E = np.full((n, n), m.top, dtype=np.int64)
        for (i, j), v in zip(pairs, vals):
            E[i, j] = E[j, i] = v
        if equality_defect(m, E) is None:
            out.append(E)
    return out


def all_matrices(m, rows, cols):
    for vals in cartesian(range(m.size), repeat=rows * cols):
        yield np.array(vals, dtype=np.int64).reshape(rows, cols)


def _ff_ok(m, EX, EY, F):
    return all(h is None for h in axiom_hits(m, EX, EY, F))


class _Budget:
    def __init__(self, budget):
        if budget is None or budget < 1:
            raise BudgetExceeded("probe budget must allow at least one instance", (budget,))
        self.left = budget
        self.used = 0

    def take(self):
        if self.left == 0:
            return False
        self.left -= 1
        self.used += 1
        return True


def universal_probe(question, monoid, bounds=(2, 2, 2), budget=100_000, frame="bottom",
                    instance=None):
    """Search small instances for a failure of one open universal property.

    ``bounds`` = (|X|, |Y|, |Z|). Instances are enumerated lexicographically,
    so results are deterministic. ``frame="top"`` restricts the given source
    or sink morphisms to μ = ⊤. ``instance`` lets final_structure start from a
    caller-provided (dom, raw) pair, which must be ⊤-surjective.

    Questions:
      initial_structure    F: X ⇝ (Y,E_Y) satisfying (1ff),(3ff), E_X its
                           preimage equality; G: (Z,E_Z) ⇝ X satisfying (1ff),
                           (3ff) against E_X. Is F∘G a fuzzy function iff G is?
      final_structure      F: (X,E_X) ⇝ Y with (2ff) and σ = ⊤, E_Y its image
                           equality; G: Y ⇝ (Z,E_Z) with (2ff) against E_Y.
                           Is G∘F a fuzzy function iff G is?
      fset_bottom_products Does every family F_i: X ⇝ Y_i (any μ) factor
                           through the product via some fuzzy function?
      ftop_products        Same with topologies: continuous F_i and a
                           continuous factorisation into the product space.
    """
    if question not in PROBES:
        raise UnknownCatalogName(f"unknown probe {question!r}", (question,))
    if frame not in ("bottom", "top"):
        raise UnknownCatalogName(f"unknown frame {frame!r}", (frame,))
    b = _Budget(budget)
    if question == "initial_structure":
        return _probe_initial(monoid, bounds, b, frame)
    if question == "final_structure":
        return _probe_final(monoid, bounds, b, frame, instance)
    return _probe_products(monoid, bounds, b, frame, topological=question == "ftop_products",
                           question=question)


def _mu(m, F):
    return int(m.meet_reduce(m.join_reduce(F, axis=1), axis=0))


def _probe_initial(m, bounds, b, frame):
    nx, ny, nz = bounds
    eqs_y, eqs_z = all_equalities(m, ny), all_equalities(m, nz)
    crisp_x = crisp_equality(m, nx)
    for EY in eqs_y:
        for F in all_matrices(m, nx, ny):
            h1, _, h3 = axiom_hits(m, crisp_x, EY, F)
            if h1 is not None or h3 is not None:
                continue
            if frame == "top" and _mu(m, F) != m.top:
                continue
            fwd = m.residuum[F[:, None, :], F[None, :, :]]
            EX = m.meet_reduce(m.meet[fwd, fwd.transpose(1, 0, 2)], axis=2)
            for EZ in eqs_z:
                for G in all_matrices(m, nz, nx):
                    g1, g2, g3 = axiom_hits(m, EZ, EX, G)
                    if g1 is not None or g3 is not None:
                        continue
                    if not b.take():
                        return ProbeResult("initial_structure", None, b.used, False)
                    g_ok = g2 is None
                    fg_ok = _ff_ok(m, EZ, EY, m.compose(G, F))
                    if g_ok != fg_ok:
                        return ProbeResult("initial_structure", {
                            "E_Y": m.labels_of(EY), "F": m.labels_of(F), "E_X": m.labels_of(EX),
                            "E_Z": m.labels_of(EZ), "G": m.labels_of(G),
                            "G_is_fuzzy_function": g_ok, "FG_is_fuzzy_function": fg_ok,
                        }, b.used, False)
    return ProbeResult("initial_structure", None, b.used, True)


def _probe_final(m, bounds, b, frame, instance):
    nx, ny, nz = bounds
    if instance is not None:
        dom, raw = instance
        raw = _raw(m, raw)
        sig = int(m.meet_reduce(m.join_reduce(raw, axis=0), axis=0))
        if sig != m.top:
            raise NotTopSurjective("final_structure needs a ⊤-surjective raw matrix",
                                   (m.label(sig),))
        sources = [(dom.E, raw)]
        nx, ny = raw.shape
    else:
        sources = ((EX, F) for EX in all_equalities(m, nx) for F in all_matrices(m, nx, ny))
    eqs_z = all_equalities(m, nz)
    crisp_y = crisp_equality(m, ny)
    for EX, F in sources:
        _, h2, _ = axiom_hits(m, EX, crisp_y, F)
        if h2 is not None:
            continue
        if int(m.meet_reduce(m.join_reduce(F, axis=0), axis=0)) != m.top:
            continue
        if frame == "top" and _mu(m, F) != m.top:
            continue
        EY = m.join_reduce(m.tnorm[F[:, :, None], F[:, None, :]], axis=0)
        if equality_defect(m, EY) is not None or not _ff_ok(m, EX, EY, F):
            continue
        for EZ in eqs_z:
            for G in all_matrices(m, ny, nz):
                _, g2, _ = axiom_hits(m, EY, EZ, G)
                if g2 is not None:
                    continue
                if not b.take():
                    return ProbeResult("final_structure", None, b.used, False)
                g_ok = _ff_ok(m, EY, EZ, G)
                gf_ok = _ff_ok(m, EX, EZ, m.compose(F, G))
                if g_ok != gf_ok:
                    return ProbeResult("final_structure", {
                        "E_X": m.labels_of(EX), "F": m.labels_of(F), "E_Y": m.labels_of(EY),
                        "E_Z": m.labels_of(EZ), "G": m.labels_of(G),
                        "G_is_fuzzy_function": g_ok, "GF_is_fuzzy_function": gf_ok,
                    }, b.used, False)
    return ProbeResult("final_structure", None, b.used, True)


def _probe_products(m, bounds, b, frame, topological, question):
    # X ⇝ Y1 × Y2 with |X| = bounds[0], |Y1| = bounds[1], |Y2| = bounds[2].
    from .ltop import LTopSpace, all_topologies, is_continuous_values
    nx, n1, n2 = bounds
    crisp = [crisp_equality(m, k) for k in (nx, n1, n2)]
    X = make_lvset(m, crisp[0], [f"x{i}" for i in range(nx)], validate=False)
    Y1 = make_lvset(m, crisp[1], [f"a{i}" for i in range(n1)], validate=False)
    Y2 = make_lvset(m, crisp[2], [f"b{i}" for i in range(n2)], validate=False)
    prod = product_lvset([Y1, Y2])
    P = prod.lvset
    funcs1 = [F for F in all_matrices(m, nx, n1) if _ff_ok(m, X.E, Y1.E, F)]
    funcs2 = [F for F in all_matrices(m, nx, n2) if _ff_ok(m, X.E, Y2.E, F)]
    if frame == "top":
        funcs1 = [F for F in funcs1 if _mu(m, F) == m.top]
        funcs2 = [F for F in funcs2 if _mu(m, F) == m.top]
    cands = [F for F in all_matrices(m, nx, P.size) if _ff_ok(m, X.E, P.E, F)]
    p1, p2 = (p.F for p in prod.projections)
    spaces = [(None, None, None)]
    if topological:
        from .ltop import product_space
        spaces = []
        for tx in all_topologies(X, limit=6):
            for t1 in all_topologies(Y1, limit=4):
                for t2 in all_topologies(Y2, limit=4):
                    spaces.append((tx, t1, t2))
    for tx, t1, t2 in spaces:
        if topological:
            SX, S1, S2 = LTopSpace(X, tx), LTopSpace(Y1, t1), LTopSpace(Y2, t2)
            SP = product_space([S1, S2])[0]
        for F1 in funcs1:
            if topological and not is_continuous_values(m, F1, SX, S1):
                continue
            for F2 in funcs2:
                if topological and not is_continuous_values(m, F2, SX, S2):
                    continue
                if not b.take():
                    return ProbeResult(question, None, b.used, False)
                found = any(np.array_equal(m.compose(F, p1), F1)
                            and np.array_equal(m.compose(F, p2), F2)
                            and (not topological or is_continuous_values(m, F, SX, SP))
                            for F in cands)
                if not found:
                    ce = {"F1": m.labels_of(F1), "F2": m.labels_of(F2),
                          "note": "no fuzzy function into the product factors through both projections"}
                    if topological:
                        ce["tau_X"] = m.labels_of(tx.matrix)
                        ce["tau_1"] = m.labels_of(t1.matrix)
                        ce["tau_2"] = m.labels_of(t2.matrix)
                    return ProbeResult(question, ce, b.used, False)
    return ProbeResult(question, None, b.used, True)
