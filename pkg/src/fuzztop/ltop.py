"""L-topologies on L-valued sets, continuity and the standard constructions.

A topology is stored as a read-only (k, |X|) index matrix whose rows are the
open L-sets in lexicographic order, so two topologies are equal iff their
matrices are.
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .checks import CheckReport, Verdict
from .errors import (BaseDoesNotGenerate, DimensionMismatch, EmptySubset, ExplosionCap,
                     MuNotTop, NonExtensionalSubbase, NotATopology,
                     NotMVAlgebra, NotSurjective, ParentMismatch)
from .fsetcat import coproduct_lvset, image_equality, product_lvset
from .fuzzfn import FuzzyFunction, image_values, invert, preimage_values
from .glmonoid import classify_monoid
from .lvset import (LSubset, all_extensional, all_lsubsets, is_extensional_values,
                    make_lvset, restrict_lvset, subset_indices)


def _canon(rows, n):
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
    rows = np.unique(rows, axis=0)
    rows.flags.writeable = False
    return rows


def _values(space, A):
    if isinstance(A, LSubset):
        if A.parent != space:
            raise ParentMismatch("L-subset lives on another L-valued set")
        return A.values
    a = np.asarray(A)
    if a.dtype.kind not in "iu":
        a = space.monoid.parse(a.tolist())
    if a.shape != (space.size,):
        raise DimensionMismatch("L-subset has the wrong length", a.shape)
    return a.astype(np.int64)


class LTopology:
    """Finite family of extensional L-sets closed under ∧, ∨ and containing 0_X, 1_X."""

    def __init__(self, space, rows):
        self.space = space
        self.matrix = _canon(rows, space.size)
        self._keys = {tuple(int(v) for v in r): i for i, r in enumerate(self.matrix)}

    @property
    def monoid(self):
        return self.space.monoid

    @cached_property
    def opens(self):
        return tuple(LSubset(self.space, r) for r in self.matrix)

    def __contains__(self, A):
        return tuple(int(v) for v in _values(self.space, A)) in self._keys

    def contains_rows(self, rows):
        return np.array([tuple(int(v) for v in r) in self._keys for r in rows], dtype=bool)

    def __len__(self):
        return len(self.matrix)

    def __eq__(self, other):
        return (isinstance(other, LTopology) and self.space == other.space
                and np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self):
        return f"LTopology({len(self)} opens on {self.space.size} points)"


@dataclass(frozen=True, eq=False)
class LTopSpace:
    set: object
    topology: LTopology

    def __post_init__(self):
        if self.topology.space != self.set:
            raise ParentMismatch("topology lives on another L-valued set")

    @property
    def monoid(self):
        return self.set.monoid

    @property
    def matrix(self):
        return self.topology.matrix

    @property
    def opens(self):
        return self.topology.opens

    @cached_property
    def is_mv(self):
        return classify_monoid(self.monoid).is_mv

    @cached_property
    def closed_matrix(self):
        """Rows A with A^c open (MV monoids only), canonical order."""
        if not self.is_mv:
            raise NotMVAlgebra("closed L-sets need an MV-algebra", (self.monoid.name,))
        m = self.monoid
        return _canon(m.residuum[self.matrix, m.bot], self.set.size)

    @property
    def closed_family(self):
        return tuple(LSubset(self.set, r) for r in self.closed_matrix)

    def __eq__(self, other):
        return isinstance(other, LTopSpace) and self.topology == other.topology

    def __hash__(self):
        return hash(self.topology)


def _topology_hits(space, rows):
    m = space.monoid
    n = space.size
    out = {}
    ext = [i for i, r in enumerate(rows) if not is_extensional_values(m, space.E, r)]
    out["extensional"] = ext[0] if ext else None
    keys = {tuple(int(v) for v in r) for r in rows}
    out["contains 0_X"] = None if (m.bot,) * n in keys else ()
    out["contains 1_X"] = None if (m.top,) * n in keys else ()
    for law, table in (("closed under binary meets", m.meet), ("closed under binary joins", m.join)):
        hit = None
        for i in range(len(rows)):
            combo = table[rows[i][None, :], rows[i:]]
            for j, r in enumerate(combo):
                if tuple(int(v) for v in r) not in keys:
                    hit = (i, i + j)
                    break
            if hit:
                break
        out[law] = hit
    return out


def validate_topology(space, opens):
    """LTopology if ``opens`` is an L-topology on ``space``, else the failing report."""
    rows = _canon([_values(space, A) for A in opens], space.size) if len(opens) else \
        np.zeros((0, space.size), dtype=np.int64)
    m = space.monoid
    rep = CheckReport()
    hits = _topology_hits(space, rows)
    for law, hit in hits.items():
        if hit is None:
            rep.add(law, True)
        elif law == "extensional":
            rep.add(law, False, (m.labels_of(rows[hit]),))
        elif hit == ():
            rep.add(law, False, ("missing",))
        else:
            i, j = hit
            rep.add(law, False, (m.labels_of(rows[i]), m.labels_of(rows[j])))
    if not rep.ok:
        return rep
    return LTopology(space, rows)


def make_topology(space, opens):
    """Like validate_topology but raises NotATopology on failure."""
    out = validate_topology(space, opens)
    if isinstance(out, CheckReport):
        bad = out.failures[0]
        raise NotATopology(f"family fails: {bad.law}", bad.witness, out)
    return out


DEFAULT_CAP = 4096


def generate_rows(space, subbase_rows, cap=DEFAULT_CAP):
    """All joins of finite meets of the subbase rows (empty meet 1_X, empty join 0_X)."""
    m = space.monoid
    n = space.size
    base = np.full((1, n), m.top, dtype=np.int64)
    for s in subbase_rows:
        base = np.unique(np.vstack([base, m.meet[base, s[None, :]]]), axis=0)
        if len(base) > cap:
            raise ExplosionCap(f"base exceeds {cap} members", (len(base), cap))
    opens = np.full((1, n), m.bot, dtype=np.int64)
    for b in base:
        opens = np.unique(np.vstack([opens, m.join[opens, b[None, :]]]), axis=0)
        if len(opens) > cap:
            raise ExplosionCap(f"topology exceeds {cap} opens", (len(opens), cap))
    return base, opens


def generate_topology(space, subbase, repair=False, cap=DEFAULT_CAP):
    """Smallest L-topology containing ``subbase``.

    Non-extensional members raise NonExtensionalSubbase unless ``repair`` is
    set, in which case they are replaced by their extensional hulls.
    """
    m = space.monoid
    rows = [_values(space, A) for A in subbase]
    fixed = []
    for r in rows:
        if not is_extensional_values(m, space.E, r):
            if not repair:
                raise NonExtensionalSubbase("subbase member is not extensional", (m.labels_of(r),))
            r = m.join_reduce(m.tnorm[r[:, None], space.E], axis=0)
        fixed.append(r)
    _, opens = generate_rows(space, fixed, cap)
    return LTopology(space, opens)


def indiscrete(space):
    m = space.monoid
    n = space.size
    return LTopology(space, [[m.bot] * n, [m.top] * n])


def discrete_like(space, limit=200_000):
    """All extensional L-subsets: the finest topology on (X, E)."""
    return LTopology(space, all_extensional(space, limit))


def constants_topology(space, values=None):
    m = space.monoid
    values = range(m.size) if values is None else values
    return LTopology(space, [[c] * space.size for c in values] + [[m.bot] * space.size,
                                                                  [m.top] * space.size])


def all_topologies(space, limit=8):
    """Every topology on a tiny space whose opens come from the extensional sets.

    Brute force over subbases of at most ``limit`` non-constant extensional
    sets; meant for probes on one- and two-point spaces.
    """
    ext = all_extensional(space)
    m = space.monoid
    extra = [r for r in ext if not ((r == m.bot).all() or (r == m.top).all())]
    seen = {}
    for k in range(0, min(len(extra), limit) + 1):
        for combo in combinations(range(len(extra)), k):
            sub = [extra[i] for i in combo]
            _, opens = generate_rows(space, sub)
            T = LTopology(space, opens)
            seen[T.matrix.tobytes()] = T
    return sorted(seen.values(), key=lambda T: (len(T), T.matrix.tobytes()))


# --- interior and closure ---------------------------------------------------

def interior_values(T, b):
    """Int(B) = ⋁{U ∈ τ | U ≤ B}; ``b`` may be (n,) or (k, n)."""
    m = T.monoid
    b = np.asarray(b)
    M = T.matrix
    below = m.leq[M, b[..., None, :]].all(axis=-1)      # (..., |τ|)
    cand = np.where(below[..., None], M, m.bot)                      # (..., |τ|, n)
    return m.join_reduce(cand, axis=-2)


def interior(T, B):
    if isinstance(T, LTopSpace):
        T = T.topology
    return LSubset(T.space, interior_values(T, _values(T.space, B)))


def closure_values(S, a):
    """cl(A) = ⋀{C closed | A ≤ C}; ``a`` may be (n,) or (k, n)."""
    m = S.monoid
    a = np.asarray(a)
    C = S.closed_matrix
    above = m.leq[a[..., None, :], C].all(axis=-1)
    cand = np.where(above[..., None], C, m.top)
    return m.meet_reduce(cand, axis=-2)


@dataclass(frozen=True)
class ClosureResult:
    closed_family: tuple
    closure: LSubset


def closure_ops(S, A):
    """Closed family and closure of A; raises NotMVAlgebra off MV monoids."""
    C = S.closed_family
    return ClosureResult(C, LSubset(S.set, closure_values(S, _values(S.set, A))))


# --- continuity -------------------------------------------------------------

def _check_pair(F, S_dom, S_cod):
    if F.dom != S_dom.set or F.cod != S_cod.set:
        raise ParentMismatch("fuzzy function does not run between these spaces")


def is_continuous_values(m, F, S_dom, S_cod):
    """Continuity for a raw matrix (no witness)."""
    pre = m.join_reduce(m.tnorm[F[None, :, :], S_cod.matrix[:, None, :]], axis=-1)
    return bool(S_dom.topology.contains_rows(pre).all())


def is_continuous(F, S_dom, S_cod):
    """F←(V) ∈ τ_X for every V ∈ τ_Y; witness is the first offending V."""
    _check_pair(F, S_dom, S_cod)
    pre = preimage_values(F, S_cod.matrix)
    ok = S_dom.topology.contains_rows(pre)
    if ok.all():
        return Verdict(True)
    i = int(np.flatnonzero(~ok)[0])
    m = F.monoid
    return Verdict(False, (m.labels_of(S_cod.matrix[i]), m.labels_of(pre[i])))


def _generated_by_base(S, base_rows):
    m = S.monoid
    n = S.set.size
    opens = np.full((1, n), m.bot, dtype=np.int64)
    for b in base_rows:
        opens = np.unique(np.vstack([opens, m.join[opens, b[None, :]]]), axis=0)
    return np.array_equal(_canon(opens, n), S.matrix)


def base_and_subbase(S, subbase=None):
    """A (base, subbase) pair generating τ; defaults to (τ, τ)."""
    if subbase is None:
        return S.matrix, S.matrix
    rows = np.array([_values(S.set, A) for A in subbase], dtype=np.int64).reshape(-1, S.set.size)
    base, _ = generate_rows(S.set, rows)
    return base, rows


MAX_EXHAUSTIVE = 20_000


def _all_sets_or_sample(X, extra_rows, cap=MAX_EXHAUSTIVE, seed=0):
    m = X.monoid
    if m.size ** X.size <= cap:
        return all_lsubsets(X, cap)
    rng = np.random.default_rng(seed)
    sample = rng.integers(0, m.size, size=(cap, X.size))
    return np.unique(np.vstack([sample, extra_rows]), axis=0)


def continuity_audit(F, S_dom, S_cod, base=None, subbase=None):
    """Evaluate (1con)-(6con) and the equivalences the continuity theorems state.

    Conditions are recorded as ``condition`` entries. The equivalences are
    ``law`` entries: (1)⇔(2)⇔(3) always, ⇔(4) only at μ(F) = ⊤, (1)⇔(5) on MV
    monoids and ⇔(6) on MV monoids at μ(F) = ⊤. Outside those hypotheses the
    relation is recorded as ``info``.

    Quantifiers over all L-sets are exhaustive when |L|^|X| ≤ MAX_EXHAUSTIVE
    and otherwise use a fixed-seed sample plus the relevant opens.
    """
    _check_pair(F, S_dom, S_cod)
    m = F.monoid
    lab = m.labels_of
    if base is None and subbase is None:
        base_rows, sub_rows = base_and_subbase(S_cod)
    else:
        if subbase is not None:
            sub_rows = np.array([_values(S_cod.set, A) for A in subbase],
                                dtype=np.int64).reshape(-1, S_cod.set.size)
            derived_base, _ = generate_rows(S_cod.set, sub_rows)
        else:
            sub_rows = None
        if base is not None:
            base_rows = np.array([_values(S_cod.set, A) for A in base],
                                 dtype=np.int64).reshape(-1, S_cod.set.size)
        else:
            base_rows = derived_base
        if sub_rows is None:
            sub_rows = base_rows
        if not _generated_by_base(S_cod, base_rows):
            raise BaseDoesNotGenerate("base does not generate the codomain topology")
        _, gen = generate_rows(S_cod.set, sub_rows)
        if not np.array_equal(_canon(gen, S_cod.set.size), S_cod.matrix):
            raise BaseDoesNotGenerate("subbase does not generate the codomain topology")

    rep = CheckReport()
    conds = {}

    def cond(name, ok, witness):
        conds[name] = bool(ok)
        rep.add(name, ok, witness, kind="condition")

    v = is_continuous(F, S_dom, S_cod)
    cond("(1con)", v.passed, v.witness)

    def rows_open(rows):
        pre = preimage_values(F, rows)
        ok = S_dom.topology.contains_rows(pre)
        return ok, pre

    ok, _ = rows_open(base_rows)
    cond("(2con)", ok.all(), None if ok.all() else (lab(base_rows[int(np.flatnonzero(~ok)[0])]),))

    Bs = _all_sets_or_sample(S_cod.set, S_cod.matrix)
    lhs = preimage_values(F, interior_values(S_cod.topology, Bs))
    rhs = interior_values(S_dom.topology, preimage_values(F, Bs))
    bad = ~m.leq[lhs, rhs].all(axis=1)
    cond("(3con)", not bad.any(), None if not bad.any() else (lab(Bs[int(np.flatnonzero(bad)[0])]),))

    ok, _ = rows_open(sub_rows)
    cond("(4con)", ok.all(), None if ok.all() else (lab(sub_rows[int(np.flatnonzero(~ok)[0])]),))

    mv = classify_monoid(m).is_mv
    if mv:
        C_cod = S_cod.closed_matrix
        pre = preimage_values(F, C_cod)
        cset = {tuple(int(v) for v in r) for r in S_dom.closed_matrix}
        okc = np.array([tuple(int(v) for v in r) in cset for r in pre])
        cond("(5con)", okc.all(), None if okc.all() else (lab(C_cod[int(np.flatnonzero(~okc)[0])]),))
        As = _all_sets_or_sample(S_dom.set, S_dom.closed_matrix)
        lhs = image_values(F, closure_values(S_dom, As))
        rhs = closure_values(S_cod, image_values(F, As))
        bad = ~m.leq[lhs, rhs].all(axis=1)
        cond("(6con)", not bad.any(), None if not bad.any() else (lab(As[int(np.flatnonzero(bad)[0])]),))

    def equiv(a, b, asserted, note=""):
        same = conds[a] == conds[b]
        name = f"{a}<=>{b}"
        if asserted:
            rep.add(name, same, None if same else (conds[a], conds[b]))
        else:
            rep.add(name, same, None if same else (conds[a], conds[b]), kind="info",
                    detail=note or "equivalence not asserted")

    top = F.mu == m.top
    equiv("(1con)", "(2con)", True)
    equiv("(1con)", "(3con)", True)
    equiv("(1con)", "(4con)", top, "equivalence not asserted at μ<⊤")
    if mv:
        equiv("(1con)", "(5con)", True)
        equiv("(1con)", "(6con)", top, "equivalence not asserted at μ<⊤")
    return rep


# --- initial lift -------------------------------------------------------------

def initial_topology(F, S_cod):
    """τ_X = {F←(V) | V ∈ τ_Y}; needs μ(F) = ⊤ so that F←(1_Y) = 1_X."""
    if F.cod != S_cod.set:
        raise ParentMismatch("F does not land in the codomain space")
    m = F.monoid
    if F.mu != m.top:
        raise MuNotTop("initial lift needs μ(F) = ⊤", (m.label(F.mu),))
    rows = preimage_values(F, S_cod.matrix)
    return make_topology(F.dom, list(rows))


def audit_initial_lift(F, S_cod, probes=()):
    """Check the initial lift: topology, continuity, weakest, factorisation.

    ``probes`` is an iterable of (S_Z, H) with H: Z ⇝ X; for each one whose
    composite F∘H is continuous, H must be continuous.
    """
    tau = initial_topology(F, S_cod)
    S = LTopSpace(F.dom, tau)
    rep = CheckReport()
    v = is_continuous(F, S, S_cod)
    rep.add("F continuous for the initial topology", v.passed, v.witness)
    hit = None
    for i, U in enumerate(tau.matrix):
        rows = np.delete(tau.matrix, i, axis=0)
        smaller = LTopology.__new__(LTopology)
        smaller.space, smaller.matrix = F.dom, rows
        smaller._keys = {tuple(int(v) for v in r): j for j, r in enumerate(rows)}
        if is_continuous(F, LTopSpace(F.dom, smaller), S_cod):
            hit = (F.monoid.labels_of(U),)
            break
    rep.add("weakest: removing any open breaks continuity", hit is None, hit)
    hit = None
    m = F.monoid
    for j, (SZ, H) in enumerate(probes):
        comp = FuzzyFunction(H.dom, F.cod, m.compose(H.F, F.F), check=False)
        if is_continuous(comp, SZ, S_cod) and not is_continuous(H, SZ, S):
            hit = (j,)
            break
    rep.add("initial lift factorisation", hit is None, hit)
    return rep


# --- constructions ------------------------------------------------------------

def product_space(family, cap=64):
    """Product space with subbase {p_i←(U) | U ∈ τ_i}; returns (space, Product)."""
    family = list(family)
    prod = product_lvset([S.set for S in family], cap=cap)
    sub = []
    for S, p in zip(family, prod.projections):
        sub.extend(preimage_values(p, S.matrix))
    _, opens = generate_rows(prod.lvset, sub, cap=max(DEFAULT_CAP, cap))
    return LTopSpace(prod.lvset, LTopology(prod.lvset, opens)), prod


def subspace_space(S, subset):
    """Subspace on Y ⊆ X: restricted equality, restricted opens."""
    if len(subset) == 0:
        raise EmptySubset("subspace of an empty subset")
    Y = restrict_lvset(S.set, subset)
    idx = subset_indices(S.set, subset)
    return LTopSpace(Y, LTopology(Y, S.matrix[:, idx]))


def embedding(S_sub, S):
    """The inclusion Y ⇝ X as the fuzzy function e(y, x) = E_X(y, x)."""
    idx = subset_indices(S.set, S_sub.set.elements)
    return FuzzyFunction(S_sub.set, S.set, S.set.E[idx, :], check=False)


def coproduct_space(family):
    """Sum space generated by the summands' opens extended by ⊥ off their block."""
    family = list(family)
    cop = coproduct_lvset([S.set for S in family])
    m = cop.lvset.monoid
    n = cop.lvset.size
    sub = []
    for i, S in enumerate(family):
        blk = cop.block(i)
        for r in S.matrix:
            row = np.full(n, m.bot, dtype=np.int64)
            row[blk] = r
            sub.append(row)
    _, opens = generate_rows(cop.lvset, sub)
    return LTopSpace(cop.lvset, LTopology(cop.lvset, opens)), cop


def crisp_lift(S, q, cod_elements=None):
    """Raw matrix of a crisp surjection q hull-extended on the domain side:
    Q(x, y) = ⋁{E_X(x, a) | q(a) = y}."""
    m = S.monoid
    q = np.asarray(q, dtype=np.int64)
    k = int(q.max()) + 1 if len(q) else 0
    Q = np.full((S.set.size, k), m.bot, dtype=np.int64)
    for y in range(k):
        fib = np.flatnonzero(q == y)
        if len(fib):
            Q[:, y] = m.join_reduce(S.set.E[:, fib], axis=1)
    return Q


def quotient_space(S, q, elements=None):
    """Quotient by a crisp surjection q: X → {0..k-1}.

    The equality is the image equality of the hull-extended crisp lift; the
    opens are the V with V∘q ∈ τ_X that are extensional for that equality.
    Returns (space, lift) where lift is the quotient fuzzy function X ⇝ Y.
    """
    q = np.asarray(q, dtype=np.int64)
    if q.shape != (S.set.size,):
        raise DimensionMismatch("q must assign a class to every point", q.shape)
    k = int(q.max()) + 1
    if q.min() < 0 or len(np.unique(q)) != k:
        raise NotSurjective("q must be a surjection onto 0..k-1", tuple(int(v) for v in q))
    m = S.monoid
    Q = crisp_lift(S, q)
    elements = elements or [f"[{','.join(S.set.elements[i] for i in np.flatnonzero(q == y))}]"
                            for y in range(k)]
    Y = image_equality(Q, S.set, elements)
    reps = np.array([int(np.flatnonzero(q == y)[0]) for y in range(k)])
    rows = []
    for U in S.matrix:
        if not all((U[q == y] == U[q == y][0]).all() for y in range(k)):
            continue
        V = U[reps]
        if is_extensional_values(m, Y.E, V):
            rows.append(V)
    lift = FuzzyFunction(S.set, Y, Q, check=False)
    return LTopSpace(Y, LTopology(Y, rows)), lift


@dataclass(frozen=True)
class HomeoVerdict:
    degree: int | None
    reason: str = ""

    @property
    def is_homeomorphism(self):
        return self.degree is not None


def homeomorphism_degree(F, S_dom, S_cod):
    """Largest α such that F is a fuzzy α-homeomorphism: μ(F)∧σ(F) when F is
    injective and both F and F⁻¹ are continuous, otherwise no degree."""
    _check_pair(F, S_dom, S_cod)
    if not F.injective:
        return HomeoVerdict(None, "not injective")
    if not is_continuous(F, S_dom, S_cod):
        return HomeoVerdict(None, "not continuous")
    if not is_continuous(invert(F), S_cod, S_dom):
        return HomeoVerdict(None, "inverse not continuous")
    return HomeoVerdict(int(F.monoid.meet[F.mu, F.sigma]), "")


def metric_space(monoid, distances, elements=None):
    """L-valued set with E = 1 - ρ for a chain-indexed distance matrix ρ.

    ``distances`` holds chain indices of ρ, so E(x, x') = top - ρ(x, x').
    """
    d = np.asarray(distances, dtype=np.int64)
    return make_lvset(monoid, monoid.top - d, elements)
