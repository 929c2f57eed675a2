"""Fuzzy functions F: (X, E_X) ⇝ (Y, E_Y) as |X|×|Y| matrices of monoid indices."""
import numpy as np

from .checks import CheckReport, Verdict
from .errors import (AxiomViolation, CodomainMismatch, DimensionMismatch, MonoidMismatch,
                     NotCrispRepresentable, NotInjective, ParentMismatch)
from .lvset import LSubset, extensionality_defect, restrict_lvset, subset_indices


def _ro(a):
    a = np.array(a, dtype=np.int64)
    a.flags.writeable = False
    return a


def _hit(mask):
    h = np.argwhere(mask)
    return None if len(h) == 0 else tuple(int(v) for v in h[0])


def axiom_hits(m, EX, EY, F):
    """First violation index triple for (1ff), (2ff), (3ff) (None when satisfied)."""
    T, le = m.tnorm, m.leq
    h1 = _hit(~le[T[F[:, :, None], EY[None, :, :]], F[:, None, :]])
    h2 = _hit(~le[T[EX[:, :, None], F[:, None, :]], F[None, :, :]])
    h3 = _hit(~le[T[F[:, :, None], F[:, None, :]], EY[None, :, :]])
    return h1, h2, h3


def injectivity_hit(m, EX, F):
    """Witness (x, x', y) with F(x,y)*F(x',y) ≰ E_X(x,x'), or None."""
    lhs = m.tnorm[F[:, None, :], F[None, :, :]]
    return _hit(~m.leq[lhs, EX[:, :, None]])


def check_axioms(dom, cod, F):
    m = dom.monoid
    h1, h2, h3 = axiom_hits(m, dom.E, cod.E, F)
    rep = CheckReport()
    xs, ys = dom.elements, cod.elements
    rep.add("(1ff)", h1 is None, None if h1 is None else (xs[h1[0]], ys[h1[1]], ys[h1[2]]))
    rep.add("(2ff)", h2 is None, None if h2 is None else (xs[h2[0]], xs[h2[1]], ys[h2[2]]))
    rep.add("(3ff)", h3 is None, None if h3 is None else (xs[h3[0]], ys[h3[1]], ys[h3[2]]))
    return rep


def _coerce_matrix(dom, cod, matrix):
    if dom.monoid != cod.monoid:
        raise MonoidMismatch("domain and codomain use different monoids")
    F = np.asarray(matrix)
    if F.dtype.kind not in "iu":
        F = dom.monoid.parse(F.tolist())
    if F.shape != (dom.size, cod.size):
        raise DimensionMismatch("matrix shape must be |X|×|Y|", (F.shape, dom.size, cod.size))
    if F.size and (F.min() < 0 or F.max() >= dom.monoid.size):
        raise DimensionMismatch("matrix entries outside the carrier")
    return F


class FuzzyFunction:
    """Validated fuzzy function with cached degrees.

    ``mu`` is the degree of being everywhere defined, ``sigma`` the degree of
    surjectivity; ``injective`` records axiom (inj).
    """

    __slots__ = ("dom", "cod", "F", "mu", "sigma", "injective")

    def __init__(self, dom, cod, matrix, check=True):
        F = _coerce_matrix(dom, cod, matrix)
        if check:
            rep = check_axioms(dom, cod, F)
            if not rep.ok:
                bad = rep.failures[0]
                raise AxiomViolation(f"matrix violates {bad.law}", bad.witness, rep)
        m = dom.monoid
        self.dom, self.cod, self.F = dom, cod, _ro(F)
        self.mu = int(m.meet_reduce(m.join_reduce(F, axis=1), axis=0))
        self.sigma = int(m.meet_reduce(m.join_reduce(F, axis=0), axis=0))
        self.injective = injectivity_hit(m, dom.E, F) is None

    @property
    def monoid(self):
        return self.dom.monoid

    @property
    def T(self):
        return self.F.T

    def __eq__(self, other):
        return (isinstance(other, FuzzyFunction) and self.dom == other.dom
                and self.cod == other.cod and np.array_equal(self.F, other.F))

    def __hash__(self):
        return hash(self.F.tobytes())

    def __repr__(self):
        return f"FuzzyFunction({self.monoid.labels_of(self.F)})"


def validate_ff(dom, cod, matrix):
    """FuzzyFunction when (1ff)-(3ff) hold, otherwise the failing CheckReport."""
    F = _coerce_matrix(dom, cod, matrix)
    rep = check_axioms(dom, cod, F)
    if not rep.ok:
        return rep
    return FuzzyFunction(dom, cod, F, check=False)


def identity(X):
    return FuzzyFunction(X, X, X.E, check=False)


def degrees(F):
    return F.mu, F.sigma


def compose(G, F):
    """G∘F with (G∘F)(x,z) = ⋁_y F(x,y)*G(y,z)."""
    if F.cod != G.dom:
        raise CodomainMismatch("codomain of F differs from domain of G")
    return FuzzyFunction(F.dom, G.cod, F.monoid.compose(F.F, G.F), check=False)


def injectivity(F):
    h = injectivity_hit(F.monoid, F.dom.E, F.F)
    if h is None:
        return Verdict(True)
    x, x2, y = h
    return Verdict(False, (F.dom.elements[x], F.dom.elements[x2], F.cod.elements[y]))


def invert(F):
    """F⁻¹(y,x) = F(x,y); a fuzzy function exactly when F is injective."""
    v = injectivity(F)
    if not v:
        raise NotInjective("F is not injective", v.witness)
    return FuzzyFunction(F.cod, F.dom, F.F.T, check=False)


def image_values(F, a):
    """F→ on raw index arrays; ``a`` may be (|X|,) or (k, |X|)."""
    m = F.monoid
    a = np.asarray(a)
    return m.join_reduce(m.tnorm[F.F.T, a[..., None, :]], axis=-1)


def preimage_values(F, b):
    """F← on raw index arrays; ``b`` may be (|Y|,) or (k, |Y|)."""
    m = F.monoid
    b = np.asarray(b)
    return m.join_reduce(m.tnorm[F.F, b[..., None, :]], axis=-1)


def image(F, A):
    """F→(A)(y) = ⋁_x F(x,y)*A(x)."""
    if A.parent != F.dom:
        raise ParentMismatch("A is not an L-subset of the domain")
    return LSubset(F.cod, image_values(F, A.values))


def preimage(F, B):
    """F←(B)(x) = ⋁_y F(x,y)*B(y)."""
    if B.parent != F.cod:
        raise ParentMismatch("B is not an L-subset of the codomain")
    return LSubset(F.dom, preimage_values(F, B.values))


def from_crisp(f, dom, cod):
    """Fuzzy function of an extensional map: F(x,y) = E_Y(f(x), y).

    On a crisp codomain this is the graph of f (⊤ iff f(x) = y).
    """
    f = np.array([cod.index(v) for v in f], dtype=np.int64)
    v = extensionality_defect(f, dom, cod)
    if not v:
        raise AxiomViolation("map is not extensional", v.witness)
    return FuzzyFunction(dom, cod, cod.E[f, :], check=False)


def to_crisp(F):
    """Recover f(x) = the unique y with F(x,y) = ⊤."""
    m = F.monoid
    out = []
    for x in range(F.dom.size):
        tops = np.flatnonzero(F.F[x] == m.top)
        if len(tops) != 1:
            raise NotCrispRepresentable("row has no unique ⊤ entry",
                                        (F.dom.elements[x], m.labels_of(F.F[x])))
        out.append(int(tops[0]))
    return tuple(out)


def restrict_ff(F, xs=None, ys=None):
    """Restriction of F to subspaces X' ⊆ X, Y' ⊆ Y (defaults: whole sets)."""
    xs = F.dom.elements if xs is None else xs
    ys = F.cod.elements if ys is None else ys
    dom = restrict_lvset(F.dom, xs)
    cod = restrict_lvset(F.cod, ys)
    xi, yi = subset_indices(F.dom, xs), subset_indices(F.cod, ys)
    return FuzzyFunction(dom, cod, F.F[np.ix_(xi, yi)], check=False)


# --- proposition audit ------------------------------------------------------

SAMPLE_LIMIT = 4096


def sample_lsubsets(X, rng=None, size=256):
    """All L-subsets of X when there are at most SAMPLE_LIMIT, else a sample
    that always contains the constants."""
    m = X.monoid
    n = X.size
    consts = np.repeat(np.arange(m.size)[:, None], n, axis=1)
    if m.size ** n <= SAMPLE_LIMIT:
        return np.indices((m.size,) * n).reshape(n, -1).T.astype(np.int64)
    rng = np.random.default_rng(0) if rng is None else rng
    return np.unique(np.vstack([consts, rng.integers(0, m.size, size=(size, n))]), axis=0)


def _pairs(k, rng, limit=4096):
    if k * k <= limit:
        i, j = np.divmod(np.arange(k * k), k)
        return i, j
    return rng.integers(0, k, limit), rng.integers(0, k, limit)


def proposition_audit(F, A_rows=None, B_rows=None, rng=None):
    """Check the image/preimage and injection/surjection laws on sampled L-sets.

    Binary meets and joins use pairs of sampled sets; the meet/join of the whole
    sample is checked as well so larger families are covered. Bijectivity at
    level α is read as: injective with μ(F) ≥ α and σ(F) ≥ α.
    """
    m = F.monoid
    rng = np.random.default_rng(0) if rng is None else rng
    A = sample_lsubsets(F.dom, rng) if A_rows is None else np.asarray(A_rows, dtype=np.int64)
    B = sample_lsubsets(F.cod, rng) if B_rows is None else np.asarray(B_rows, dtype=np.int64)
    T, le, J, M = m.tnorm, m.leq, m.join, m.meet
    lab = m.labels_of
    top = m.top
    mu, sg = F.mu, F.sigma
    mu2, sg2 = T[mu, mu], T[sg, sg]
    img = lambda a: image_values(F, a)
    pre = lambda b: preimage_values(F, b)
    ext = lambda rows, E: rows[le[T[rows[:, :, None], E[None]], rows[:, None, :]].all(axis=(1, 2))]
    Aext, Bext = ext(A, F.dom.E), ext(B, F.cod.E)
    rep = CheckReport()

    def first(mask, *rows):
        mask = np.asarray(mask)
        if mask.all():
            return None
        i = int(np.flatnonzero(~mask.reshape(len(mask), -1).all(axis=1))[0])
        return tuple(lab(r[i]) for r in rows)

    def law(name, mask, *rows):
        w = first(mask, *rows)
        rep.add(name, w is None, w)

    def fold(rows, table, neutral):
        out = np.full(rows.shape[1], neutral, dtype=np.int64)
        for r in rows:
            out = table[out, r]
        return out

    def with_total(rows, table, neutral):
        """Pairs of rows plus (whole family, neutral) as a final pair."""
        i, j = _pairs(len(rows), rng)
        tot = fold(rows, table, neutral)[None]
        R1 = np.vstack([rows[i], tot]) if len(rows) else tot
        R2 = np.vstack([rows[j], np.full_like(tot, neutral)]) if len(rows) else tot
        return R1, R2

    # image / preimage laws
    A1, A2 = with_total(A, J, m.bot)
    law("im-pr 1: image preserves joins", img(J[A1, A2]) == J[img(A1), img(A2)], A1, A2)
    A1, A2 = with_total(A, M, top)
    law("im-pr 2: image of meet below meet of images",
        le[img(M[A1, A2]), M[img(A1), img(A2)]], A1, A2)
    B1, B2 = with_total(Bext, M, top)
    meet_pre = M[pre(B1), pre(B2)]
    pre_meet = pre(M[B1, B2])
    ok = le[T[meet_pre, mu2], pre_meet] & le[pre_meet, meet_pre]
    if mu == top:
        ok &= pre_meet == meet_pre
    law("im-pr 3: preimage of meet, μ² bounds", ok, B1, B2)
    B1, B2 = with_total(B, J, m.bot)
    law("im-pr 4: preimage preserves joins", pre(J[B1, B2]) == J[pre(B1), pre(B2)], B1, B2)
    law("im-pr 5: A*μ² ≤ F←(F→(A))", le[T[A, mu2], pre(img(A))], A)
    law("im-pr 6: F→(F←(B)) ≤ B for extensional B", le[img(pre(Bext)), Bext], Bext)
    cs = np.arange(m.size)
    cY = np.repeat(cs[:, None], F.cod.size, axis=1)
    pc = pre(cY)
    ok = le[T[mu, cs][:, None], pc]
    if mu == top:
        ok &= pc == cs[:, None]
    law("im-pr 7: F←(c_Y) ≥ μ*c", ok, cY)
    rowsup = m.join_reduce(F.F, axis=1)
    sq_sup = m.join_reduce(T[F.F, F.F], axis=1)
    w = _hit(~le[T[rowsup, rowsup], sq_sup])
    rep.add("(basic1): ⋁_y F(x,y)² ≥ (⋁_y F(x,y))²", w is None,
            None if w is None else (F.dom.elements[w[0]],))
    w = _hit(~le[mu2, sq_sup])
    rep.add("(basic2): ⋁_y F(x,y)² ≥ μ(F)²", w is None,
            None if w is None else (F.dom.elements[w[0]],))

    # injections, surjections, bijections
    inv_ok = check_axioms(F.cod, F.dom, F.F.T)
    rep.add("in-sur 1: F⁻¹ is a fuzzy function iff F injective", inv_ok.ok == F.injective,
            None if inv_ok.ok == F.injective else (inv_ok.ok, F.injective))
    inv3 = inv_ok["(3ff)"].passed
    rep.add("in-sur 1: F⁻¹ satisfies (3ff) iff (inj)", inv3 == F.injective,
            None if inv3 == F.injective else (inv3, F.injective))
    if inv_ok.ok:
        Finv = FuzzyFunction(F.cod, F.dom, F.F.T, check=False)
        bad = None
        for a in range(m.size):
            lhs = F.injective and le[a, mu] and le[a, sg]
            rhs = Finv.injective and le[a, Finv.mu] and le[a, Finv.sigma]
            if lhs != rhs:
                bad = (m.label(a),)
                break
        rep.add("in-sur 2: α-bijective iff inverse α-bijective", bad is None, bad)
    if F.injective:
        A1, A2 = with_total(Aext, M, top)
        meet_img = M[img(A1), img(A2)]
        img_meet = img(M[A1, A2])
        ok = le[T[meet_img, sg2], img_meet] & le[img_meet, meet_img]
        if sg == top:
            ok &= img_meet == meet_img
        law("in-sur 3: image of meet, σ² bounds", ok, A1, A2)
    colsup = m.join_reduce(F.F, axis=0)
    sq_col = m.join_reduce(T[F.F, F.F], axis=0)
    w = _hit(~le[T[colsup, colsup], sq_col])
    rep.add("(basic3): ⋁_x F(x,y)² ≥ (⋁_x F(x,y))²", w is None,
            None if w is None else (F.cod.elements[w[0]],))
    w = _hit(~le[sg2, sq_col])
    rep.add("(basic4): ⋁_x F(x,y)² ≥ σ(F)²", w is None,
            None if w is None else (F.cod.elements[w[0]],))
    law("in-sur 4: F→(F←(B)) ≥ σ²*B", le[T[sg2, B], img(pre(B))], B)
    if sg == top:
        law("in-sur 4: F→(F←(B)) = B for extensional B at σ = ⊤",
            img(pre(Bext)) == Bext, Bext)
    cX = np.repeat(cs[:, None], F.dom.size, axis=1)
    ic = img(cX)
    ok = le[T[sg, cs][:, None], ic]
    if sg == top:
        ok &= ic == cs[:, None]
    law("in-sur 5: F→(c_X) ≥ σ*c", ok, cX)
    return rep


def in_sur_slack(F, A_rows=None, B_rows=None, rng=None):
    """Smallest rank gap between each side of the in-sur 3, 4, 5 bounds on a chain.

    Only positions where the bound is above ⊥ count, and A ranges over
    extensional samples. A gap of 0 means the bound is attained. Returns None for
    non-chains, for σ(F) = ⊤ (where the bounds become equalities) and for
    items with nothing to compare (in-sur 3 needs F injective).
    """
    m = F.monoid
    if not m.lattice.chain or F.sigma == m.top:
        return None
    rng = np.random.default_rng(0) if rng is None else rng
    A = sample_lsubsets(F.dom, rng) if A_rows is None else np.asarray(A_rows, dtype=np.int64)
    B = sample_lsubsets(F.cod, rng) if B_rows is None else np.asarray(B_rows, dtype=np.int64)
    T, M, le = m.tnorm, m.meet, m.leq
    A = A[le[T[A[:, :, None], F.dom.E[None]], A[:, None, :]].all(axis=(1, 2))]
    sg = F.sigma
    sg2 = T[sg, sg]
    img = lambda a: image_values(F, a)

    def gap(lhs, rhs):
        # only places where the bound says something
        rhs = np.broadcast_to(rhs, lhs.shape)
        live = rhs != m.bot
        return int((lhs - rhs)[live].min()) if live.any() else None

    out = {}
    if F.injective and len(A):
        lhs = img(M[A[:, None, :], A[None, :, :]].reshape(-1, A.shape[1]))
        IA = img(A)
        rhs = T[sg2, M[IA[:, None, :], IA[None, :, :]]].reshape(-1, F.cod.size)
        out["in-sur 3"] = gap(lhs, rhs)
    out["in-sur 4"] = gap(img(preimage_values(F, B)), T[sg2, B])
    cs = np.arange(m.size)
    out["in-sur 5"] = gap(img(np.repeat(cs[:, None], F.dom.size, axis=1)), T[sg, cs][:, None])
    return {k: v for k, v in out.items() if v is not None}


def power5_audit(F, A_rows=None, B_rows=None, rng=None):
    """Fifth-power meet bounds for images and preimages without extensionality.

    These variants come from earlier work and are stated for completely
    distributive L, so they are evaluated on chains only. Each is recorded as
    an ``info`` entry: a failure is kept as evidence, not as a defect.
    """
    m = F.monoid
    if not m.lattice.chain:
        return CheckReport()
    rng = np.random.default_rng(0) if rng is None else rng
    A = sample_lsubsets(F.dom, rng) if A_rows is None else np.asarray(A_rows, dtype=np.int64)
    B = sample_lsubsets(F.cod, rng) if B_rows is None else np.asarray(B_rows, dtype=np.int64)
    T, le, M = m.tnorm, m.leq, m.meet
    lab = m.labels_of
    p5 = lambda v: T[T[T[T[v, v], v], v], v]
    heyting = bool(np.array_equal(T, M))
    rep = CheckReport()

    def note(name, mask, R1, R2):
        mask = mask.all(axis=1)
        if mask.all():
            rep.add(name, True, kind="info")
        else:
            i = int(np.flatnonzero(~mask)[0])
            rep.add(name, False, (lab(R1[i]), lab(R2[i])), kind="info",
                    detail="earlier-work bound violated on this instance")

    i, j = _pairs(len(B), rng)
    B1, B2 = B[i], B[j]
    meet_pre = M[preimage_values(F, B1), preimage_values(F, B2)]
    pre_meet = preimage_values(F, M[B1, B2])
    note("power 5: (⋀F←(B_i))⁵ ≤ F←(⋀B_i)", le[p5(meet_pre), pre_meet], B1, B2)
    if heyting:
        note("power 5: F←(⋀B_i) = ⋀F←(B_i) when * = ∧", pre_meet == meet_pre, B1, B2)
    if F.injective:
        i, j = _pairs(len(A), rng)
        A1, A2 = A[i], A[j]
        meet_img = M[image_values(F, A1), image_values(F, A2)]
        img_meet = image_values(F, M[A1, A2])
        note("power 5: (⋀F→(A_i))⁵ ≤ F→(⋀A_i) for injective F", le[p5(meet_img), img_meet],
             A1, A2)
        if heyting:
            note("power 5: F→(⋀A_i) = ⋀F→(A_i) for injective F when * = ∧",
                 img_meet == meet_img, A1, A2)
    return rep
