"""(α,β)-compactness of finite L-topological spaces and L-sets, perfect fuzzy functions.

Every open family on a finite carrier is finite, and joins of subfamilies of
τ are again members of τ. So a space is (α,β)-compact iff every open U with
α ≤ U also satisfies β ≤ U, and the offending cover, when there is one, can
be taken to be the single open {U}. The closed-set forms reduce the same way:
meets of subfamilies of closed sets are closed sets, and the finite-subfamily
hypothesis is monotone, so it suffices to range over single closed sets.
"""
from dataclasses import dataclass

import numpy as np

from .checks import CheckReport, Verdict
from .errors import NotContinuous, NotMVAlgebra
from .fuzzfn import image_values
from .glmonoid import classify_monoid
from .ltop import _values, is_continuous


def _idx(m, a):
    return m.index(a)


def _first_true(mask):
    hit = np.flatnonzero(mask)
    return None if len(hit) == 0 else int(hit[0])


def is_compact(S, alpha, beta):
    """Open-cover test; the witness is the lexicographically least bad cover {U}."""
    m = S.monoid
    a, b = _idx(m, alpha), _idx(m, beta)
    M = S.matrix
    covers_a = m.leq[a, M].all(axis=1)
    covers_b = m.leq[b, M].all(axis=1)
    i = _first_true(covers_a & ~covers_b)
    if i is None:
        return Verdict(True)
    return Verdict(False, (m.labels_of(M[i]),))


def compact_grid(S):
    """Boolean |L|×|L| grid g[α, β] of (α,β)-compactness."""
    m = S.monoid
    M = S.matrix
    k = m.size
    # cover[c, U] = (c ≤ U pointwise)
    cover = m.leq[np.arange(k)[:, None, None], M[None, :, :]].all(axis=2)
    # (α,β) fails iff some U has cover[α, U] and not cover[β, U]
    bad = (cover[:, None, :] & ~cover[None, :, :]).any(axis=2)
    return ~bad


@dataclass(frozen=True)
class CompactnessSpectrum:
    monoid: object
    grid: np.ndarray
    lowen_compact: bool
    chang: bool

    @property
    def pairs(self):
        return frozenset((int(a), int(b)) for a, b in np.argwhere(self.grid))

    def __contains__(self, pair):
        a, b = pair
        return bool(self.grid[self.monoid.index(a), self.monoid.index(b)])

    def labelled_pairs(self):
        lab = self.monoid.label
        return sorted((lab(a), lab(b)) for a, b in self.pairs)

    def __eq__(self, other):
        return isinstance(other, CompactnessSpectrum) and np.array_equal(self.grid, other.grid)

    def __hash__(self):
        return hash(self.grid.tobytes())


def spectrum(S):
    """All (α,β) pairs for which S is (α,β)-compact, plus the Lowen and Chang flags.

    Lowen compactness asks for every pair with β strictly below α; Chang's
    notion is (⊤,⊤)-compactness.
    """
    m = S.monoid
    g = compact_grid(S)
    g.flags.writeable = False
    strict = m.leq & ~np.eye(m.size, dtype=bool)      # strict[β, α] = β < α
    lowen = bool(g.T[strict].all())
    return CompactnessSpectrum(m, g, lowen, bool(g[m.top, m.top]))


def lowen_compact(S):
    return spectrum(S).lowen_compact


def _require_mv(S):
    if not classify_monoid(S.monoid).is_mv:
        raise NotMVAlgebra("closed L-sets need an MV-algebra", (S.monoid.name,))


def _lset_hits(S, T, a, b):
    """Closed C with T∧C ≰ β^c but T∧C ≤ α^c (index into closed_matrix)."""
    m = S.monoid
    C = S.closed_matrix
    TC = m.meet[T[None, :], C]
    ac, bc = m.residuum[a, m.bot], m.residuum[b, m.bot]
    below_b = m.leq[TC, bc].all(axis=1)
    below_a = m.leq[TC, ac].all(axis=1)
    return _first_true(~below_b & below_a)


def closed_char_compact(S, alpha, beta):
    """Closed-set form: every closed family whose finite meets stay ≰ β^c has
    total meet ≰ α^c. MV monoids only."""
    _require_mv(S)
    m = S.monoid
    return _lset_hits(S, np.full(S.set.size, m.top), _idx(m, alpha), _idx(m, beta)) is None


def closed_char_grid(S):
    _require_mv(S)
    m = S.monoid
    k = m.size
    C = S.closed_matrix
    comp = m.residuum[np.arange(k), m.bot]
    below = m.leq[C[None, :, :], comp[:, None, None]].all(axis=2)     # below[c, C] = C ≤ c^c
    bad = (below[:, None, :] & ~below[None, :, :]).any(axis=2)        # [α, β]
    return ~bad


def lset_compact(S, T, alpha, beta):
    """(α,β)-compactness of an L-set T: for every closed family 𝒜, if
    T∧⋀𝒜₀ ≰ β^c for each finite 𝒜₀ ⊆ 𝒜 then T∧⋀𝒜 ≰ α^c."""
    _require_mv(S)
    m = S.monoid
    t = _values(S.set, T)
    return _lset_hits(S, t, _idx(m, alpha), _idx(m, beta)) is None


def point_preimage_compact(F, S_dom, y0, alpha, beta):
    """Compactness of the fibre F←(y0) = F(·, y0)."""
    y = F.cod.index(y0)
    return lset_compact(S_dom, F.F[:, y], alpha, beta)


@dataclass(frozen=True)
class PerfectVerdict:
    passed: bool
    closed: bool
    fibers: tuple
    witness: tuple | None = None

    def __bool__(self):
        return self.passed


def is_closed_map(F, S_dom, S_cod):
    m = F.monoid
    imgs = image_values(F, S_dom.closed_matrix)
    keys = {tuple(int(v) for v in r) for r in S_cod.closed_matrix}
    for A, B in zip(S_dom.closed_matrix, imgs):
        if tuple(int(v) for v in B) not in keys:
            return Verdict(False, (m.labels_of(A), m.labels_of(B)))
    return Verdict(True)


def is_perfect(F, S_dom, S_cod, alpha, beta):
    """(α,β)-perfectness: continuous, closed, and every fibre (α,β)-compact."""
    _require_mv(S_dom)
    v = is_continuous(F, S_dom, S_cod)
    if not v:
        raise NotContinuous("perfectness is defined for continuous fuzzy functions", v.witness)
    closed = is_closed_map(F, S_dom, S_cod)
    fibers = tuple(point_preimage_compact(F, S_dom, y, alpha, beta) for y in range(F.cod.size))
    witness = closed.witness
    if witness is None and not all(fibers):
        witness = (F.cod.elements[fibers.index(False)],)
    return PerfectVerdict(bool(closed) and all(fibers), bool(closed), fibers, witness)


def _fiber_grid(F, S_dom):
    """fib[y, α, β]: fibre over y is (α,β)-compact."""
    m = F.monoid
    k = m.size
    C = S_dom.closed_matrix
    comp = m.residuum[np.arange(k), m.bot]
    out = np.empty((F.cod.size, k, k), dtype=bool)
    for y in range(F.cod.size):
        TC = m.meet[F.F[:, y][None, :], C]
        below = m.leq[TC[None, :, :], comp[:, None, None]].all(axis=2)
        out[y] = ~(below[:, None, :] & ~below[None, :, :]).any(axis=2)
    return out


def theorem_suite(instances):
    """Check the preservation theorems over (F, S_dom, S_cod) triples of continuous maps.

    (i)   X (α*β)-compact, μ(F) ≥ β, σ(F) ≥ γ  ⇒  Y (α, α*β*γ)-compact
    (ii)  μ = σ = ⊤ and X α-compact  ⇒  Y α-compact
    (iii) F (α,γ)-perfect, μ = σ = ⊤, Y (γ,β)-compact  ⇒  X (α,β)-compact  (MV only)

    Every (α, β, γ) triple of the carrier is tried, so pairs with β ≰ α are
    exercised as well.
    """
    rep = CheckReport()
    hits = {"(i) preservation": None, "(ii) corollary": None, "(iii) perfect preimage": None}
    counts = dict.fromkeys(hits, 0)
    for n, (F, SX, SY) in enumerate(instances):
        if not is_continuous(F, SX, SY):
            continue
        m = F.monoid
        k = m.size
        L = np.arange(k)
        gX, gY = compact_grid(SX), compact_grid(SY)
        mu, sg = F.mu, F.sigma
        T = m.tnorm
        # (i)
        ab = T[L[:, None], L[None, :]]                                   # α*β
        abg = T[ab[:, :, None], L[None, None, :]]                         # α*β*γ
        pre = gX[ab, ab][:, :, None] & m.leq[L, mu][None, :, None] & m.leq[L, sg][None, None, :]
        concl = gY[L[:, None, None], abg]
        bad = pre & ~concl
        counts["(i) preservation"] += int(pre.sum())
        if bad.any() and hits["(i) preservation"] is None:
            a, b, c = (m.label(v) for v in np.argwhere(bad)[0])
            hits["(i) preservation"] = (n, a, b, c)
        # (ii)
        if mu == m.top and sg == m.top:
            d = np.diag(gX) & ~np.diag(gY)
            counts["(ii) corollary"] += int(np.diag(gX).sum())
            if d.any() and hits["(ii) corollary"] is None:
                hits["(ii) corollary"] = (n, m.label(int(np.flatnonzero(d)[0])))
        # (iii)
        if mu == m.top and sg == m.top and SX.is_mv:
            if not is_closed_map(F, SX, SY):
                continue
            fib = _fiber_grid(F, SX).all(axis=0)                           # [α, γ]
            pre3 = fib[:, None, :] & gY.T[None, :, :]                      # [α, β, γ]: gY[γ, β]
            bad3 = pre3 & ~gX[:, :, None]
            counts["(iii) perfect preimage"] += int(pre3.sum())
            if bad3.any() and hits["(iii) perfect preimage"] is None:
                a, b, c = (m.label(v) for v in np.argwhere(bad3)[0])
                hits["(iii) perfect preimage"] = (n, a, b, c)
    for law, hit in hits.items():
        rep.add(law, hit is None, hit, detail=f"{counts[law]} hypotheses met")
    return rep

