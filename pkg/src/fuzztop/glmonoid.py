"""Finite distributive lattices with a t-norm (GL-monoids).

Elements are integer indices ``0..size-1``; labels are display names only.
All tables are read-only numpy arrays, so lookups vectorise: ``m.tnorm[A, B]``
evaluates the t-norm pointwise on two index arrays.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product

import numpy as np

from .checks import CheckReport
from .errors import (ChainTooShort, DegenerateLattice, NotAGLMonoid, NotALattice,
                     NotAPartialOrder, NotDistributive, UnknownCatalogName,
                     ValueNotInCarrier)


def _frozen(a, dtype=None):
    a = np.array(a, dtype=dtype)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Lattice:
    labels: tuple
    leq: np.ndarray
    join: np.ndarray
    meet: np.ndarray
    top: int
    bot: int
    # True when the index order is a total order; enables max/min fast paths.
    chain: bool

    @property
    def size(self):
        return len(self.labels)

    def index(self, label):
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.size:
                return int(label)
            raise ValueNotInCarrier(f"index {label} outside carrier", (label,))
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ValueNotInCarrier(f"{label!r} is not a carrier label", (label,)) from None

    def label(self, i):
        return self.labels[int(i)]

    def join_reduce(self, a, axis=-1):
        """Join of ``a`` along ``axis`` (bottom for an empty axis)."""
        a = np.asarray(a)
        if a.shape[axis] == 0:
            shape = list(a.shape)
            del shape[axis]
            return np.full(shape, self.bot, dtype=np.int64)
        if self.chain:
            return a.max(axis=axis)
        a = np.moveaxis(a, axis, 0)
        return reduce(lambda x, y: self.join[x, y], a)

    def meet_reduce(self, a, axis=-1):
        """Meet of ``a`` along ``axis`` (top for an empty axis)."""
        a = np.asarray(a)
        if a.shape[axis] == 0:
            shape = list(a.shape)
            del shape[axis]
            return np.full(shape, self.top, dtype=np.int64)
        if self.chain:
            return a.min(axis=axis)
        a = np.moveaxis(a, axis, 0)
        return reduce(lambda x, y: self.meet[x, y], a)

    def le_all(self, a, b):
        """Pointwise ``a <= b`` for two equally shaped index arrays."""
        return bool(self.leq[np.asarray(a), np.asarray(b)].all())

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.labels == other.labels
                and np.array_equal(self.leq, other.leq))

    def __hash__(self):
        return hash(self.labels)


def build_lattice(leq, labels=None):
    """Validate a finite order relation and tabulate join, meet, top and bottom.

    Raises NotAPartialOrder, NotALattice, NotDistributive or DegenerateLattice,
    each with a witness in terms of labels.
    """
    leq = np.array(leq, dtype=bool)
    n = leq.shape[0]
    if n == 0 or leq.shape != (n, n):
        raise NotAPartialOrder("order relation must be a nonempty square matrix")
    labels = tuple(str(x) for x in (labels if labels is not None else range(n)))
    if len(labels) != n or len(set(labels)) != n:
        raise NotAPartialOrder("labels must be distinct and match the carrier size")

    for a in range(n):
        if not leq[a, a]:
            raise NotAPartialOrder("not reflexive", (labels[a],))
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        a, b = map(int, np.argwhere(both)[0])
        raise NotAPartialOrder("not antisymmetric", (labels[a], labels[b]))
    trans = (leq[:, :, None] & leq[None, :, :]) & ~leq[:, None, :]
    if trans.any():
        a, b, c = map(int, np.argwhere(trans)[0])
        raise NotAPartialOrder("not transitive", (labels[a], labels[b], labels[c]))
    if n < 2:
        raise DegenerateLattice("bottom equals top", (labels[0],))

    join = np.empty((n, n), dtype=np.int64)
    meet = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            ub = np.flatnonzero(leq[a] & leq[b])
            least = [u for u in ub if leq[u, ub].all()]
            lb = np.flatnonzero(leq[:, a] & leq[:, b])
            greatest = [v for v in lb if leq[lb, v].all()]
            if not least or not greatest:
                raise NotALattice("pair lacks a least upper or greatest lower bound",
                                  (labels[a], labels[b]))
            join[a, b] = least[0]
            meet[a, b] = greatest[0]
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    bot = int(np.flatnonzero(leq.all(axis=1))[0])

    lhs = meet[np.arange(n)[:, None, None], join[None, :, :]]
    rhs = join[meet[:, :, None], meet[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = map(int, bad[0])
        raise NotDistributive("a∧(b∨c) ≠ (a∧b)∨(a∧c)", (labels[a], labels[b], labels[c]))

    idx = np.arange(n)
    chain = bool(np.array_equal(leq, idx[:, None] <= idx[None, :]))
    return Lattice(labels, _frozen(leq), _frozen(join), _frozen(meet), top, bot, chain)


@dataclass(frozen=True, eq=False)
class GLMonoid:
    lattice: Lattice
    tnorm: np.ndarray
    residuum: np.ndarray
    name: str = "custom"

    # forwarding for brevity in downstream code
    @property
    def size(self):
        return self.lattice.size

    @property
    def top(self):
        return self.lattice.top

    @property
    def bot(self):
        return self.lattice.bot

    @property
    def labels(self):
        return self.lattice.labels

    @property
    def leq(self):
        return self.lattice.leq

    @property
    def join(self):
        return self.lattice.join

    @property
    def meet(self):
        return self.lattice.meet

    def index(self, label):
        return self.lattice.index(label)

    def label(self, i):
        return self.lattice.label(i)

    def labels_of(self, arr):
        """Nested lists of labels for an index array."""
        arr = np.asarray(arr)
        if arr.ndim == 0:
            return self.labels[int(arr)]
        return [self.labels_of(a) for a in arr]

    def parse(self, values):
        """Index array from (possibly nested) labels."""
        if isinstance(values, (list, tuple, np.ndarray)):
            return np.array([self.parse(v) for v in values], dtype=np.int64)
        return self.index(values)

    def t(self, a, b):
        return self.tnorm[a, b]

    def imp(self, a, b):
        return self.residuum[a, b]

    def neg(self, a):
        return self.residuum[a, self.bot]

    def square(self, a):
        return self.tnorm[a, a]

    def join_reduce(self, a, axis=-1):
        return self.lattice.join_reduce(a, axis)

    def meet_reduce(self, a, axis=-1):
        return self.lattice.meet_reduce(a, axis)

    def le_all(self, a, b):
        return self.lattice.le_all(a, b)

    def compose(self, A, B):
        """Sup-t-norm matrix product: out[i, k] = ⋁_j A[i, j] * B[j, k]."""
        A = np.asarray(A)
        B = np.asarray(B)
        return self.join_reduce(self.tnorm[A[:, :, None], B[None, :, :]], axis=1)

    def __eq__(self, other):
        return (isinstance(other, GLMonoid) and self.lattice == other.lattice
                and np.array_equal(self.tnorm, other.tnorm))

    def __hash__(self):
        return hash((self.lattice, self.tnorm.tobytes()))

    def __repr__(self):
        return f"GLMonoid({self.name}, size={self.size})"


def compute_residuum(lattice, tnorm):
    """Table of a ↦ b = ⋁{λ | a*λ ≤ b}."""
    n = lattice.size
    res = np.empty((n, n), dtype=np.int64)
    lam = np.arange(n)
    for a in range(n):
        for b in range(n):
            ok = lam[lattice.leq[tnorm[a, :], b]]
            res[a, b] = lattice.join_reduce(ok, axis=0)
    return res


def make_monoid(lattice, tnorm, name="custom", validate=True):
    """Attach a t-norm table to a lattice and derive the residuum.

    With ``validate`` the GL-monoid axioms are checked and NotAGLMonoid is
    raised (report attached as ``.report``) on the first failure.
    """
    tnorm = _frozen(tnorm, dtype=np.int64)
    n = lattice.size
    if tnorm.shape != (n, n) or tnorm.min() < 0 or tnorm.max() >= n:
        raise NotAGLMonoid("t-norm table must be a size×size table of carrier indices")
    m = GLMonoid(lattice, tnorm, _frozen(compute_residuum(lattice, tnorm)), name)
    if validate:
        report = validate_glmonoid(m)
        if not report.ok:
            bad = report.failures[0]
            err = NotAGLMonoid(f"axiom {bad.law} fails", bad.witness)
            err.report = report
            raise err
    return m


def chain_labels(n):
    return tuple(str(Fraction(k, n - 1)) for k in range(n))


def chain_lattice(n):
    idx = np.arange(n)
    return build_lattice(idx[:, None] <= idx[None, :], chain_labels(n))


def product_monoid(m1, m2):
    """Componentwise product; element (i, j) has index i*|m2| + j."""
    n1, n2 = m1.size, m2.size
    pairs = list(product(range(n1), range(n2)))
    labels = [f"({m1.label(i)},{m2.label(j)})" for i, j in pairs]
    leq = np.array([[m1.leq[a[0], b[0]] and m2.leq[a[1], b[1]] for b in pairs] for a in pairs])
    lat = build_lattice(leq, labels)
    tn = np.array([[m1.tnorm[a[0], b[0]] * n2 + m2.tnorm[a[1], b[1]] for b in pairs]
                   for a in pairs])
    return make_monoid(lat, tn, name=f"{m1.name}x{m2.name}")


CATALOG = ("boolean", "lukasiewicz", "goedel", "product")


def make_standard_monoid(name, n=2, factors=None):
    """Catalog monoids on the chain {k/(n-1)} or a product of two monoids.

    >>> m = make_standard_monoid("lukasiewicz", 3)
    >>> m.label(m.t(1, 1))
    '0'
    """
    key = name.lower()
    if key in ("godel", "gödel", "heyting"):
        key = "goedel"
    if key == "product":
        if not factors or len(factors) != 2:
            raise UnknownCatalogName("product needs exactly two factor monoids")
        return product_monoid(*factors)
    if key not in CATALOG:
        raise UnknownCatalogName(f"unknown catalog monoid {name!r}", (name,))
    if key == "boolean":
        if n != 2:
            raise ChainTooShort("the Boolean monoid has exactly two elements", (n,))
    elif n < 2:
        raise ChainTooShort("chains need at least two elements", (n,))
    lat = chain_lattice(n)
    i = np.arange(n)
    if key == "lukasiewicz":
        tn = np.maximum(i[:, None] + i[None, :] - (n - 1), 0)
        label = f"L{n}"
    else:
        tn = np.minimum(i[:, None], i[None, :])
        label = "B" if key == "boolean" else f"G{n}"
    return make_monoid(lat, tn, name=label)


def _first(mask_array):
    hits = np.argwhere(mask_array)
    return None if len(hits) == 0 else tuple(int(v) for v in hits[0])


def validate_glmonoid(m):
    """Exhaustive scan of the seven GL-monoid axioms plus the adjunction."""
    L = m.lattice
    T, R = m.tnorm, m.residuum
    n = L.size
    a = np.arange(n)
    lab = L.labels
    rep = CheckReport()

    def add(law, hit):
        rep.add(law, hit is None, None if hit is None else tuple(lab[i] for i in hit))

    # (1) a ≤ b ⇒ a*c ≤ b*c
    bad = L.leq[:, :, None] & ~L.leq[T[:, None, :], T[None, :, :]]
    add("(1) monotone", _first(bad))
    add("(2) commutative", _first(T != T.T))
    lhs = T[T[:, :, None], a[None, None, :]]
    rhs = T[a[:, None, None], T[None, :, :]]
    add("(3) associative", _first(lhs != rhs))
    hit = _first(T[:, L.top] != a)
    add("(4) top is unit", hit)
    add("(5) bottom is zero", _first(T[:, L.bot] != L.bot))
    dist = T[a[:, None, None], L.join[None, :, :]] != L.join[T[:, :, None], T[:, None, :]]
    hit = _first(dist)
    if hit is None:
        hit = _first(T[:, L.bot] != L.bot)
    add("(6) distributes over joins", hit)
    hit = None
    for x, y in zip(*np.nonzero(L.leq)):
        if not (T[y, :] == x).any():
            hit = (int(x), int(y))
            break
    add("(7) divisible", hit)
    adj = L.leq[T[:, :, None], a[None, None, :]] != L.leq[a[:, None, None], R[None, :, :]]
    add("adjunction", _first(adj))
    return rep


def _subset_folds(table, n, neutral):
    """fold[mask] = table-fold over the elements of mask (mask 0 gets neutral)."""
    out = np.empty(1 << n, dtype=np.int64)
    out[0] = neutral
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        out[mask] = low if rest == 0 else table[out[rest], low]
    return out


MAX_SUBSET_SCAN = 14


def derived_property_report(m):
    """Check properties (i), (ii), (iii), (v), (vi), (vii) exhaustively.

    Properties quantified over families use every nonempty subset of the
    carrier (for carriers above MAX_SUBSET_SCAN elements, binary families).
    """
    L = m.lattice
    T, R = m.tnorm, m.residuum
    n = L.size
    lab = L.labels
    a = np.arange(n)
    rep = CheckReport()

    def add(law, hit, fmt=None):
        if hit is not None and fmt is not None:
            hit = fmt(hit)
        elif hit is not None:
            hit = tuple(lab[i] for i in hit)
        rep.add(law, hit is None, hit)

    add("(i) a↦b = ⊤ iff a ≤ b", _first((R == L.top) != L.leq))

    if n <= MAX_SUBSET_SCAN:
        masks = np.arange(1, 1 << n)
        meet_of = _subset_folds(L.meet, n, L.top)
        join_of = _subset_folds(L.join, n, L.bot)

        def mapped_fold(image, table, neutral):
            # out[x, mask] = table-fold of image[x, s] over s in mask
            out = np.empty((image.shape[0], 1 << n), dtype=np.int64)
            out[:, 0] = neutral
            for mask in range(1, 1 << n):
                low = (mask & -mask).bit_length() - 1
                rest = mask & (mask - 1)
                out[:, mask] = image[:, low] if rest == 0 else table[out[:, rest], image[:, low]]
            return out

        def fmt(hit):
            x, k = hit
            members = [lab[i] for i in range(n) if masks[k] >> i & 1]
            return (lab[x], "{" + ",".join(members) + "}")

        lhs = R[a[:, None], meet_of[None, masks]]
        rhs = mapped_fold(R, L.meet, L.top)[:, masks]
        add("(ii) a↦⋀S = ⋀(a↦s)", _first(lhs != rhs), fmt)
        # image[b, s] = s ↦ b
        lhs = R[join_of[None, masks], a[:, None]]
        rhs = mapped_fold(R.T, L.meet, L.top)[:, masks]
        add("(iii) (⋁S)↦b = ⋀(s↦b)", _first(lhs != rhs), fmt)
        lhs = T[a[:, None], meet_of[None, masks]]
        rhs = mapped_fold(T, L.meet, L.top)[:, masks]
        add("(v) a*⋀S = ⋀(a*s)", _first(lhs != rhs), fmt)
    else:
        lhs = R[a[:, None, None], L.meet[None, :, :]]
        rhs = L.meet[R[:, :, None], R[:, None, :]]
        add("(ii) a↦⋀S = ⋀(a↦s)", _first(lhs != rhs))
        lhs = R[L.join[:, :, None], a[None, None, :]]
        rhs = L.meet[R[:, None, :], R[None, :, :]]
        add("(iii) (⋁S)↦b = ⋀(s↦b)", _first(lhs != rhs))
        lhs = T[a[:, None, None], L.meet[None, :, :]]
        rhs = L.meet[T[:, :, None], T[:, None, :]]
        add("(v) a*⋀S = ⋀(a*s)", _first(lhs != rhs))

    # (vi) indices (α, γ, β)
    lhs = T[R[:, :, None], R[None, :, :]]
    bad = ~L.leq[lhs, R[:, None, :]]
    add("(vi) (a↦c)*(c↦b) ≤ a↦b", _first(bad))
    sq = T[a, a]
    add("(vii) a*b ≤ a²∨b²", _first(~L.leq[T, L.join[sq[:, None], sq[None, :]]]))
    return rep


@dataclass(frozen=True)
class Classification:
    is_heyting: bool
    is_mv: bool
    involution: tuple | None = None
    heyting_witness: tuple | None = None
    mv_witness: tuple | None = None


def classify_monoid(m):
    """Heyting iff * = ∧; MV iff double negation is the identity."""
    L = m.lattice
    hw = _first(m.tnorm != L.meet)
    neg = m.residuum[:, L.bot]
    dneg = m.residuum[neg, L.bot]
    mw = _first(dneg != np.arange(L.size))
    is_mv = mw is None
    return Classification(
        is_heyting=hw is None,
        is_mv=is_mv,
        involution=tuple(int(v) for v in neg) if is_mv else None,
        heyting_witness=None if hw is None else tuple(L.labels[i] for i in hw),
        mv_witness=None if mw is None else (L.labels[mw[0]], L.labels[int(dneg[mw[0]])]),
    )


def is_mv(m):
    return classify_monoid(m).is_mv


def monoid_from_name(name):
    """Short catalog names: ``B``, ``L<n>``, ``G<n>`` and products such as ``L3xL3``."""
    if "x" in name:
        parts = name.split("x")
        if len(parts) != 2:
            raise UnknownCatalogName(f"unknown catalog monoid {name!r}", (name,))
        return product_monoid(monoid_from_name(parts[0]), monoid_from_name(parts[1]))
    if name == "B":
        return make_standard_monoid("boolean")
    kind, digits = name[:1], name[1:]
    if kind not in ("L", "G") or not digits.isdigit():
        raise UnknownCatalogName(f"unknown catalog monoid {name!r}", (name,))
    return make_standard_monoid("lukasiewicz" if kind == "L" else "goedel", int(digits))
