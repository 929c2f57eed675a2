"""L-valued sets (X, E), L-subsets, extensionality and subobjects."""
from dataclasses import dataclass

import numpy as np

from .checks import Verdict
from .errors import (CarrierMismatch, DimensionMismatch, EmptySubset, ParentMismatch,
                     ReflexivityFail, SymmetryFail, TransitivityFail)


def _ro(a):
    a = np.array(a, dtype=np.int64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class LValuedSet:
    monoid: object
    elements: tuple
    E: np.ndarray

    @property
    def size(self):
        return len(self.elements)

    def index(self, element):
        if isinstance(element, (int, np.integer)) and not isinstance(element, bool):
            return int(element)
        try:
            return self.elements.index(str(element))
        except ValueError:
            raise CarrierMismatch(f"{element!r} is not an element", (element,)) from None

    def subset(self, values):
        return LSubset(self, values)

    def const(self, c):
        return LSubset(self, np.full(self.size, c, dtype=np.int64))

    def zero(self):
        return self.const(self.monoid.bot)

    def one(self):
        return self.const(self.monoid.top)

    @property
    def is_crisp(self):
        m = self.monoid
        eye = np.eye(self.size, dtype=bool)
        return bool(np.array_equal(self.E, np.where(eye, m.top, m.bot)))

    def __eq__(self, other):
        return (isinstance(other, LValuedSet) and self.monoid == other.monoid
                and self.elements == other.elements and np.array_equal(self.E, other.E))

    def __hash__(self):
        return hash((self.elements, self.E.tobytes()))

    def __repr__(self):
        return f"LValuedSet({list(self.elements)}, E={self.monoid.labels_of(self.E)})"


@dataclass(frozen=True, eq=False)
class LSubset:
    parent: LValuedSet
    values: np.ndarray

    def __post_init__(self):
        v = _ro(self.values)
        if v.shape != (self.parent.size,):
            raise DimensionMismatch("L-subset must be indexed by the parent carrier",
                                    (v.shape, self.parent.size))
        object.__setattr__(self, "values", v)

    @property
    def monoid(self):
        return self.parent.monoid

    def _other(self, other):
        if other.parent != self.parent:
            raise ParentMismatch("L-subsets live on different L-valued sets")
        return other.values

    def __and__(self, other):
        return LSubset(self.parent, self.monoid.meet[self.values, self._other(other)])

    def __or__(self, other):
        return LSubset(self.parent, self.monoid.join[self.values, self._other(other)])

    def __le__(self, other):
        return self.monoid.le_all(self.values, self._other(other))

    def __ge__(self, other):
        return self.monoid.le_all(self._other(other), self.values)

    def __eq__(self, other):
        return (isinstance(other, LSubset) and self.parent == other.parent
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash(self.values.tobytes())

    def complement(self):
        """A^c(x) = A(x) ↦ ⊥ (an involution only on MV monoids)."""
        return LSubset(self.parent, self.monoid.residuum[self.values, self.monoid.bot])

    def key(self):
        return tuple(int(v) for v in self.values)

    def labels(self):
        return self.monoid.labels_of(self.values)

    def __repr__(self):
        return f"LSubset({self.labels()})"


def crisp_equality(monoid, n):
    eye = np.eye(n, dtype=bool)
    return np.where(eye, monoid.top, monoid.bot)


def equality_defect(monoid, E):
    """First violated equality axiom as (name, witness indices), or None."""
    E = np.asarray(E)
    n = E.shape[0]
    for x in range(n):
        if E[x, x] != monoid.top:
            return "reflexivity", (x,)
    bad = np.argwhere(E != E.T)
    if len(bad):
        return "symmetry", tuple(int(v) for v in bad[0])
    lhs = monoid.tnorm[E[:, :, None], E[None, :, :]]
    bad = np.argwhere(~monoid.leq[lhs, E[:, None, :]])
    if len(bad):
        return "transitivity", tuple(int(v) for v in bad[0])
    return None


def make_lvset(monoid, E=None, elements=None, validate=True):
    """Build (X, E); ``E`` defaults to the crisp equality on ``elements``.

    ``E`` may hold indices or carrier labels.
    """
    if E is None:
        if elements is None:
            raise DimensionMismatch("need an equality matrix or an element list")
        E = crisp_equality(monoid, len(elements))
    E = np.asarray(E)
    if E.dtype.kind not in "iu":
        E = monoid.parse(E.tolist())
    if E.ndim != 2 or E.shape[0] != E.shape[1] or E.shape[0] == 0:
        raise DimensionMismatch("equality must be a nonempty square matrix", E.shape)
    n = E.shape[0]
    if elements is None:
        elements = [f"x{i}" for i in range(n)]
    elements = tuple(str(e) for e in elements)
    if len(elements) != n or len(set(elements)) != n:
        raise DimensionMismatch("element labels must be distinct and match E", (len(elements), n))
    if validate:
        d = equality_defect(monoid, E)
        if d is not None:
            kind, w = d
            w = tuple(elements[i] for i in w)
            exc = {"reflexivity": ReflexivityFail, "symmetry": SymmetryFail,
                   "transitivity": TransitivityFail}[kind]
            raise exc(f"(X, E) fails {kind}", w)
    return LValuedSet(monoid, elements, _ro(E))


def crisp_lvset(monoid, elements):
    if isinstance(elements, int):
        elements = [f"x{i}" for i in range(elements)]
    return make_lvset(monoid, None, elements)


def extensionality_defect(f, dom, cod):
    """Is the crisp map f: X → Y extensional, E_X(x,x') ≤ E_Y(f x, f x')?"""
    f = np.asarray(f, dtype=np.int64)
    if dom.monoid != cod.monoid:
        raise CarrierMismatch("domain and codomain use different monoids")
    if f.shape != (dom.size,) or (len(f) and (f.min() < 0 or f.max() >= cod.size)):
        raise CarrierMismatch("map must send every domain point into the codomain", f.shape)
    img = cod.E[f[:, None], f[None, :]]
    bad = np.argwhere(~dom.monoid.leq[dom.E, img])
    if len(bad):
        x, x2 = map(int, bad[0])
        return Verdict(False, (dom.elements[x], dom.elements[x2]))
    return Verdict(True)


def _hull_values(A):
    m = A.monoid
    return m.join_reduce(m.tnorm[A.values[:, None], A.parent.E], axis=0)


def is_extensional_subset(A):
    """⋁_x A(x)*E(x,x') ≤ A(x') for every x'; witness is (x, x')."""
    m = A.monoid
    lhs = m.tnorm[A.values[:, None], A.parent.E]
    bad = np.argwhere(~m.leq[lhs, A.values[None, :]])
    if len(bad):
        x, x2 = map(int, bad[0])
        return Verdict(False, (A.parent.elements[x], A.parent.elements[x2]))
    return Verdict(True)


def is_extensional_values(monoid, E, v):
    lhs = monoid.tnorm[v[:, None], E]
    return bool(monoid.leq[lhs, v[None, :]].all())


def extensional_hull(A):
    """Smallest extensional superset: Â(x') = ⋁_x A(x)*E(x,x').

    One pass suffices because E is *-transitive and reflexive.
    """
    return LSubset(A.parent, _hull_values(A))


def restrict_lvset(X, subset):
    """Subobject (Y, E|Y) for Y given as element labels or indices (order kept)."""
    idx = [X.index(s) for s in subset]
    if not idx:
        raise EmptySubset("restriction to an empty subset")
    if len(set(idx)) != len(idx):
        raise DimensionMismatch("repeated element in restriction", tuple(subset))
    idx = np.array(idx)
    return make_lvset(X.monoid, X.E[np.ix_(idx, idx)], [X.elements[i] for i in idx],
                      validate=False)


def subset_indices(X, subset):
    return np.array([X.index(s) for s in subset], dtype=np.int64)


def all_lsubsets(X, limit=200_000):
    """Every L-subset of X as a (|L|^|X|, |X|) index array."""
    n, k = X.size, X.monoid.size
    if k ** n > limit:
        raise DimensionMismatch("too many L-subsets to enumerate", (k, n))
    grids = np.indices((k,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def all_extensional(X, limit=200_000):
    cand = all_lsubsets(X, limit)
    m = X.monoid
    lhs = m.tnorm[cand[:, :, None], X.E[None, :, :]]
    ok = m.leq[lhs, cand[:, None, :]].all(axis=(1, 2))
    return cand[ok]
