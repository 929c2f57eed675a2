"""Seeded generator of random monoids, L-valued sets, fuzzy functions and topologies.

Instance ``i`` of seed ``s`` is drawn from ``default_rng([s, i])`` so any
single instance can be replayed without regenerating the batch.
"""
import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import BoundsTooLarge
from .fuzzfn import FuzzyFunction, axiom_hits, preimage_values
from .glmonoid import monoid_from_name
from .ltop import LTopology, LTopSpace, generate_rows
from .lvset import make_lvset

MAX_CARRIER = 5
MAX_CHAIN = 6
MAX_MONOID = 12


@lru_cache(maxsize=None)
def _monoid(name):
    return monoid_from_name(name)


def default_catalog(chain_max=MAX_CHAIN):
    return ["B"] + [f"L{n}" for n in range(3, chain_max + 1)] + \
        [f"G{n}" for n in range(3, chain_max + 1)]


def random_equality(m, n, rng, p_bot=0.5):
    """Symmetric, reflexive draw closed under E ← E ∨ E∘E (so *-transitive)."""
    E = rng.integers(0, m.size, size=(n, n))
    E[rng.random((n, n)) < p_bot] = m.bot
    E = np.triu(E, 1)
    E = E + E.T
    np.fill_diagonal(E, m.top)
    while True:
        E2 = m.join[E, m.compose(E, E)]
        if np.array_equal(E2, E):
            return E
        E = E2


def _lower(m, v, rng):
    below = np.flatnonzero(m.leq[:, v])
    return int(rng.choice(below))


def random_fuzzy_matrix(m, EX, EY, rng, trace, p_perturb=0.4, tries=8):
    """Crisp map lifted to E_Y(f(x), ·), lowered at random, hulled to E_X∘F∘E_Y,
    accepted once (3ff) holds; otherwise a constant map E_Y(y0, ·)."""
    nx, ny = len(EX), len(EY)
    for t in range(tries):
        f = rng.integers(0, ny, size=nx)
        F = EY[f, :].copy()
        mask = rng.random(F.shape) < p_perturb
        for x, y in np.argwhere(mask):
            F[x, y] = _lower(m, F[x, y], rng)
        F = m.compose(m.compose(EX, F), EY)
        if axiom_hits(m, EX, EY, F)[2] is None:
            trace.append(f"ff:crisp-lift-perturb-hull(try={t})")
            return F
    y0 = int(rng.integers(0, ny))
    trace.append(f"ff:constant(y0={y0})")
    return np.repeat(EY[y0][None, :], nx, axis=0)


def random_subbase(m, E, rng, k):
    """k random L-sets replaced by their extensional hulls."""
    n = len(E)
    rows = rng.integers(0, m.size, size=(k, n))
    return [m.join_reduce(m.tnorm[r[:, None], E], axis=0) for r in rows]


@dataclass
class Instance:
    index: int
    seed: int
    monoid: object
    X: object
    Y: object
    F: FuzzyFunction
    SX: LTopSpace
    SY: LTopSpace
    trace: list = field(default_factory=list)

    def to_dict(self):
        lab = self.monoid.labels_of
        return {
            "index": self.index, "seed": self.seed, "monoid": self.monoid.name,
            "X": {"elements": list(self.X.elements), "E": lab(self.X.E)},
            "Y": {"elements": list(self.Y.elements), "E": lab(self.Y.E)},
            "F": lab(self.F.F),
            "tau_X": lab(self.SX.matrix), "tau_Y": lab(self.SY.matrix),
            "trace": list(self.trace),
        }


def _check_bounds(bounds, chain_max, catalog):
    if len(bounds) != 2 or min(bounds) < 1:
        raise BoundsTooLarge("bounds must be two positive carrier sizes", tuple(bounds))
    if max(bounds) > MAX_CARRIER:
        raise BoundsTooLarge(f"carrier bound above {MAX_CARRIER}", tuple(bounds))
    if chain_max > MAX_CHAIN or chain_max < 2:
        raise BoundsTooLarge(f"chain length must lie in 2..{MAX_CHAIN}", (chain_max,))
    for name in catalog:
        if _monoid(name).size > MAX_MONOID:
            raise BoundsTooLarge(f"monoid {name} has more than {MAX_MONOID} elements", (name,))


def make_instance(seed, index, bounds=(MAX_CARRIER, MAX_CARRIER), catalog=None,
                  continuous=0.5, max_subbase=3):
    catalog = default_catalog() if catalog is None else list(catalog)
    rng = np.random.default_rng([seed, index])
    name = catalog[int(rng.integers(0, len(catalog)))]
    m = _monoid(name)
    trace = [f"monoid:{name}"]
    nx = int(rng.integers(1, bounds[0] + 1))
    ny = int(rng.integers(1, bounds[1] + 1))
    EX = random_equality(m, nx, rng)
    EY = random_equality(m, ny, rng)
    trace.append(f"sets:{nx}x{ny}")
    X = make_lvset(m, EX, [f"x{i}" for i in range(nx)])
    Y = make_lvset(m, EY, [f"y{i}" for i in range(ny)])
    F = FuzzyFunction(X, Y, random_fuzzy_matrix(m, EX, EY, rng, trace))
    kY = int(rng.integers(0, max_subbase + 1))
    _, opensY = generate_rows(Y, random_subbase(m, EY, rng, kY))
    SY = LTopSpace(Y, LTopology(Y, opensY))
    kX = int(rng.integers(0, max_subbase + 1))
    subX = random_subbase(m, EX, rng, kX)
    trace.append(f"subbase:{kX},{kY}")
    if rng.random() < continuous:
        subX.extend(preimage_values(F, SY.matrix))
        trace.append("tau_X:with-preimages")
    _, opensX = generate_rows(X, subX)
    SX = LTopSpace(X, LTopology(X, opensX))
    return Instance(index, seed, m, X, Y, F, SX, SY, trace)


def harness_generate(seed=0, bounds=(MAX_CARRIER, MAX_CARRIER), chain_max=MAX_CHAIN,
                     catalog=None, count=100, continuous=0.5):
    """Reproducible batch of ``count`` instances."""
    catalog = default_catalog(chain_max) if catalog is None else list(catalog)
    _check_bounds(bounds, chain_max, catalog)
    return [make_instance(seed, i, bounds, catalog, continuous) for i in range(count)]


def batch_bytes(batch):
    """Canonical JSON encoding used to compare replays byte for byte."""
    return json.dumps([inst.to_dict() for inst in batch], sort_keys=True,
                      ensure_ascii=False).encode()
