"""L-topologies from subbases, interiors and closures, and the continuity audit.

The last part shows a Boolean partial map that is continuous while the
preimage of a closed set is not closed.
"""
from fuzztop import (FuzzyFunction, LTopSpace, closure_ops, continuity_audit, generate_topology,
                     homeomorphism_degree, interior, make_lvset, monoid_from_name)
from fuzztop.ltop import discrete_like, indiscrete, make_topology, metric_space
from fuzztop.lvset import LSubset, crisp_lvset

L3 = monoid_from_name("L3")
X = make_lvset(L3, [["1", "1/2"], ["1/2", "1"]], ["a", "b"])
T = generate_topology(X, [X.const(L3.index("1/2")), LSubset(X, L3.parse(["1", "1/2"]))])
print("generated opens:", L3.labels_of(T.matrix))
S = LTopSpace(X, T)
print("int(1, 0) =", interior(T, LSubset(X, L3.parse(["1", "0"]))).labels())
print("cl(½, 0)  =", closure_ops(S, LSubset(X, L3.parse(["1/2", "0"]))).closure.labels())

Bo = monoid_from_name("B")
Xc = crisp_lvset(Bo, ["a", "b"])
Yc = crisp_lvset(Bo, ["y"])
F = FuzzyFunction(Xc, Yc, [["0"], ["1"]])
SX = LTopSpace(Xc, make_topology(Xc, [Bo.parse(r) for r in (["0", "0"], ["0", "1"], ["1", "1"])]))
SY = LTopSpace(Yc, indiscrete(Yc))
print("\npartial map a ↦ nothing, b ↦ y:")
for e in continuity_audit(F, SX, SY):
    print(f"  {'PASS' if e.passed else 'FAIL'} {e.law} [{e.kind}] {e.detail}")

L5 = monoid_from_name("L5")
M = metric_space(L5, [[0, 1, 2], [1, 0, 1], [2, 1, 0]], ["a", "b", "c"])
E = make_lvset(L5, M.E[[0, 2]][:, [0, 2]], ["a", "c"])
H = FuzzyFunction(M, E, M.E[:, [0, 2]])
v = homeomorphism_degree(H, LTopSpace(M, discrete_like(M)), LTopSpace(E, discrete_like(E)))
print("\nthree points at steps of 1/4 onto the two ends: homeomorphism degree", L5.label(v.degree))
