"""Transporting equalities along raw matrices; products and coproducts of L-valued sets."""
import numpy as np

from fuzztop import (coproduct_lvset, image_equality, make_lvset, monoid_from_name,
                     preimage_equality, product_lvset, universal_probe)
from fuzztop.fuzzfn import FuzzyFunction, compose
from fuzztop.lvset import crisp_lvset

L3, B = monoid_from_name("L3"), monoid_from_name("B")
Y = crisp_lvset(L3, ["y"])
EX = preimage_equality(L3.parse([["1"], ["1/2"]]), Y, ["a", "b"])
print("largest E_X for F = (1, ½)ᵀ into a point:", L3.labels_of(EX.E))

X = crisp_lvset(B, ["a", "b", "c"])
EY = image_equality(np.array([[1, 0], [1, 0], [0, 1]]), X, ["u", "v"])
print("smallest E_Y for a,b ↦ u, c ↦ v:", B.labels_of(EY.E))

A = make_lvset(L3, [["1", "1/2"], ["1/2", "1"]], ["a", "b"])
P = product_lvset([A, crisp_lvset(L3, ["p", "q"])])
print("\nproduct carrier:", P.lvset.elements)
print(L3.labels_of(P.lvset.E))
F1 = FuzzyFunction(A, A, A.E)
F2 = FuzzyFunction(A, P.factors[1], [["1", "0"], ["1", "0"]])
pair = P.pair([F1, F2])
print("p_1∘⟨F1,F2⟩ = F1:", compose(P.projections[0], pair) == F1)

S = coproduct_lvset([A, crisp_lvset(L3, ["c"])])
print("\ncoproduct equality:", L3.labels_of(S.lvset.E))

for q in ("initial_structure", "ftop_products"):
    for frame in ("bottom", "top"):
        r = universal_probe(q, B, (2, 2, 2), frame=frame)
        print(f"probe {q:<18} {frame:<6}: {r.verdict} after {r.examined} candidates")
