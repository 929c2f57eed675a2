"""Fuzzy functions over Ł3: degrees, composition, images and the crisp bridge."""
from fuzztop import (FuzzyFunction, compose, from_crisp, image, make_lvset, monoid_from_name,
                     preimage, proposition_audit, to_crisp, validate_ff)
from fuzztop.lvset import crisp_lvset

L3 = monoid_from_name("L3")
X = crisp_lvset(L3, ["x"])
Y = make_lvset(L3, [["1", "1/2"], ["1/2", "1"]], ["y1", "y2"])
Z = crisp_lvset(L3, ["z"])
F = FuzzyFunction(X, Y, [["1", "1/2"]])
G = FuzzyFunction(Y, Z, [["1/2"], ["1"]])

print("μ(F), σ(F) =", L3.labels_of([F.mu, F.sigma]))
GF = compose(G, F)
print("G∘F =", L3.labels_of(GF.F), " μ(G∘F) =", L3.label(GF.mu),
      " μ(G)*μ(F) =", L3.label(L3.t(G.mu, F.mu)))
print("F→(1_X) =", image(F, X.one()).labels())
print("F←({y2}) =", preimage(F, Y.subset(L3.parse(["0", "1"]))).labels())

# a matrix that breaks (3ff) against a crisp codomain
rep = validate_ff(X, crisp_lvset(L3, ["y1", "y2"]), [["1", "1/2"]])
print("\nagainst crisp Y:", [(e.law, e.witness) for e in rep.failures])

print("\nlaw audit on F:", "all pass" if proposition_audit(F).ok else proposition_audit(F).failures)

C = crisp_lvset(L3, ["a", "b", "c"])
D = crisp_lvset(L3, ["u", "v"])
f = ["u", "v", "u"]
print("\ncrisp bridge:", f, "->", [D.elements[i] for i in to_crisp(from_crisp(f, C, D))])
