"""(α,β)-compactness spectra, perfect maps and the preservation theorems."""
from fuzztop import (LTopSpace, generate_topology, is_compact, is_perfect, monoid_from_name,
                     spectrum, theorem_suite)
from fuzztop.fuzzfn import identity
from fuzztop.harness import harness_generate
from fuzztop.ltop import discrete_like
from fuzztop.lvset import crisp_lvset

L3 = monoid_from_name("L3")
X = crisp_lvset(L3, ["a", "b"])
S = LTopSpace(X, generate_topology(X, [X.const(L3.index("1/2"))]))
sp = spectrum(S)
print("τ = {0, ½, 1}; compact pairs (α, β):", sp.labelled_pairs())
print("Lowen compact:", sp.lowen_compact, " Chang compact:", sp.chang)
print("(½, 1) witness cover:", is_compact(S, "1/2", "1").witness)

D = LTopSpace(X, discrete_like(X))
v = is_perfect(identity(X), D, D, "0", "1")
print("\nidentity (⊥,⊤)-perfect?", v.passed, " fibres:", v.fibers)

batch = harness_generate(seed=7, bounds=(3, 3), catalog=["L3", "L4", "B"], count=60, continuous=1.0)
for e in theorem_suite((i.F, i.SX, i.SY) for i in batch):
    print(f"{e.law}: {'PASS' if e.passed else 'FAIL'} ({e.detail})")
