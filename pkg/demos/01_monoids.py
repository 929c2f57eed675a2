"""Catalog GL-monoids: tables, classification and the law reports."""
import numpy as np

from fuzztop import classify_monoid, derived_property_report, monoid_from_name, validate_glmonoid

for name in ("B", "L3", "G3", "L3xL3"):
    m = monoid_from_name(name)
    c = classify_monoid(m)
    print(f"{name}: {m.size} elements, MV={c.is_mv}, Heyting={c.is_heyting}")
    print(f"  axioms ok={validate_glmonoid(m).ok}, properties ok={derived_property_report(m).ok}")

L3 = monoid_from_name("L3")
print("\nŁ3 t-norm and residuum (rows a, columns b):")
print("   ", L3.labels)
for i, a in enumerate(L3.labels):
    print(f"{a:>3}", np.array(L3.labels)[L3.tnorm[i]], np.array(L3.labels)[L3.residuum[i]])

# Gödel chains are not MV: ¬¬½ = 1 ≠ ½
print("\nG3 mv witness:", classify_monoid(monoid_from_name("G3")).mv_witness)
