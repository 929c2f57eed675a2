"""Lattice-valued topology over finite GL-monoids: fuzzy functions, L-topologies, compactness."""
from .checks import CheckEntry, CheckReport, Verdict
from .errors import FuzzTopError, LawFailure, StructuralError
from .glmonoid import (GLMonoid, Lattice, build_lattice, classify_monoid, derived_property_report,
                       make_monoid, make_standard_monoid, monoid_from_name, product_monoid,
                       validate_glmonoid)
from .lvset import (LSubset, LValuedSet, crisp_lvset, extensional_hull, extensionality_defect,
                    is_extensional_subset, make_lvset, restrict_lvset)
from .fuzzfn import (FuzzyFunction, compose, degrees, from_crisp, identity, image, in_sur_slack,
                     invert, power5_audit, preimage, proposition_audit, restrict_ff, to_crisp, validate_ff)
from .fsetcat import (coproduct_lvset, degree_law_audit, image_equality, preimage_equality,
                      product_lvset, universal_probe)
from .ltop import (LTopology, LTopSpace, closure_ops, continuity_audit, coproduct_space,
                   generate_topology, homeomorphism_degree, initial_topology, interior,
                   is_continuous, product_space, quotient_space, subspace_space,
                   validate_topology)
from .compact import (closed_char_compact, is_compact, is_perfect, lset_compact,
                      point_preimage_compact, spectrum, theorem_suite)

__version__ = "0.1.0"

__all__ = [
    "CheckEntry", "CheckReport", "Verdict", "FuzzTopError", "LawFailure", "StructuralError",
    "GLMonoid", "Lattice", "build_lattice", "classify_monoid", "derived_property_report",
    "make_monoid", "make_standard_monoid", "monoid_from_name", "product_monoid",
    "validate_glmonoid",
    "LSubset", "LValuedSet", "crisp_lvset", "extensional_hull", "extensionality_defect",
    "is_extensional_subset", "make_lvset", "restrict_lvset",
    "FuzzyFunction", "compose", "degrees", "from_crisp", "identity", "image", "in_sur_slack",
    "invert",
    "power5_audit", "preimage", "proposition_audit", "restrict_ff", "to_crisp", "validate_ff",
    "coproduct_lvset", "degree_law_audit", "image_equality", "preimage_equality",
    "product_lvset", "universal_probe",
    "LTopology", "LTopSpace", "closure_ops", "continuity_audit", "coproduct_space",
    "generate_topology", "homeomorphism_degree", "initial_topology", "interior",
    "is_continuous", "product_space", "quotient_space", "subspace_space", "validate_topology",
    "closed_char_compact", "is_compact", "is_perfect", "lset_compact",
    "point_preimage_compact", "spectrum", "theorem_suite",
]
