"""weldlab: Fuchsian side-pairing groups, Bowen-Series circle maps,
combinatorial conformal matings, blender-surface welding, and desk-scale
correspondence models."""

__version__ = "0.1.0"

from .bowen_series import ConjugacyH, bowen_series_map, circle_degree, tiles
from .correspondence import (ModelMaps, blaschke, fiber, group_tiling,
                             model_tiling_set, recover_representation)
from .fuchsian import (CASE_I, CASE_II, build_group, degree_plan,
                       orbifold_signature, poincare_check, side_pairing_check)
from .hyperbolic import (Geodesic, MobiusMap, common_perpendicular,
                         geodesic_between, reflect, regular_ideal_polygon)
from .mating_schema import (ContactData, assemble, blaschke_slot, group_slot,
                            load_schema, newton_schema, paper_example,
                            polynomial_registry, verify_polynomial)
from .welding import (surface_report, weld, welding_graph, zipped_report)

__all__ = [
    "CASE_I", "CASE_II", "ConjugacyH", "ContactData", "Geodesic", "MobiusMap",
    "ModelMaps", "assemble", "blaschke", "blaschke_slot", "bowen_series_map",
    "build_group", "circle_degree", "common_perpendicular", "degree_plan",
    "fiber", "geodesic_between", "group_slot", "group_tiling", "load_schema",
    "model_tiling_set", "newton_schema", "orbifold_signature", "paper_example",
    "poincare_check", "polynomial_registry", "recover_representation",
    "reflect", "regular_ideal_polygon", "side_pairing_check", "surface_report",
    "tiles", "verify_polynomial", "weld", "welding_graph", "zipped_report",
]
