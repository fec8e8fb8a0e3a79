"""Maniplexes, cross-covers and colour-coded extensions."""

from .core import (
    FacePartition,
    MalformedManiplexError,
    Maniplex,
    MapType,
    ValidationReport,
    Walk,
    double_cover,
    faces,
    is_orientable,
    schlafli_type,
    validate,
)
from .weights import WeightFunction, cross_cover, lift_walk, walk_weight
from .symmetry import (
    Automorphism,
    StabilityVerdict,
    SymmetryTypeGraph,
    aut_order_and_orbits,
    are_isomorphic,
    automorphism_group,
    find_automorphism,
    is_fully_transitive,
    is_stable,
    symmetry_type_graph,
)
from .extend import Colouring, antipodal_colouring, extend_weight, extension, total_colouring
from .catalog import SEEDS, build_seed, vartheta, vartheta_prime, verify_proper_pair
from .io import ParseError, read_mpx, read_wgt, write_mpx, write_wgt
from .pipeline import PipelineReport, VariantEntry, theorem1

__version__ = "0.1.0"
