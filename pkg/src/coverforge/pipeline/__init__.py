"""Construction of W, the weighted sections, the multiplication table, Z and X."""

from .cover import build_double_cover, check_cover_identity, lift_points, u10_form
from .descent import DescentError, DescentReport, descend_to_X, printed_descent_forms
from .divisor import DivisorError, Invariance, find_section_with_divisor
from .interpolate import InterpolationError, interpolate_by_parity, interpolate_vanishing_forms
from .model import (
    DivisorConstraint,
    DivisorCurve,
    ModelError,
    PointSample,
    VarietyModel,
    dump_model,
    load_model_file,
    load_model_text,
)
from .multable import (
    CoverCoordinate,
    MulTable,
    MulTableError,
    ProductEntry,
    build_multiplication_table,
    emit_model_Z,
    fix_scalings_by_associativity,
    verify_associativity,
)
from .recover import ModularImage, RecoveryError, recover_polynomial
from .sampling import SamplingError, sample_points
from .sections import SectionError, SectionSolution, find_weighted_sections
