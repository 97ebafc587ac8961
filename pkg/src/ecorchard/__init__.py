"""Orchard arrangements from elliptic curves over finite fields."""

from .admissibility import admissible_orders, ruck_admissible, schoof_admissible
from .elliptic_curve import (
    INFINITY,
    ProjPoint,
    WeierstrassCurve,
    affine_point,
    ec_add,
    ec_count_legendre,
    ec_discriminant,
    ec_group_structure,
    ec_is_on_curve,
    ec_is_supersingular,
    ec_j_invariant,
    ec_neg,
    ec_points,
    ec_scalar_mul,
    ec_trace,
    make_curve,
    parse_curve,
    short_curve,
)
from .errors import OrchardError
from .families import FAMILIES, construct_family, find_curve
from .finite_field import FieldElement, FieldSpec, ff_arith, ff_enumerate, ff_inv, ff_legendre, ff_make
from .group_counting import (
    AbelianStructure,
    classify_excess,
    count_3rich_bruteforce,
    count_3rich_formula,
    green_tao_bound,
    psi,
)
from .orchard import Arrangement, lines_from_group, lines_geometric
from .rational_geometry import RationalPoint, rat_collinear, rat_enumerate_3rich, rat_reduce_mod_p
from .theorems import reproduce_table3, sweep, verify_theorem

__version__ = "0.1.0"
