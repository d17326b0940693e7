"""bfw: a workbench for weighted Fourier algebras on concrete compact groups."""

from .duals import (
    GroupDual,
    ProductDual,
    SemidirectDual,
    SemidirectPoint,
    So3Dual,
    Su2Dual,
    TorusDual,
    branch_su2_to_torus,
    group_token,
    parse_group,
    so3_lift,
    su2_irrep,
)
from .fields import (
    OperatorField,
    character_field,
    coefficient_field,
    convolve,
    dual_norm,
    evaluate,
    factorize,
    involution,
    multiply,
    norm_a_omega,
    norm_l2_omega,
    one_field,
    pair,
    scale_diag,
    translate,
    zero_field,
)
from .labels import (
    IrrepLabel,
    ProductLabel,
    SemidirectLabel,
    Su2Spin,
    TorusChar,
    format_label,
    parse_label,
)
from .weights import (
    Weight,
    classify_growth,
    growth_rate,
    make_weight,
    quotient_weight,
    restrict_weight,
    validate,
)

__version__ = "0.1.0"
