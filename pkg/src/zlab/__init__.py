"""zlab: mollified mean values and zero proportions for the Riemann zeta-function."""

from .expform import (
    BiPoly,
    EvalConfig,
    ExpRatForm,
    OperatorSpec,
    apply_operator,
    d_a,
    d_b,
    eval_at,
    lemma2_form,
    sigma_bipoly,
)
from .meanvalue import (
    PUBLISHED_SECTION2,
    PUBLISHED_SECTION3,
    EtaSpec,
    MeanValue,
    MollifierPair,
    section2_mean,
    section3_mean,
)
from .polyalg import RatPoly, integrate01, p_basis, poly_derive, poly_eval, q_basis
from .proportions import (
    ProportionReport,
    distinct_bound,
    ng_bound,
    proportion_report,
    xi_critical_bound,
)

__version__ = "0.1.0"
