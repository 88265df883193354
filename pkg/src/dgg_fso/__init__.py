"""Double Generalized Gamma turbulence channels and EGC BER analysis.

Library layout:
    special_numerics  Meijer-G evaluation, erfc, ladders, rationalization
    dgg_model         the two-factor fading distribution and presets
    product_sum       product distribution and the AM-GM sum bound
    ber               Monte Carlo, closed-form bound, asymptotics
    cli               batch front-end (`python -m dgg_fso ...`)
"""

from .special_numerics import (
    EvaluationError,
    ExactArg,
    MeijerGSpec,
    RationalExponent,
    SpecError,
    delta_seq,
    erfc,
    meijer_g,
    meijer_g_fast,
    rationalize,
)
from .dgg_model import (
    DoubleGGChannel,
    GGParams,
    PRESETS,
    cdf,
    get_preset,
    make_channel,
    make_special_case,
    omega_from_shape,
    pdf,
    sample,
    scintillation_variance,
)
from .product_sum import (
    ProductModel,
    build_product_model,
    product_cdf,
    product_pdf,
    sum_cdf_upper,
    sum_pdf_upper,
)
from .ber import (
    AsymptoticTerms,
    BERPoint,
    BoundTerms,
    MCConfig,
    SNRConfig,
    asymptotic_ber,
    ber_upper_bound,
    conditional_ber,
    diversity_order,
    mc_ber,
    mc_ber_bitlevel,
    snr_at_ber,
)

__version__ = "0.1.0"
