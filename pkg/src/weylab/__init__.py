"""weylab: numerical verification of Einstein-Weyl / selfdual-metric constructions."""

from .jets import (  # noqa: F401
    DIV_EPS,
    DomainError,
    Jet,
    JetSpec,
    OrderError,
    SpecMismatchError,
    derivative_extract,
    jet_arith,
    jet_elementary,
    jet_partial_derivative,
)
from .charts import (  # noqa: F401
    Chart,
    ChartError,
    ConstField,
    ExprField,
    FormField,
    LambdaField,
    MetricField,
    holomorphy_residual,
    sample_points,
)
from .tensors import (  # noqa: F401
    DegenerateMetricError,
    MetricJets,
    ext_d,
    hodge_star,
    metric_at,
    two_form_split,
)
from .curvature import (  # noqa: F401
    curvature_report_at,
    faraday_at,
    weyl_connection_coeffs_at,
)
from .einstein_weyl import (  # noqa: F401
    WeylStructure3,
    ew_residual_at,
    gauge_transform,
    hypercr_identities_at,
    kappa_monopole_residual_at,
    sfgc_analyze_at,
)
from .catalog import make_catalog_space, perturbed_space, space_names  # noqa: F401
from .monopoles import (  # noqa: F401
    canonical_projective_monopole,
    make_catalog_monopole,
    monopole_residual_at,
    sl2_residual_at,
)
from .metrics4d import (  # noqa: F401
    Metric4Bundle,
    assemble_from_monopole,
    complex_structure_checks_at,
    einstein_selfdual_report_at,
    explicit_einstein_hypercomplex_family,
    hitchin_lebrun_metric,
    jones_tod_extract_at,
    sfk_metric,
    submersion_residuals_at,
    theorem_ix_metric,
)

__version__ = "0.1.0"
