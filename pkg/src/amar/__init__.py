"""Adaptive multiscale autoregression.

Time series models whose regressors are recent running means of the
series over a small number of timescales.  The timescales are estimated
by change-point detection on the ordinary-least-squares coefficients of
a long autoregression, with the threshold and the autoregression order
picked by a Schwarz-type criterion.  The package also ships a seeded
simulator (Gaussian and heavy-tailed innovations), one-step forecasting
metrics, a bivariate vector extension, and a Monte Carlo benchmark
harness.
"""

from .benchmark import (
    BenchmarkRow,
    difficulty,
    hausdorff,
    preset,
    preset_names,
    recovery_rate,
    run_benchmark,
    write_rows_csv,
)
from .estimation import (
    FitReport,
    SicPoint,
    TwoScaleFit,
    amar_fit,
    default_p_grid,
    default_threshold,
    default_zeta_grid,
    fit_ar_ols,
    fit_two_scale,
    refit_scales,
    select_p,
    select_threshold,
    sic_score,
)
from .exceptions import (
    AmarError,
    CsvParseError,
    DataGapError,
    DegenerateParameterError,
    ExplosivePathError,
    InfeasibleThresholdError,
    InsufficientDataError,
    InsufficientHistoryError,
    InvalidOrderError,
    NonStationaryError,
    NotRepresentableError,
    SingularDesignError,
)
from .forecast import (
    hit_rate,
    predict_next,
    rolling_mspe,
    rolling_predictions,
    rolling_rmspe,
)
from .io import emit_plot_data, ingest_csv
from .models import (
    AmarModel,
    ArModel,
    CharPolynomial,
    InnovationSpec,
    amar_to_ar,
    ar_to_amar,
    is_stationary_exact,
    is_stationary_sufficient,
    seasonal_to_amar,
    spectral_density_single_scale,
)
from .mvar import (
    AmvarModel,
    amvar_fit_given_scales,
    amvar_predict_next,
    amvar_rolling_predictions,
    union_scale_selection,
)
from .segmentation import (
    ContrastResult,
    Interval,
    IntervalSet,
    contrast_cusum,
    generate_intervals,
    not_detect,
    scan_interval,
    solution_path,
)
from .simulate import default_burn_in, draw_innovations, replication_seed, simulate

__version__ = "0.1.0"
