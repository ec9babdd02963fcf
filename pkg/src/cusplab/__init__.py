"""cusplab: cusp-excursion geometry on the modular surface, restricted
continued fractions, and Hausdorff-dimension estimation."""

from .halfplane import (
    BASE_POINT,
    INFINITY,
    Geodesic,
    Horoball,
    HPoint,
    Interval,
    MoebiusMap,
    cayley_to_disc,
    cayley_to_halfplane,
    chord_length,
    cross_ratio,
    distance_via_crossratio,
    entry_exit_points,
    geodesic_through,
    hyp_distance,
    mobius_apply,
    mobius_apply_geodesic,
    mobius_apply_horoball,
    penetration_depth,
    petal_span,
    shadow,
)
from .contfrac import ContinuedFraction, Convergent, cf_expand, convergents, ford_circle
from .excursions import (
    ExcursionRecord,
    ExcursionTrace,
    corridor_membership,
    excursion_trace,
    gap_bound_estimate,
    good_membership,
    jarnik_ratios,
    ratio_to_theta,
    synthesize_trace,
    theta_to_ratio,
)
from .growth import GrowthSequence, seq_omega_rho
from .dimension import (
    DigitAlphabet,
    crude_critical_exponent,
    good_dimension_sweep,
    jarnik_dimension,
    transfer_dimension,
    ulam_dimension,
)
from .frostman import (
    CylinderMeasure,
    ball_mass,
    cdf,
    frostman_sampler,
    good_measure,
    good_weight_range,
)
from .spectra import (
    DegenerateSpectrumError,
    MeasureProbe,
    beta_to_theta,
    fp,
    global_measure_log,
    local_dim_sequence,
    spectrum_table,
    stratmann_spectrum,
    strict_spectrum,
    theta_to_beta,
)
from .numerics import InsufficientDigitsError, NumericError

__version__ = "0.1.0"
