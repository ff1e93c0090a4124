"""Two-step anaerobic digestion (AM2) in two serial chemostats.

Break-even concentrations, steady-state enumeration, local stability,
operating diagrams and time integration for the eight-dimensional
cascade model and its four-dimensional reduction.
"""

__version__ = "0.1.0"

from .kinetics import (
    INF,
    CriticalRates,
    DomainError,
    GrowthLaw,
    KineticParams,
    OperatingPoint,
    PRESETS,
    critical_rates,
    lambda1,
    lambda2_pair,
    mu1,
    mu1_prime,
    mu2,
    mu2_prime,
    validate_growth_law,
)
from .equilibria import (
    LABELS,
    AuxFunctions,
    AuxValues,
    SteadyState,
    aux_values,
    enumerate_steady_states,
    reconstruct_full_state,
    serialize_steady_states,
    solve_f1_g1,
    solve_f2_g2,
    solve_f3_g2,
)
from .stability import (
    JacobianBlocks,
    StabilityVerdict,
    cascade_spectrum,
    classify,
    classify_all,
    classify_analytic,
    classify_numeric,
    crosscheck,
    full_jacobian,
    jacobian_at,
)
from .diagram import (
    GammaCurve,
    PlaneSpec,
    RegionSignature,
    ScanResult,
    classify_point,
    gamma_sample,
    scan_plane,
    signature_bits_grid,
)
from .regions import FIGURES, REGION_ROWS, locate_region, region_table_check
from .simulator import (
    BasinReport,
    StiffnessError,
    Trajectory,
    basin_sample,
    conservation_deviation,
    integrate,
    rhs_full,
    rhs_reduced,
)
