"""Zeros of monotone operators on discretized L_p([0,1]).

One-step duality-map iteration for bounded maximal monotone maps
A : L_p -> L_q (1 < p <= 2), with application solvers for Hammerstein
integral equations, convex minimization, variational inequalities over
boxes, and J-fixed points, plus a reproducible experiment harness.
"""

from .duality import (
    NoRootError,
    ProductPoint,
    XuConstants,
    duality_map,
    duality_map_inverse,
    lyapunov_phi,
    product_duality,
    product_duality_inverse,
    product_norm,
    product_norm_dual,
    product_pairing,
    v_functional,
    xu_constants,
)
from .grid import (
    GridFunction,
    GridMismatchError,
    LpContext,
    NonFiniteValuesError,
    lp_norm,
    nodes,
    pairing,
    random_smooth,
    trapezoid_integral,
    trapezoid_weights,
)
from .io import RunRecord, export_csv, export_json, export_loglog, read_json, summarize
from .operators import (
    HammersteinPair,
    InfeasiblePointError,
    MonotoneOp,
    feasibility_violation,
    hammerstein_example,
    hammerstein_kernel_op,
    identity_op,
    j_pseudo_from_monotone,
    mult_op,
    norm_subgradient,
    norm_subgradient_op,
    product_op,
    sample_monotonicity,
    vi_normal_cone_selection,
    zero_op,
)
from .schedule import ParamSchedule, PairingReport, check_acceptably_paired, default_schedule
from .solver import (
    DivergenceError,
    IterationTrace,
    NonFiniteIterateError,
    SolveConfig,
    TraceRow,
    regularization_path_residual,
    solve_hammerstein,
    solve_jfixed,
    solve_min,
    solve_vi,
    solve_zero,
    solve_zero_hilbert,
)

__version__ = "0.1.0"

__all__ = [
    "DivergenceError",
    "GridFunction",
    "GridMismatchError",
    "HammersteinPair",
    "InfeasiblePointError",
    "IterationTrace",
    "LpContext",
    "MonotoneOp",
    "NoRootError",
    "NonFiniteIterateError",
    "NonFiniteValuesError",
    "ParamSchedule",
    "PairingReport",
    "ProductPoint",
    "RunRecord",
    "SolveConfig",
    "TraceRow",
    "XuConstants",
    "check_acceptably_paired",
    "default_schedule",
    "duality_map",
    "duality_map_inverse",
    "export_csv",
    "export_json",
    "export_loglog",
    "feasibility_violation",
    "hammerstein_example",
    "hammerstein_kernel_op",
    "identity_op",
    "j_pseudo_from_monotone",
    "lp_norm",
    "lyapunov_phi",
    "mult_op",
    "nodes",
    "norm_subgradient",
    "norm_subgradient_op",
    "pairing",
    "product_duality",
    "product_duality_inverse",
    "product_norm",
    "product_norm_dual",
    "product_op",
    "product_pairing",
    "random_smooth",
    "read_json",
    "regularization_path_residual",
    "sample_monotonicity",
    "solve_hammerstein",
    "solve_jfixed",
    "solve_min",
    "solve_vi",
    "solve_zero",
    "solve_zero_hilbert",
    "summarize",
    "trapezoid_integral",
    "trapezoid_weights",
    "v_functional",
    "vi_normal_cone_selection",
    "xu_constants",
    "zero_op",
]
