DEFAULT_TAIL_TOL = 1e-12
DEFAULT_MAX_CUTOFF = 4096
TAIL_WINDOW = 5  # Top amplitudes inspected for truncation convergence

ROOT_MAX_SWEEPS = 1000
ROOT_RESIDUAL_TOL = 1e-10
ROOT_CLUSTER_RADIUS = 0.05  # Relative distance for multiple-root clustering

MAX_ANALYTIC_DEGREE = 30  # Factorials beyond this lose precision in float64
IMAG_RESIDUE_TOL = 1e-8
FIDELITY_TOL = 1e-9
UNDERFLOW_NORM_SQ = 1e-300
CONSISTENCY_ALARM = 1e-6  # prob --method both

COARSE_GRID_POINTS = 101
GOLDEN_TOL = 1e-5
T_BRACKET = (0.05, 0.9999)
ORDER_SEARCH_LIMIT = 8  # Exhaustive N! search up to this degree
STAGEWISE_ITERS = 2
STAGEWISE_STEP = 0.1
STAGEWISE_GOLDEN_TOL = 1e-4

DEFAULT_T = 0.99
DEFAULT_R_TILDE = 0.01  # Displacement beam splitters, |T~| -> 1
SWEEP_MIN = 0.5
SWEEP_MAX = 0.999
SWEEP_STEP = 0.001

CSV_DIGITS = 12
PROB_DIGITS = 6
