import os

# NUMERICS
DEFAULT_TOL = 1e-10
DEFAULT_ROOT_TOL = 1e-9
DEFAULT_CLUSTER_TOL = 1e-7
DEFAULT_RANK_TOL = 1e-8
DEFAULT_CONDITION_CAP = 1e12
DEFAULT_ABERTH_MAX_ITER = 500

# TRIMER
DEFAULT_EP_TOL = 1e-9

# SWEEP
DEFAULT_BISECTION_MAX_ITER = 200
DEFAULT_COALESCENCE_OVERLAP = 1 - 1e-6

# RUN
DEFAULT_MAX_CONCURRENCY = os.cpu_count() or 1
DEFAULT_LOG_LEVEL = "ERROR"
DEFAULT_T_START = 0.0
DEFAULT_T_END = 10.0
DEFAULT_STEPS = 1001

# OUTPUT
CSV_FLOAT_FORMAT = "%.16e"
CSV_LINE_TERMINATOR = "\n"
