"""
Constants used throughout the dispatch engine.
"""

# Case file schema version understood by managers.case_files
CASE_SCHEMA_VERSION = 1
CONFIG_SCHEMA_VERSION = 1

# Feasibility tolerances
POWER_BALANCE_TOL_MW = 1e-3
POWER_REPAIR_TOL_MW = 1e-6
HEAT_BALANCE_TOL_MWTH = 1e-6
FOR_TOL = 1e-6
BOUND_TOL = 1e-9
SYMMETRY_TOL = 1e-12

# Power-balance repair
REPAIR_MAX_ITER = 50
REPAIR_DIVERGENCE_STREAK = 5

# Penalty applied to both objectives when repair leaves a balance residual
PENALTY_WEIGHT = 1e6

# Run defaults
DEFAULT_POPULATION = 100
DEFAULT_ITERATIONS = 100
DEFAULT_SEED = 1
DEFAULT_THETA = 5.0
DEFAULT_AXIS_THETA = 1e6
DEFAULT_RUNS = 30

# Variation operators
SBX_ETA = 30.0
SBX_PROBABILITY = 1.0
PM_ETA = 20.0

# Decision stage
FCM_CLUSTERS = 2
FCM_FUZZINESS = 2.0
FCM_EPSILON = 1e-6
FCM_MAX_ITER = 300
GRP_RESOLUTION = 0.5
# decision matrix the schemes are ranked against: the whole archive or their own cluster
GRP_SCOPES = ('archive', 'cluster')

# Smallest normalization span substituted for a degenerate anchor span
MIN_ANCHOR_SPAN = 1e-12

ALGORITHMS = ('theta-dea', 'nsga-ii')

# Output location
OUTPUT_DIR_ENV = 'CHPEED_OUTPUT_DIR'
DEFAULT_OUTPUT_DIR = 'results'

# Exit codes
EXIT_OK = 0
EXIT_PARSE_ERROR = 2
EXIT_VALIDATION_ERROR = 3
EXIT_INFEASIBLE_CASE = 4
EXIT_RUNTIME_ERROR = 5
EXIT_INFEASIBLE_RESULT = 6
