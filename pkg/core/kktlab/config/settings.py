# kktlab

# JSON REPORT
SCHEMA = "kktlab/1"
SCHEMA_KEY = "schema"
COMMAND = "command"
INPUTS = "inputs"
RESULTS = "results"
CHECK_LIST = "checks"
PASSED = "passed"
SEED = "seed"
MODE = "mode"
TOTAL_TIME = "total_time"

# CHECK REPORT FIELDS
CHECK_NAME = "name"
CHECK_PASSED = "passed"
CHECK_COUNT = "checked"
CHECK_MODE = "mode"
CHECK_SEED = "seed"
CHECK_WITNESS = "witness"
CHECK_DETAILS = "details"

# FINGERPRINT FIELDS
FP_DIM = "dim"
FP_GRADED_DIMS = "graded_dims"
FP_KILLING_RANK = "killing_rank"
FP_KILLING_DET = "killing_det"
FP_DERIVED_DIMS = "derived_dims"
FP_CENTER_DIM = "center_dim"

# EXIT CODES
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# COMMAND CLASS INSTANCES:
COMMANDS = {
    'tower': ("kktlab.command_handler.tower_command", "TowerCommand"),
    'verify': ("kktlab.command_handler.verify_command", "VerifyCommand"),
    'grade': ("kktlab.command_handler.grade_command", "GradeCommand"),
    'extend': ("kktlab.command_handler.extend_command", "ExtendCommand"),
    'isomorphism': ("kktlab.command_handler.isomorphism_command", "IsomorphismCommand"),
    'fields': ("kktlab.command_handler.fields_command", "FieldsCommand"),
    'magic': ("kktlab.command_handler.magic_command", "MagicCommand"),
}

# CHECK CLASS INSTANCES (verify --check <name>):
CHECKS = {
    'jordan': ("kktlab.logic.checks.jordan_check", "JordanCheck"),
    'gjts': ("kktlab.logic.checks.gjts_check", "GJTSCheck"),
    'jacobi': ("kktlab.logic.checks.jacobi_check", "JacobiCheck"),
    'grading': ("kktlab.logic.checks.grading_check", "GradingCheck"),
}

# RUN CONFIGURATION
# Keys of config/kktlab_config.json; CLI flags override them.
CONFIG_SEED = "seed"
CONFIG_MODE = "mode"
CONFIG_THREADS = "threads"
CONFIG_EMIT = "emit"
CONFIG_GOLDEN_DIR = "golden_dir"

DEFAULT_EMIT = "json"
DEFAULT_GOLDEN_DIR = "data/golden"
GOLDEN_FINGERPRINTS = "fingerprints.json"
GOLDEN_OCTONION_TABLE = "octonion_table.json"

# Range of n covered by extend --sweep.
SWEEP_RANGE = (1, 6)

# RUN DEFAULTS
# Seed of numpy.random.default_rng for every sampled check.
DEFAULT_SEED = 20050511

# Random basis 5-tuples for the generalized Jordan triple identity.
DEFAULT_GJTS_SAMPLES = 10_000

# Random basis triples for the Jacobi identity on algebras above FULL_JACOBI_MAX_DIM.
DEFAULT_JACOBI_SAMPLES = 1_000_000

# Random element pairs for the unlinearized Jordan identity.
DEFAULT_JORDAN_TRIALS = 20

# Above these dimensions the full enumeration switches to sampling.
FULL_JACOBI_MAX_DIM = 150
FULL_GJTS_MAX_DIM = 12

# Coordinates of random elements are drawn as p/q with |p| <= RANDOM_NUMERATOR
# and 1 <= q <= RANDOM_DENOMINATOR.
RANDOM_NUMERATOR = 5
RANDOM_DENOMINATOR = 3

# Highest total degree any polynomial vector field coefficient may reach.
POLY_DEGREE_CAP = 4

# Work items per process chunk for parallel scans.
SCAN_CHUNK_SIZE = 2_000

# Environment variable that caps the number of worker processes.
THREADS_ENV = "KKTLAB_THREADS"

# COMPOSITION ALGEBRAS
COMPOSITION_DIMS = {'R': 1, 'C': 2, 'H': 4, 'O': 8}

# Matrix sizes accepted by the hermitian Jordan algebra constructor.
# 4 only makes sense for the non-Jordan negative control H4(O).
JORDAN_SIZES = (2, 3, 4)

# NAMED NODES (Bourbaki numbering, 1-based)
# "black" is the node that generates the grading drawn in the magic-square
# diagrams, "last" the black node of the last row after extension by one node.
# On E7 these differ: "black" (7) grades with depth 3, "last" (3) with depth 7.
# Classical families resolve "rank" to the rank and "half" to (rank + 1) // 2.
NAMED_NODES = {
    'A': {'end': 1, 'black': 1, 'middle': "half"},
    'B': {'vector': 1, 'black': 1},
    'C': {'black': "rank", 'end': 1},
    'D': {'black': "rank", 'spinor': "rank", 'vector': 1},
    'E6': {'trivalent': 4, 'black': 4, 'end': 1},
    'E7': {'black': 7, 'con': 7, 'trivalent': 4, 'last': 3},
    'E8': {'black': 7, 'trivalent': 4, 'end': 8},
    'F4': {'black': 2, 'last': 2, 'end': 1},
    'G2': {'short': 1, 'long': 2},
}

# MAGIC SQUARE
# Cartan types of the rows der / str' / con H3(K) and of the last row, per K.
MAGIC_ROWS = {
    'der': {'R': "A1", 'C': "A2", 'H': "C3", 'O': "F4"},
    'str_reduced': {'R': "A2", 'C': "A2xA2", 'H': "A5", 'O': "E6"},
    'con': {'R': "C3", 'C': "A5", 'H': "D6", 'O': "E7"},
    'last': {'R': "F4", 'C': "E6", 'H': "E7", 'O': "E8"},
}

# Black node of each con-row diagram; extending there by one node gives the last row.
CON_BLACK_NODES = {"C3": 3, "A5": 3, "D6": 6, "E7": 7}

# Dimension d of H2(K) per K, the spacetime dimension of the conformal tower.
H2_SPACETIME_DIMS = {'R': 3, 'C': 4, 'H': 6, 'O': 10}

# so(2, d) = con H2(K) as a Cartan type with the node whose grading has H2(K) in degree -1.
H2_CON_TYPES = {'R': ("B2", 1), 'C': ("A3", 2), 'H': ("D4", 1), 'O': ("D6", 1)}
