GEOLOOP_VERSION = "0.1"

ENV_EPS_EQ = "GEOLOOP_EPS_EQ"

EPS_EQ = 1e-9  # point coincidence, intrinsic distance
SPHERE_POINT_TOL = 1e-12  # relative to radius
TORUS_HALF = 0.5

RK4_STEPS = 256
NEWTON_MAX_ITERS = 50
BVP_TOLERANCE = 1e-8  # chart coordinates
FD_STEP = 1e-6
MAX_DAMPING_HALVINGS = 20
QUADRATURE_NODES = 16

CHAIN_STEP_BUDGET = 64
WALK_STEP_FRACTION = 0.5  # of the chart radius
INVARIANCE_SAMPLES = 257

JSON_DIGITS = 17

SPECIES_Z = "Z"
SPECIES_Z_BASED = "Z_based"
SPECIES_X = "X"
SPECIES_G = "G"
SPECIES = (SPECIES_Z, SPECIES_Z_BASED, SPECIES_X, SPECIES_G)
BASED_SPECIES = (SPECIES_Z_BASED, SPECIES_G)
CLOSED_SPECIES = (SPECIES_X, SPECIES_G)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDITY = 2
EXIT_CONVERGENCE = 3

ERR_UNIQUENESS = "no unique minimal geodesic between {} and {}"
ERR_BASEPOINT = "basepoint mismatch: {} vs {}"
ERR_MANIFOLD = "words live on different manifolds: {} vs {}"
ERR_CHART_DOMAIN = "distance {} from chart center exceeds radius {}"
