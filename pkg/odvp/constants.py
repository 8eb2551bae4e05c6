"""Defaults and fixed tables shared across the package."""
import math

import numpy
from scipy import special

IDENTITY_TOL = 1e-10
QUAD_TOL = 1e-12
ROOT_TOL = 1e-10
SCAN_POINTS = 512
SAMPLE_POINTS = 20

# Iterated solves in the plane pick up one log power per step on
# the segments outside the support of the source.
MAX_LOG_POWER = 8

# Relative slack when comparing user supplied constants against
# their theoretical lower bounds (alpha, c).
BOUND_SLACK = 1e-12

# Relative size below which a difference of two computed sides counts
# as zero.
ROUNDOFF = 64 * numpy.finfo(float).eps

ENVIRONMENT_TOL = "ODVP_DEFAULT_TOL"

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_NO_SOLUTION = 2
EXIT_PARSE_ERROR = 3
EXIT_NUMERIC_FAILURE = 4

CSV_FLOAT_FORMAT = "{:.17g}"

# First zero of the radial Dirichlet eigenfunction on the unit ball,
# so that lambda_1(B_R) = j^2 / R^2.
FIRST_DIRICHLET_ZERO = {
	2: float(special.jn_zeros(0, 1)[0]),
	3: math.pi,
}
