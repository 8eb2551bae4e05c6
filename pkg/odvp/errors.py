class Error(Exception):
	"""Base class for everything this package raises on purpose."""

class NotPossible(Error):
	"""Indicates a particular strategy cannot be applied.

	For example, an exact power integral of |u'|^p when p is not
	an even integer. Callers catch this and fall back to another
	strategy.
	"""

class InvalidGeometry(Error):
	"""A ball was requested with a bad dimension or radius."""

class InvalidSpec(Error):
	"""A ProblemSpec violates one of its invariants."""

class SingularAtZero(Error):
	"""An integral or evaluation at r = 0 hits a negative power or a log."""

class NonSmoothAtKnot(Error):
	"""The radial Laplacian would divide a nonzero slope by r at the origin."""

class ToleranceNotMet(Error):
	"""Adaptive quadrature gave up before reaching the requested tolerance."""
	def __init__(self, message, estimate, error_bound):
		super().__init__(message)
		self.estimate = estimate
		self.error_bound = error_bound

class LogClosureUnsupported(Error):
	"""Iterated solves produced log powers beyond the supported depth."""

class IdentityMismatch(Error):
	"""An identity that must hold by construction exceeded its tolerance.

	This is a numeric failure rather than a user error.
	"""

class AlphaTooSmall(Error):
	"""The eigenvalue method needs alpha >= 1/lambda_1(C)."""

class CTooSmall(Error):
	"""The Hardy transfer needs c >= (p/(p-1))^p."""

class PhiNotSuperharmonic(Error):
	"""The weight phi is not positive with nonpositive Laplacian on the core."""

class NonPositiveInput(Error):
	"""A family of functions for the means comparison is not positive."""

class NonConstantG(Error):
	"""The hierarchy thresholds are only defined for constant g."""

class UnsupportedDimension(Error):
	"""The requested check has no meaning or no constants in this dimension."""

class GInteriorUndefined(Error):
	"""The boundary data g does not cover the interior of the ball."""

class NoSolutionCertificate(Error):
	"""The existence condition fails, so no root is searched for.

	The failing ConditionReport is kept on the exception so callers
	can explain why.
	"""
	def __init__(self, message, report):
		super().__init__(message)
		self.report = report

class BracketNotFound(Error):
	"""The deficit never changes sign on [R, rho_max]."""
	def __init__(self, message, value_at_ceiling):
		super().__init__(message)
		self.value_at_ceiling = value_at_ceiling

class SpecParseError(Error):
	"""A spec file could not be read into a valid ProblemSpec."""
	def __init__(self, message, location):
		super().__init__("{location}: {message}".format(
			location = location,
			message  = message))
		self.location = location

class UsageError(Error):
	"""The command line asked for something that does not exist."""
