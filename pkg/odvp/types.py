import os
import typing

from odvp import constants

class Tolerances():
	"""Numeric tolerances threaded through every computation.

	Treat instances as immutable. Use override() to derive a
	context with different values.
	"""
	def __init__(self, identity_tol=constants.IDENTITY_TOL, quad_tol=constants.QUAD_TOL, root_tol=constants.ROOT_TOL, sample_points=constants.SAMPLE_POINTS, scan_points=constants.SCAN_POINTS):
		self.identity_tol = identity_tol
		self.quad_tol = quad_tol
		self.root_tol = root_tol
		self.sample_points = sample_points
		self.scan_points = scan_points

	def __eq__(self, other):
		return isinstance(other, Tolerances) and self.as_dict() == other.as_dict()

	def __repr__(self):
		return "Tolerances({})".format(", ".join(
			"{}={!r}".format(k, v) for k, v in sorted(self.as_dict().items())))

	def as_dict(self) -> typing.Dict[typing.Text, typing.Any]:
		return {k: getattr(self, k) for k in VALID_PARAMS}

	def override(self, **kwargs):
		"""Create a new context with the provided overrides.

		For example, if you have tolerances A and want B that is
		identical to A but with a looser identity check you would
		use A.override(identity_tol=1e-8)
		"""
		assert all(k in VALID_PARAMS for k in kwargs.keys()), "unknown tolerance in {}".format(sorted(kwargs))
		params = {k: kwargs.get(k, getattr(self, k)) for k in VALID_PARAMS}
		return Tolerances(**params)

	def scaled(self, name: typing.Text, *magnitudes: float) -> float:
		"""Return tolerance `name` scaled by max(1, |magnitudes|...)."""
		scale = max([1.0] + [abs(m) for m in magnitudes])
		return getattr(self, name) * scale

	@classmethod
	def from_environment(cls, environ=None):
		"""Build the default tolerances, honoring ODVP_DEFAULT_TOL."""
		environ = os.environ if environ is None else environ
		result = cls()
		raw = environ.get(constants.ENVIRONMENT_TOL)
		if raw:
			result = result.override(identity_tol=float(raw))
		return result

VALID_PARAMS = ("identity_tol", "quad_tol", "root_tol", "sample_points", "scan_points")

DEFAULT = Tolerances()
