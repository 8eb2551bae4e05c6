"""Radial data, ball geometry and the problem description.

A RadialProfile is a function of r = |x| given piecewise on
contiguous segments [lo, hi] by power-log expansions. Beyond its
last knot it is zero unless it was built with extend_last, in which
case the last expansion continues to infinity. Below its first knot
the first expansion is used.
"""
import bisect
import collections
import logging
import math
import typing

import numpy
from scipy import special

from odvp import calculus, errors, types

Segment = collections.namedtuple("Segment", ("lo", "hi", "terms"))

class RadialProfile():
	def __init__(self, segments: typing.Iterable[typing.Tuple[float, float, calculus.Terms]], extend_last: bool=False):
		segments = [Segment(float(lo), float(hi), calculus.normalize(terms)) for lo, hi, terms in segments]
		if not segments:
			raise errors.InvalidSpec("a profile needs at least one segment")
		if segments[0].lo < 0:
			raise errors.InvalidSpec("profile starts at negative radius {}".format(segments[0].lo))
		for segment in segments:
			if not segment.lo < segment.hi:
				raise errors.InvalidSpec("empty segment [{}, {}]".format(segment.lo, segment.hi))
		for left, right in zip(segments, segments[1:]):
			if left.hi != right.lo:
				raise errors.InvalidSpec("segments are not contiguous at {} and {}".format(left.hi, right.lo))
		self.segments = tuple(segments)
		self.extend_last = extend_last
		self._starts = [segment.lo for segment in self.segments]

	@classmethod
	def polynomial(cls, pieces: typing.Iterable[typing.Tuple[float, float, typing.Sequence[float]]], extend_last: bool=False):
		"""Build from (lo, hi, coefficients) with coefficients in ascending degree."""
		return cls(
			[(lo, hi, calculus.polynomial(coefficients)) for lo, hi, coefficients in pieces],
			extend_last=extend_last)

	@classmethod
	def constant(cls, value: float, hi: float, lo: float=0.0, extend_last: bool=False):
		return cls([(lo, hi, calculus.constant(value))], extend_last=extend_last)

	def __call__(self, r: float) -> float:
		return calculus.evaluate(self.terms_at(r), r)

	def __eq__(self, other):
		return (isinstance(other, RadialProfile) and
			self.segments == other.segments and
			self.extend_last == other.extend_last)

	def __repr__(self):
		return "RadialProfile({!r}, extend_last={})".format(list(self.segments), self.extend_last)

	@property
	def start(self) -> float:
		return self.segments[0].lo

	@property
	def end(self) -> float:
		return self.segments[-1].hi

	@property
	def knots(self) -> typing.List[float]:
		return self._starts + [self.end]

	@property
	def support_radius(self) -> float:
		"""Radius beyond which the profile vanishes."""
		if self.extend_last and self.segments[-1].terms:
			return math.inf
		last = max([i for i, segment in enumerate(self.segments) if segment.terms] or [-1])
		if last < 0:
			return 0.0
		return self.segments[last].hi

	def is_zero(self) -> bool:
		return not any(segment.terms for segment in self.segments)

	def terms_at(self, r: float) -> calculus.Terms:
		if r > self.end:
			return self.segments[-1].terms if self.extend_last else ()
		index = bisect.bisect_right(self._starts, r) - 1
		return self.segments[min(max(index, 0), len(self.segments) - 1)].terms

	def segments_on(self, lo: float, hi: float) -> typing.List[Segment]:
		"""Pieces of the profile covering [lo, hi], split at every knot inside."""
		edges = [lo] + [k for k in self.knots if lo < k < hi] + [hi]
		return [Segment(a, b, self.terms_at(0.5 * (a + b))) for a, b in zip(edges, edges[1:]) if a < b]

	def restrict(self, lo: float, hi: float):
		return RadialProfile(self.segments_on(lo, hi))

	def derivative(self):
		return RadialProfile(
			[(s.lo, s.hi, calculus.derivative(s.terms)) for s in self.segments],
			extend_last=self.extend_last)

	def scaled(self, factor: float):
		return RadialProfile(
			[(s.lo, s.hi, calculus.scale(s.terms, factor)) for s in self.segments],
			extend_last=self.extend_last)

	def max_log_power(self) -> int:
		return max(calculus.max_log_power(s.terms) for s in self.segments)

	def sample(self, lo: float, hi: float, count: int) -> numpy.ndarray:
		return numpy.array([self(r) for r in numpy.linspace(lo, hi, count)])

def combine(left: RadialProfile, right: RadialProfile, operation, lo: float, hi: float) -> RadialProfile:
	"""Apply an expansion operation segment by segment on the merged knots of two profiles."""
	edges = [lo] + sorted({k for k in left.knots + right.knots if lo < k < hi}) + [hi]
	return RadialProfile([
		(a, b, operation(left.terms_at(0.5 * (a + b)), right.terms_at(0.5 * (a + b))))
		for a, b in zip(edges, edges[1:])])

def multiply(left: RadialProfile, right: RadialProfile, lo: float, hi: float) -> RadialProfile:
	return combine(left, right, calculus.multiply, lo, hi)

def add(left: RadialProfile, right: RadialProfile, lo: float, hi: float) -> RadialProfile:
	return combine(left, right, calculus.add, lo, hi)

def evaluate(profile: RadialProfile, r: float) -> float:
	"""Value of the profile at radius r."""
	return profile(r)

def radial_laplacian(profile: RadialProfile, dimension: int) -> RadialProfile:
	"""h'' + (N-1)/r h', segment by segment.

	Raises NonSmoothAtKnot when a segment touching the origin has a
	slope that does not vanish there, since the result would blow up.
	"""
	segments = []
	for segment in profile.segments:
		first = calculus.derivative(segment.terms)
		second = calculus.derivative(first)
		terms = calculus.add(second, calculus.scale(calculus.shift(first, -1), dimension - 1))
		if segment.lo == 0 and any(t.exponent < 0 or (t.exponent == 0 and t.log_power) for t in terms):
			raise errors.NonSmoothAtKnot("Laplacian is singular at the origin for {}".format(segment.terms))
		segments.append((segment.lo, segment.hi, terms))
	return RadialProfile(segments, extend_last=profile.extend_last)

class BallGeometry(collections.namedtuple("BallGeometry", ("dimension", "radius"))):
	"""A centered ball B_radius in R^dimension."""
	__slots__ = ()

	def __new__(cls, dimension: int, radius: float):
		if int(dimension) != dimension or dimension < 2:
			raise errors.InvalidGeometry("dimension must be an integer >= 2, got {}".format(dimension))
		if not radius > 0 or math.isinf(radius):
			raise errors.InvalidGeometry("radius must be positive and finite, got {}".format(radius))
		return super().__new__(cls, int(dimension), float(radius))

	@property
	def unit_sphere_area(self) -> float:
		"""w_N = 2 pi^(N/2) / Gamma(N/2)."""
		return float(2.0 * math.pi ** (self.dimension / 2.0) / special.gamma(self.dimension / 2.0))

	@property
	def surface_area(self) -> float:
		return self.unit_sphere_area * self.radius ** (self.dimension - 1)

	@property
	def volume(self) -> float:
		return self.unit_sphere_area * self.radius ** self.dimension / self.dimension

VALID_SPEC_PARAMS = ("dimension", "core_radius", "f", "g", "rho_max", "tolerances", "allow_degenerate")

class ProblemSpec():
	"""Everything needed to pose QS(f, g) and B(f, g) around a core ball.

	f is the source, supported in the core B_R. g is the boundary
	data, which must be positive on [R, rho_max]. allow_degenerate
	admits f = 0 or g = 0 for studying limiting cases.

	Treat instances as immutable. Use override() to derive a
	problem with different data.
	"""
	def __init__(self, dimension: int, core_radius: float, f: RadialProfile, g: RadialProfile, rho_max: float, tolerances: types.Tolerances=types.DEFAULT, allow_degenerate: bool=False):
		self.dimension = dimension
		self.core_radius = core_radius
		self.f = f
		self.g = g
		self.rho_max = rho_max
		self.tolerances = tolerances
		self.allow_degenerate = allow_degenerate
		self.validate()

	def __repr__(self):
		return "ProblemSpec(N={}, R={}, rho_max={})".format(self.dimension, self.core_radius, self.rho_max)

	@property
	def core(self) -> BallGeometry:
		return BallGeometry(self.dimension, self.core_radius)

	def ball(self, rho: float) -> BallGeometry:
		return BallGeometry(self.dimension, rho)

	def override(self, **kwargs):
		assert all(k in VALID_SPEC_PARAMS for k in kwargs.keys()), "unknown field in {}".format(sorted(kwargs))
		params = {k: kwargs.get(k, getattr(self, k)) for k in VALID_SPEC_PARAMS}
		return ProblemSpec(**params)

	def validate(self):
		core = self.core
		if not self.rho_max > self.core_radius or math.isinf(self.rho_max):
			raise errors.InvalidSpec("rho_max {} must be finite and exceed R {}".format(self.rho_max, self.core_radius))
		if self.f.support_radius > core.radius * (1.0 + 1e-14):
			raise errors.InvalidSpec("f is supported up to {} beyond R = {}".format(self.f.support_radius, core.radius))
		values = self.f.sample(0.0, core.radius, self.tolerances.scan_points)
		if (values < -self.tolerances.scaled("identity_tol", *values)).any():
			raise errors.InvalidSpec("f is negative somewhere in the core")
		if self.allow_degenerate:
			return
		if self.f.is_zero() or not (values > 0).any():
			raise errors.InvalidSpec("f vanishes identically in the core")
		boundary = self.g.sample(core.radius, self.rho_max, self.tolerances.scan_points)
		if not (boundary > 0).all():
			raise errors.InvalidSpec("g must be positive on [{}, {}]".format(core.radius, self.rho_max))

	def g_is_constant(self) -> bool:
		values = self.g.sample(self.core_radius, self.rho_max, self.tolerances.scan_points)
		return bool(numpy.ptp(values) <= self.tolerances.scaled("identity_tol", values[0]))

	def g_is_decreasing(self) -> bool:
		values = self.g.sample(self.core_radius, self.rho_max, self.tolerances.scan_points)
		decreasing = bool((numpy.diff(values) < -self.tolerances.scaled("identity_tol", values[0])).any())
		if decreasing:
			logging.warning("g decreases somewhere on [%s, %s], which the existence theory does not cover", self.core_radius, self.rho_max)
		return decreasing

def constant_problem(dimension: int, core_radius: float, c: float, rho_max: float, tolerances: types.Tolerances=types.DEFAULT) -> ProblemSpec:
	"""The model problem f = 1 on the core, g = c everywhere."""
	return ProblemSpec(
		core_radius = core_radius,
		dimension   = dimension,
		f           = RadialProfile.constant(1.0, core_radius),
		g           = RadialProfile.constant(c, rho_max, extend_last=True),
		rho_max     = rho_max,
		tolerances  = tolerances)
