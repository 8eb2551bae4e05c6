"""Radial Dirichlet problem -Lap u = f in B_rho, u = 0 on the sphere.

The solution is the nested quadrature

	u(r) = int_r^rho t^(1-N) int_0^t s^(N-1) f(s) ds dt

carried out segment by segment with exact antiderivatives. The inner
integral is the flux moment m(t), so u'(r) = -m(r) / r^(N-1) and
u'(0) = 0 because m(t) = O(t^N).
"""
import logging
import typing

import numpy

from odvp import calculus, constants, errors, radial_model, types

class PoissonSolution():
	"""An exact radial solution together with its cached boundary data.

	Attributes:
		rho: radius of the ball
		dimension: N
		source: the right hand side f
		flux_moment: m(t) as a piecewise expansion on [0, rho]
		u: the solution as a piecewise expansion on [0, rho]
		gradient: the signed derivative u'
		boundary_gradient: |u'(rho)|
		total_mass: the integral of u over B_rho
	"""
	def __init__(self, rho, dimension, source, flux_moment, u, gradient, boundary_gradient, total_mass):
		self.rho = rho
		self.dimension = dimension
		self.source = source
		self.flux_moment = flux_moment
		self.u = u
		self.gradient = gradient
		self.boundary_gradient = boundary_gradient
		self.total_mass = total_mass

	def __call__(self, r: float) -> float:
		return self.value(r)

	def __repr__(self):
		return "PoissonSolution(rho={}, N={}, |u'(rho)|={!r})".format(self.rho, self.dimension, self.boundary_gradient)

	@property
	def geometry(self) -> radial_model.BallGeometry:
		return radial_model.BallGeometry(self.dimension, self.rho)

	def value(self, r: float) -> float:
		if r >= self.rho:
			return 0.0
		return self.u(r)

	def slope(self, r: float) -> float:
		return self.gradient(min(r, self.rho))

def solve(source: radial_model.RadialProfile, rho: float, dimension: int, tolerances: types.Tolerances=types.DEFAULT) -> PoissonSolution:
	"""Solve -Lap u = source in B_rho with u = 0 on the boundary.

	The source is truncated at rho if it reaches further. The result
	is checked against the equation at sample points and against
	Green's identity before it is returned.
	"""
	geometry = radial_model.BallGeometry(dimension, rho)
	moments = []
	carried = 0.0
	for lo, hi, terms in source.segments_on(0.0, rho):
		primitive = calculus.antiderivative(calculus.shift(terms, dimension - 1))
		moment = calculus.add(primitive, calculus.constant(carried - calculus.evaluate(primitive, lo)))
		moments.append((lo, hi, moment))
		carried = calculus.evaluate(moment, hi)
	slopes = [(lo, hi, calculus.scale(calculus.shift(moment, 1 - dimension), -1.0)) for lo, hi, moment in moments]

	# Integrate the slope inward from u(rho) = 0.
	level = 0.0
	pieces = []
	for lo, hi, slope in reversed(slopes):
		primitive = calculus.antiderivative(slope)
		offset = level - calculus.evaluate(primitive, hi)
		pieces.append((lo, hi, calculus.add(primitive, calculus.constant(offset))))
		level = calculus.evaluate(primitive, lo) + offset
	pieces.reverse()

	flux_moment = radial_model.RadialProfile(moments)
	u = radial_model.RadialProfile(pieces)
	gradient = radial_model.RadialProfile(slopes)
	solution = PoissonSolution(
		boundary_gradient = carried / rho ** (dimension - 1),
		dimension         = dimension,
		flux_moment       = flux_moment,
		gradient          = gradient,
		rho               = rho,
		source            = source,
		total_mass        = calculus.volume_integral(u, geometry),
		u                 = u)
	_verify(solution, tolerances)
	logging.debug("Solved Poisson on B_%s in dimension %d with %d segments", rho, dimension, len(pieces))
	return solution

def boundary_gradient(solution: PoissonSolution) -> float:
	return solution.boundary_gradient

def energy(solution: PoissonSolution) -> float:
	"""Dirichlet energy, the integral of |u'|^2 over the ball."""
	squared = radial_model.multiply(solution.gradient, solution.gradient, 0.0, solution.rho)
	return calculus.volume_integral(squared, solution.geometry)

def source_work(solution: PoissonSolution) -> float:
	"""The integral of f u over the ball."""
	product = radial_model.multiply(solution.source, solution.u, 0.0, solution.rho)
	return calculus.volume_integral(product, solution.geometry)

def residual(solution: PoissonSolution, tolerances: types.Tolerances=types.DEFAULT) -> float:
	"""Largest |Lap u + f| over interior sample points of every segment."""
	laplacian = radial_model.radial_laplacian(solution.u, solution.dimension)
	worst = 0.0
	for lo, hi, _ in solution.u.segments:
		for r in numpy.linspace(lo, hi, tolerances.sample_points + 2)[1:-1]:
			worst = max(worst, abs(laplacian(r) + solution.source(r)))
	return worst

def iterate(rho: float, dimension: int, n: int, tolerances: types.Tolerances=types.DEFAULT, source: typing.Optional[radial_model.RadialProfile]=None) -> typing.List[PoissonSolution]:
	"""Solve -Lap u_0 = source, then -Lap u_k = u_(k-1) for k < n.

	The source defaults to 1 on the whole ball. In the plane every
	step can add a log power outside the support of the source, so
	the chain stops at MAX_LOG_POWER.
	"""
	if n < 1:
		raise errors.InvalidSpec("iteration depth must be at least 1, got {}".format(n))
	if source is None:
		source = radial_model.RadialProfile.constant(1.0, rho)
	solutions = []
	for k in range(n):
		if source.max_log_power() >= constants.MAX_LOG_POWER:
			raise errors.LogClosureUnsupported(
				"step {} would exceed log power {} in dimension {}".format(k, constants.MAX_LOG_POWER, dimension))
		solution = solve(source, rho, dimension, tolerances)
		solutions.append(solution)
		source = solution.u
	return solutions

def _verify(solution: PoissonSolution, tolerances: types.Tolerances):
	geometry = solution.geometry
	total_source = calculus.volume_integral(solution.source, geometry)
	flux = geometry.surface_area * solution.boundary_gradient
	if abs(total_source - flux) > tolerances.scaled("identity_tol", total_source):
		raise errors.IdentityMismatch("Green's identity fails: {!r} != {!r}".format(total_source, flux))
	scale = max([abs(solution.source(r)) for r in numpy.linspace(0.0, solution.rho, tolerances.sample_points)])
	worst = residual(solution, tolerances)
	if worst > tolerances.scaled("identity_tol", scale):
		raise errors.IdentityMismatch("equation residual {:.3g} on B_{}".format(worst, solution.rho))
