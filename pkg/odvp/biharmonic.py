"""Radial Navier plate: Lap^2 v = f in B_rho with v = Lap v = 0 on the sphere.

Solved as the coupled pair -Lap u = f, -Lap v = u, so u is the bending
moment and v the deflection.
"""
import collections
import logging

from odvp import calculus, errors, poisson, radial_model, types

class BiharmonicSolution(collections.namedtuple("BiharmonicSolution", ("u", "v", "slope", "shear", "edge_product"))):
	"""The two chained Poisson solutions and their edge data.

	slope is |v'(rho)|, shear is |u'(rho)| and edge_product their product.
	"""
	__slots__ = ()

	@property
	def rho(self) -> float:
		return self.u.rho

	@property
	def dimension(self) -> int:
		return self.u.dimension

def solve_biharmonic(source: radial_model.RadialProfile, rho: float, dimension: int, tolerances: types.Tolerances=types.DEFAULT) -> BiharmonicSolution:
	u = poisson.solve(source, rho, dimension, tolerances)
	v = poisson.solve(u.u, rho, dimension, tolerances)
	solution = BiharmonicSolution(
		edge_product = v.boundary_gradient * u.boundary_gradient,
		shear        = u.boundary_gradient,
		slope        = v.boundary_gradient,
		u            = u,
		v            = v)
	squared = moment_energy(solution)
	work = deflection_work(solution)
	if abs(squared - work) > tolerances.scaled("identity_tol", squared, work):
		raise errors.IdentityMismatch("plate energy fails: int u^2 = {!r}, int f v = {!r}".format(squared, work))
	logging.debug("Plate on B_%s has edge product %r", rho, solution.edge_product)
	return solution

def edge_work(solution: BiharmonicSolution) -> float:
	"""|u'(rho)| |v'(rho)|, the product of shear force and slope at the edge."""
	return solution.shear * solution.slope

def moment_energy(solution: BiharmonicSolution) -> float:
	"""The integral of u^2 over the ball."""
	squared = radial_model.multiply(solution.u.u, solution.u.u, 0.0, solution.rho)
	return calculus.volume_integral(squared, solution.u.geometry)

def deflection_work(solution: BiharmonicSolution) -> float:
	"""The integral of f v over the ball."""
	product = radial_model.multiply(solution.u.source, solution.v.u, 0.0, solution.rho)
	return calculus.volume_integral(product, solution.u.geometry)

def plate_residual(solution: BiharmonicSolution, tolerances: types.Tolerances=types.DEFAULT) -> float:
	"""Largest |Lap^2 v - f| over interior sample points."""
	once = radial_model.radial_laplacian(solution.v.u, solution.dimension)
	twice = radial_model.radial_laplacian(once, solution.dimension)
	worst = 0.0
	for lo, hi, _ in twice.segments:
		step = (hi - lo) / (tolerances.sample_points + 1)
		for i in range(1, tolerances.sample_points + 1):
			r = lo + i * step
			worst = max(worst, abs(twice(r) - solution.u.source(r)))
	return worst
