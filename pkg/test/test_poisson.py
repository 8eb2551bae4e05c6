import math

import numpy

import odvp.calculus
import odvp.errors
import odvp.poisson
import odvp.radial_model

from odvp.radial_model import RadialProfile

SEED = 20240611

def test_unit_source_unit_ball():
	solution = odvp.poisson.solve(RadialProfile.constant(1.0, 1.0), 1.0, 3)
	# u = (1 - r^2) / 6
	assert abs(solution(0.0) - 1.0 / 6.0) < 1e-15
	assert abs(solution(0.5) - 0.125) < 1e-15
	assert abs(solution.boundary_gradient - 1.0 / 3.0) < 1e-15
	assert abs(solution.total_mass - 4.0 * math.pi / 45.0) < 1e-14
	assert solution(1.5) == 0.0

def test_truncated_source():
	# f = 1 on [0, 1] inside B_2
	solution = odvp.poisson.solve(RadialProfile.constant(1.0, 1.0), 2.0, 3)
	assert abs(solution(0.0) - 1.0 / 3.0) < 1e-15
	assert abs(solution.boundary_gradient - 1.0 / 12.0) < 1e-15
	# Outside the support u = (1/r - 1/2) / 3
	assert abs(solution(1.5) - (1.0 / 1.5 - 0.5) / 3.0) < 1e-15

def test_plane_log_profile():
	solution = odvp.poisson.solve(RadialProfile.constant(1.0, 1.0), 2.0, 2)
	for r in (1.0, 1.25, 1.9):
		assert abs(solution(r) - 0.5 * math.log(2.0 / r)) < 1e-14
	assert solution.u.max_log_power() == 1

def test_slope_vanishes_at_origin():
	solution = odvp.poisson.solve(RadialProfile.polynomial([(0.0, 1.0, [2.0, 0.0, -1.0])]), 1.5, 4)
	assert solution.slope(0.0) == 0.0
	assert solution.slope(1.0) < 0.0

def test_energy_equals_source_work():
	solution = odvp.poisson.solve(RadialProfile.polynomial([(0.0, 0.5, [1.0]), (0.5, 1.0, [0.0, 2.0])]), 1.7, 3)
	assert abs(odvp.poisson.energy(solution) - odvp.poisson.source_work(solution)) < 1e-13

def test_half_square_integral():
	solution = odvp.poisson.solve(RadialProfile.constant(1.0, 1.0), 1.0, 3)
	squared = odvp.radial_model.multiply(solution.u, solution.u, 0.0, 1.0)
	half = 0.5 * odvp.calculus.volume_integral(squared, solution.geometry)
	assert abs(half - 4.0 * math.pi / 945.0) < 1e-15

def test_residual_small():
	solution = odvp.poisson.solve(RadialProfile.polynomial([(0.0, 1.0, [1.0, 1.0, 1.0])]), 1.0, 5)
	assert odvp.poisson.residual(solution) < 1e-12

def test_boundary_gradient():
	solution = odvp.poisson.solve(RadialProfile.constant(1.0, 1.0), 1.0, 2)
	assert abs(odvp.poisson.boundary_gradient(solution) - 0.5) < 1e-15

def test_iterate_two_steps():
	first, second = odvp.poisson.iterate(1.0, 3, 2)
	assert abs(first(0.0) - 1.0 / 6.0) < 1e-15
	assert abs(second(0.0) - 7.0 / 360.0) < 1e-15

def test_iterate_rejects_zero_depth():
	try:
		odvp.poisson.iterate(1.0, 3, 0)
		assert False, "expected InvalidSpec"
	except odvp.errors.InvalidSpec:
		pass

def test_iterate_stops_at_log_depth():
	source = RadialProfile([(0.0, 1.0, odvp.calculus.constant(1.0)), (1.0, 2.0, (odvp.calculus.PowerTerm(1.0, 0, 8),))])
	try:
		odvp.poisson.iterate(2.0, 2, 1, source=source)
		assert False, "expected LogClosureUnsupported"
	except odvp.errors.LogClosureUnsupported:
		pass

def test_generate_green_identity():
	for dimension in (2, 3, 4, 5):
		for rho in (1.0, 1.5, 2.0, 3.5):
			yield (check_green_identity, dimension, rho)

def check_green_identity(dimension, rho):
	f = RadialProfile.polynomial([(0.0, 0.5, [1.0, 0.0, 1.0]), (0.5, 1.0, [0.5])])
	solution = odvp.poisson.solve(f, rho, dimension)
	total = odvp.calculus.volume_integral(f, solution.geometry)
	flux = solution.geometry.surface_area * solution.boundary_gradient
	assert abs(total - flux) < 1e-12 * max(1.0, total)

def _random_source(rng):
	knot = float(rng.uniform(0.2, 0.8))
	return RadialProfile.polynomial([
		(0.0, knot, list(rng.uniform(0.0, 1.0, size=rng.integers(1, 4)))),
		(knot, 1.0, list(rng.uniform(0.0, 1.0, size=rng.integers(1, 4)))),
	])

def test_generate_comparison_principle():
	rng = numpy.random.default_rng(SEED)
	for _ in range(20):
		smaller = _random_source(rng)
		larger = odvp.radial_model.add(smaller, _random_source(rng), 0.0, 1.0)
		yield (check_comparison, smaller, larger, int(rng.integers(2, 5)), float(rng.uniform(1.0, 3.0)))

def check_comparison(smaller, larger, dimension, rho):
	below = odvp.poisson.solve(smaller, rho, dimension)
	above = odvp.poisson.solve(larger, rho, dimension)
	for r in numpy.linspace(0.0, rho, 41):
		assert below(r) >= -1e-13, "u({}) = {}".format(r, below(r))
		assert above(r) - below(r) >= -1e-13, "r = {}: {} > {}".format(r, below(r), above(r))
