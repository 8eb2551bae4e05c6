import math

import numpy

import odvp.calculus
import odvp.errors
import odvp.radial_model
import odvp.types

from odvp.calculus import PowerTerm

SEED = 20240611

def test_integrate_monomial():
	assert odvp.calculus.integrate_exact((PowerTerm(1.0, 2),), 0.0, 1.0) == 1.0 / 3.0

def test_integrate_reciprocal_is_log():
	result = odvp.calculus.integrate_exact((PowerTerm(1.0, -1),), 1.0, math.e)
	assert abs(result - 1.0) < 1e-15

def test_integrate_log():
	result = odvp.calculus.integrate_exact((PowerTerm(1.0, 0, 1),), 1.0, math.e)
	assert abs(result - 1.0) < 1e-15

def test_integrate_log_over_r():
	result = odvp.calculus.integrate_exact((PowerTerm(1.0, -1, 1),), 1.0, 2.0)
	assert abs(result - math.log(2.0) ** 2 / 2.0) < 1e-15

def test_integrate_reversed_interval():
	terms = odvp.calculus.polynomial([1.0, 2.0])
	assert odvp.calculus.integrate_exact(terms, 1.0, 0.0) == -odvp.calculus.integrate_exact(terms, 0.0, 1.0)

def test_integrate_negative_power_from_zero():
	try:
		odvp.calculus.integrate_exact((PowerTerm(1.0, -1),), 0.0, 1.0)
		assert False, "expected SingularAtZero"
	except odvp.errors.SingularAtZero:
		pass

def test_evaluate_log_at_zero():
	assert odvp.calculus.evaluate((PowerTerm(2.0, 2, 1),), 0.0) == 0.0
	try:
		odvp.calculus.evaluate((PowerTerm(2.0, 0, 1),), 0.0)
		assert False, "expected SingularAtZero"
	except odvp.errors.SingularAtZero:
		pass

def test_normalize_merges_and_drops_zeros():
	terms = odvp.calculus.normalize([PowerTerm(1.0, 2), PowerTerm(-1.0, 2), PowerTerm(3.0, 1), PowerTerm(1.0, 1)])
	assert terms == (PowerTerm(4.0, 1, 0),)

def test_derivative_of_log_term():
	# d/dr r^2 log r = 2 r log r + r
	result = odvp.calculus.derivative((PowerTerm(1.0, 2, 1),))
	assert result == odvp.calculus.normalize([PowerTerm(2.0, 1, 1), PowerTerm(1.0, 1, 0)])

def test_antiderivative_inverts_derivative():
	terms = odvp.calculus.normalize([PowerTerm(1.5, 3, 2), PowerTerm(-2.0, -2, 1), PowerTerm(0.5, -1, 0), PowerTerm(4.0, 0)])
	result = odvp.calculus.derivative(odvp.calculus.antiderivative(terms))
	for r in (0.5, 1.5, 3.0):
		assert abs(odvp.calculus.evaluate(result, r) - odvp.calculus.evaluate(terms, r)) < 1e-12

def test_coefficients_of_polynomial():
	assert odvp.calculus.coefficients(odvp.calculus.polynomial([1.0, 0.0, -1.0])) == [1.0, 0.0, -1.0]
	try:
		odvp.calculus.coefficients((PowerTerm(1.0, -1),))
		assert False, "expected NotPossible"
	except odvp.errors.NotPossible:
		pass

def test_adaptive_square():
	result = odvp.calculus.integrate_adaptive(lambda r: r * r, 0.0, 1.0, 1e-12)
	assert abs(result - 1.0 / 3.0) < 1e-12

def test_adaptive_matches_exact_torsion_moment():
	terms = odvp.calculus.polynomial([0.0, 0.0, 1.0 / 6.0, 0.0, -1.0 / 6.0])
	exact = odvp.calculus.integrate_exact(terms, 0.0, 1.0)
	adaptive = odvp.calculus.integrate_adaptive(lambda r: r * r * (1 - r * r) / 6.0, 0.0, 1.0, 1e-12)
	assert abs(exact - 1.0 / 45.0) < 1e-15
	assert abs(adaptive - exact) < 1e-12

def test_adaptive_gives_up():
	try:
		odvp.calculus.integrate_adaptive(lambda r: 1.0 / math.sqrt(abs(r - 0.3)) if r != 0.3 else 0.0, 0.0, 1.0, 1e-300, limit=5)
		assert False, "expected ToleranceNotMet"
	except odvp.errors.ToleranceNotMet as e:
		assert e.error_bound > 1e-300

def test_volume_and_surface_of_unit_ball():
	geometry = odvp.radial_model.BallGeometry(3, 1.0)
	one = odvp.radial_model.RadialProfile.constant(1.0, 1.0)
	assert abs(odvp.calculus.volume_integral(one, geometry) - 4.0 * math.pi / 3.0) < 1e-14

def test_surface_integral_constant():
	geometry = odvp.radial_model.BallGeometry(3, 1.0)
	c = 0.005
	g = odvp.radial_model.RadialProfile.constant(c, 5.0, extend_last=True)
	assert abs(odvp.calculus.surface_integral(g, geometry) - 4.0 * math.pi * c) < 1e-15
	root = odvp.radial_model.RadialProfile.constant(math.sqrt(c), 5.0, extend_last=True)
	assert abs(odvp.calculus.surface_integral(root, geometry) - 4.0 * math.pi * math.sqrt(c)) < 1e-14

def test_surface_integral_vanishing():
	geometry = odvp.radial_model.BallGeometry(2, 1.0)
	h = odvp.radial_model.RadialProfile.polynomial([(0.0, 2.0, [1.0, -1.0])])
	assert odvp.calculus.surface_integral(h, geometry) == 0.0

def test_generate_exact_against_adaptive():
	rng = numpy.random.default_rng(SEED)
	for _ in range(100):
		coefficients = list(rng.uniform(-1.0, 1.0, size=rng.integers(1, 9)))
		a, b = sorted(rng.uniform(0.0, 2.0, size=2))
		yield (check_exact_against_adaptive, coefficients, a, b)

def check_exact_against_adaptive(coefficients, a, b):
	terms = odvp.calculus.polynomial(coefficients)
	scale = sum(abs(c) * max(abs(a), abs(b)) ** (k + 1) for k, c in enumerate(coefficients))
	tol = odvp.types.DEFAULT.scaled("quad_tol", scale)
	exact = odvp.calculus.integrate_exact(terms, a, b)
	adaptive = odvp.calculus.integrate_adaptive(lambda r: numpy.polynomial.polynomial.polyval(r, coefficients), a, b, tol)
	assert abs(exact - adaptive) < 2 * tol, "{} vs {}".format(exact, adaptive)

def test_generate_additivity():
	rng = numpy.random.default_rng(SEED + 1)
	for _ in range(20):
		coefficients = list(rng.uniform(-1.0, 1.0, size=5))
		a, b, c = sorted(rng.uniform(0.0, 3.0, size=3))
		yield (check_additivity, coefficients, a, b, c)

def check_additivity(coefficients, a, b, c):
	terms = odvp.calculus.polynomial(coefficients)
	whole = odvp.calculus.integrate_exact(terms, a, c)
	parts = odvp.calculus.integrate_exact(terms, a, b) + odvp.calculus.integrate_exact(terms, b, c)
	assert abs(whole - parts) < 1e-13 * max(1.0, abs(whole))

def test_generate_nonnegative():
	rng = numpy.random.default_rng(SEED + 2)
	for _ in range(20):
		coefficients = list(rng.uniform(0.0, 1.0, size=4))
		a, b = sorted(rng.uniform(0.0, 2.0, size=2))
		yield (check_nonnegative, coefficients, a, b)

def check_nonnegative(coefficients, a, b):
	assert odvp.calculus.integrate_exact(odvp.calculus.polynomial(coefficients), a, b) >= 0.0
