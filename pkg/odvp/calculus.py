"""Exact integration of piecewise power-log expansions.

An expansion is a tuple of PowerTerm, each one standing for
coefficient * r**exponent * log(r)**log_power. The family is closed
under products, derivatives and antiderivatives, which is all the
radial solvers need. Every integral over a ball or a sphere in
this package goes through here.
"""
import collections
import logging
import math
import typing

from scipy import integrate

from odvp import errors

PowerTerm = collections.namedtuple("PowerTerm", ("coefficient", "exponent", "log_power"), defaults=(0,))

Terms = typing.Tuple[PowerTerm, ...]

def normalize(terms: typing.Iterable[PowerTerm]) -> Terms:
	"""Merge like terms and drop exact zeros.

	The result is ordered by (log_power, exponent) so that two
	expansions of the same function compare equal.
	"""
	merged = {}
	for term in terms:
		key = (int(term.log_power), int(term.exponent))
		merged[key] = merged.get(key, 0.0) + float(term.coefficient)
	return tuple(
		PowerTerm(coefficient, exponent, log_power)
		for (log_power, exponent), coefficient in sorted(merged.items())
		if coefficient != 0.0)

def constant(value: float) -> Terms:
	return normalize([PowerTerm(value, 0)])

def polynomial(coefficients: typing.Iterable[float]) -> Terms:
	"""Expansion of sum(c_k r**k) from coefficients in ascending degree."""
	return normalize(PowerTerm(c, k) for k, c in enumerate(coefficients))

def add(*expansions: Terms) -> Terms:
	return normalize(term for terms in expansions for term in terms)

def scale(terms: Terms, factor: float) -> Terms:
	return normalize(PowerTerm(t.coefficient * factor, t.exponent, t.log_power) for t in terms)

def shift(terms: Terms, power: int) -> Terms:
	"""Multiply by r**power."""
	return normalize(PowerTerm(t.coefficient, t.exponent + power, t.log_power) for t in terms)

def multiply(left: Terms, right: Terms) -> Terms:
	return normalize(
		PowerTerm(a.coefficient * b.coefficient, a.exponent + b.exponent, a.log_power + b.log_power)
		for a in left for b in right)

def power(terms: Terms, exponent: int) -> Terms:
	result = constant(1.0)
	for _ in range(exponent):
		result = multiply(result, terms)
	return result

def derivative(terms: Terms) -> Terms:
	"""d/dr of r^k L^j is k r^(k-1) L^j + j r^(k-1) L^(j-1) with L = log(r)."""
	parts = []
	for t in terms:
		parts.append(PowerTerm(t.coefficient * t.exponent, t.exponent - 1, t.log_power))
		if t.log_power:
			parts.append(PowerTerm(t.coefficient * t.log_power, t.exponent - 1, t.log_power - 1))
	return normalize(parts)

def antiderivative(terms: Terms) -> Terms:
	"""An antiderivative with no constant term."""
	return normalize(part for t in terms for part in _antiderivative_term(t))

def evaluate(terms: Terms, r: float) -> float:
	return math.fsum(_evaluate_term(t, r) for t in terms)

def max_log_power(terms: Terms) -> int:
	return max([t.log_power for t in terms] or [0])

def is_polynomial(terms: Terms) -> bool:
	return all(t.log_power == 0 and t.exponent >= 0 for t in terms)

def coefficients(terms: Terms) -> typing.List[float]:
	"""Dense ascending coefficients of a polynomial expansion."""
	if not is_polynomial(terms):
		raise errors.NotPossible("expansion has log or negative power terms")
	degree = max([t.exponent for t in terms] or [0])
	result = [0.0] * (degree + 1)
	for t in terms:
		result[t.exponent] = t.coefficient
	return result

def integrate_exact(terms: Terms, a: float, b: float) -> float:
	"""Integrate an expansion over [a, b] by its exact antiderivative."""
	if a > b:
		return -integrate_exact(terms, b, a)
	if a == b:
		return 0.0
	if a == 0 and any(t.exponent < 0 for t in terms):
		raise errors.SingularAtZero("negative power integrated from r = 0: {}".format(terms))
	primitive = antiderivative(terms)
	return evaluate(primitive, b) - evaluate(primitive, a)

def integrate_segments(segments, a: float, b: float) -> float:
	"""Integrate (lo, hi, terms) segments clipped to [a, b]."""
	parts = []
	for lo, hi, terms in segments:
		lo, hi = max(lo, a), min(hi, b)
		if lo < hi:
			parts.append(integrate_exact(terms, lo, hi))
	return math.fsum(parts)

def volume_integral(profile, geometry) -> float:
	"""Integral of a radial profile over the ball, w_N * int_0^rho h(r) r^(N-1) dr."""
	segments = profile.segments_on(0.0, geometry.radius)
	radial = [(lo, hi, shift(terms, geometry.dimension - 1)) for lo, hi, terms in segments]
	return geometry.unit_sphere_area * integrate_segments(radial, 0.0, geometry.radius)

def surface_integral(profile, geometry) -> float:
	"""Integral of a radial profile over the sphere, which only sees h(rho)."""
	return geometry.surface_area * profile(geometry.radius)

def integrate_adaptive(integrand: typing.Callable[[float], float], a: float, b: float, tol: float, points=None, limit: int=200) -> float:
	"""Adaptive Gauss-Kronrod quadrature with an absolute error target.

	This is the independent oracle for the exact path and the only
	path for integrands that leave the power-log family.
	"""
	if a == b:
		return 0.0
	interior = sorted(p for p in (points or ()) if a < p < b) or None
	result = integrate.quad(integrand, a, b, epsabs=tol, epsrel=0.0, limit=limit, points=interior, full_output=1)
	estimate, error_bound = result[0], result[1]
	if error_bound > tol:
		message = result[3] if len(result) > 3 else "error estimate above tolerance"
		raise errors.ToleranceNotMet(
			"quadrature on [{}, {}] reached {:.3g} > {:.3g}: {}".format(a, b, error_bound, tol, message),
			estimate,
			error_bound)
	logging.debug("Adaptive quadrature on [%s, %s] gave %r +- %.3g", a, b, estimate, error_bound)
	return estimate

def _antiderivative_term(term: PowerTerm) -> Terms:
	c, k, j = term
	if k == -1:
		return (PowerTerm(c / (j + 1), 0, j + 1),)
	# Integrate by parts: int r^k L^j = r^(k+1) L^j / (k+1) - j/(k+1) int r^k L^(j-1)
	head = PowerTerm(c / (k + 1), k + 1, j)
	if j == 0:
		return (head,)
	return (head,) + _antiderivative_term(PowerTerm(-c * j / (k + 1), k, j - 1))

def _evaluate_term(term: PowerTerm, r: float) -> float:
	if r == 0:
		if term.exponent > 0:
			return 0.0
		if term.exponent == 0 and term.log_power == 0:
			return term.coefficient
		raise errors.SingularAtZero("term {} is singular at r = 0".format(term))
	value = term.coefficient * r ** term.exponent
	if term.log_power:
		value *= math.log(r) ** term.log_power
	return value
