"""Critical radii of the free boundary problems and their shape functionals.

Both problems reduce to a scalar equation in the outer radius rho:

	QS: F(rho)   = int_C f - |S_rho| g(rho)
	B:  Phi(rho) = (int_{S_rho} sqrt g)^2 - (int_C f)(int_{B_rho} u_rho)

Each deficit is scanned on [R, rho_max] for sign changes and every
bracket is refined by bisection. A zero at rho = R itself is never a
critical radius.
"""
import collections
import logging
import math
import typing

import numpy
from scipy import optimize

from odvp import biharmonic, calculus, constants, errors, existence, poisson, radial_model, types

RootResult = collections.namedtuple("RootResult", (
	"critical_radius",
	"residual",
	"bracket",
	"iterations",
	"pointwise_check",
	"multiplicity_note",
	"sign_changes",
	"all_roots",
	"identity_check",
))

FunctionalSample = collections.namedtuple("FunctionalSample", ("rho", "value", "derivative"))

ScanTable = collections.namedtuple("ScanTable", ("functional", "samples", "sign_changes"))

SweepRow = collections.namedtuple("SweepRow", ("knob", "critical_radius", "margin", "error"))

SweepTable = collections.namedtuple("SweepTable", ("rows", "modulus"))

FORMULATIONS = ("deficit", "pointwise")

def qs_deficit(spec: radial_model.ProblemSpec, rho: float) -> float:
	_check_radius(spec, rho)
	return existence.total_source(spec) - calculus.surface_integral(spec.g, spec.ball(rho))

def b_deficit(spec: radial_model.ProblemSpec, rho: float) -> float:
	_check_radius(spec, rho)
	flux = spec.ball(rho).surface_area * math.sqrt(max(spec.g(rho), 0.0))
	mass = poisson.solve(spec.f, rho, spec.dimension, spec.tolerances).total_mass
	return flux ** 2 - existence.total_source(spec) * mass

def equivalent_pointwise_deficit(spec: radial_model.ProblemSpec, rho: float) -> float:
	"""psi(rho) = |u'(rho)| |v'(rho)| - g(rho).

	For rho >= R this is -Phi(rho) / |S_rho|^2, so both share their roots.
	"""
	_check_radius(spec, rho)
	return biharmonic.solve_biharmonic(spec.f, rho, spec.dimension, spec.tolerances).edge_product - spec.g(rho)

def solve_qs(spec: radial_model.ProblemSpec, accelerate: bool=False) -> RootResult:
	"""Find the radius R* > R where the flux condition closes.

	Raises:
		NoSolutionCertificate: check_qs fails, so no root is looked for
		BracketNotFound: the deficit stays positive up to rho_max
	"""
	report = existence.check_qs(spec)
	if not report.holds:
		raise errors.NoSolutionCertificate(
			"int_C f = {:.10g} does not exceed int_dC g = {:.10g}".format(report.lhs, report.rhs), report)
	result = _find_root(spec, lambda rho: qs_deficit(spec, rho), report.lhs, accelerate)
	solution = poisson.solve(spec.f, result.critical_radius, spec.dimension, spec.tolerances)
	expected = spec.g(result.critical_radius)
	mismatch = abs(solution.boundary_gradient - expected)
	if mismatch > spec.tolerances.scaled("identity_tol", expected):
		raise errors.IdentityMismatch("|u'(R*)| = {!r} but g(R*) = {!r}".format(solution.boundary_gradient, expected))
	return result._replace(pointwise_check=mismatch)

def solve_b(spec: radial_model.ProblemSpec, force: bool=False, formulation: typing.Text="deficit", accelerate: bool=False) -> RootResult:
	"""Find the radius R* > R where the plate's edge work matches g.

	With force the search runs even when check_b fails, which is how
	the regime with two critical radii is explored. The pointwise
	formulation searches psi instead of Phi.
	"""
	if formulation not in FORMULATIONS:
		raise errors.UsageError("unknown formulation {}, expected one of {}".format(formulation, ", ".join(FORMULATIONS)))
	report = existence.check_b(spec)
	if not report.holds and not force:
		raise errors.NoSolutionCertificate(
			"(int_dC sqrt g)^2 = {:.10g} is not below (int_C f)(int_C u_C) = {:.10g}".format(report.rhs, report.lhs), report)
	if formulation == "deficit":
		result = _find_root(spec, lambda rho: b_deficit(spec, rho), report.lhs, accelerate)
	else:
		result = _find_root(spec, lambda rho: equivalent_pointwise_deficit(spec, rho), spec.g(spec.core_radius), accelerate)

	R = result.critical_radius
	plate = biharmonic.solve_biharmonic(spec.f, R, spec.dimension, spec.tolerances)
	expected = spec.g(R)
	mismatch = abs(plate.edge_product - expected)
	if mismatch > spec.tolerances.scaled("identity_tol", expected):
		raise errors.IdentityMismatch("|u'||v'| = {!r} but g(R*) = {!r}".format(plate.edge_product, expected))
	identity = mass_identity_residual(spec, R)
	if identity > spec.tolerances.identity_tol:
		raise errors.IdentityMismatch("mass identity at R* = {!r} is off by {:.3g}".format(R, identity))
	return result._replace(pointwise_check=mismatch, identity_check=identity)

def mass_identity_residual(spec: radial_model.ProblemSpec, rho: float) -> float:
	"""Relative gap in int_{B_rho} u_rho = |S_rho|^2 g(rho) / int_C f.

	The two sides agree exactly at a root of Phi.
	"""
	mass = poisson.solve(spec.f, rho, spec.dimension, spec.tolerances).total_mass
	expected = spec.ball(rho).surface_area ** 2 * spec.g(rho) / existence.total_source(spec)
	return abs(mass - expected) / max(abs(expected), abs(mass), 1e-300)

def find_roots(function: typing.Callable[[float], float], lo: float, hi: float, points: int, zero_tol: float, xtol: float, accelerate: bool=False, boundary_tol: typing.Optional[float]=None) -> typing.Tuple[typing.List[typing.Tuple[float, typing.Tuple[float, float], int]], bool]:
	"""Locate every sign change of function on a uniform grid over [lo, hi].

	Returns (roots, boundary_root) where each root is (x, bracket,
	iterations) and boundary_root tells whether function(lo) is zero
	within boundary_tol, which defaults to zero_tol. The root at lo is
	never included. A value at lo above boundary_tol keeps its sign, so
	a root just past lo is still bracketed.
	"""
	grid = numpy.linspace(lo, hi, points)
	values = numpy.array([function(x) for x in grid])
	signs = numpy.where(numpy.abs(values) <= zero_tol, 0.0, numpy.sign(values))
	if boundary_tol is not None:
		signs[0] = 0.0 if abs(values[0]) <= boundary_tol else numpy.sign(values[0])
	roots = []
	for i in range(1, len(grid)):
		if signs[i] == 0 and signs[i - 1] != 0:
			roots.append((float(grid[i]), (float(grid[i]), float(grid[i])), 0))
		elif signs[i - 1] * signs[i] < 0:
			roots.append(_refine(function, grid[i - 1], grid[i], xtol, accelerate))
	logging.debug("Scan of [%s, %s] on %d points found %d sign changes", lo, hi, points, len(roots))
	return roots, bool(signs[0] == 0)

def functional_J(spec: radial_model.ProblemSpec, rho: float) -> FunctionalSample:
	"""J(rho) = int_{B_rho} g^2 - int |grad u_rho|^2."""
	if spec.g.start > 0:
		raise errors.GInteriorUndefined("g starts at {} and does not cover B_rho".format(spec.g.start))
	ball = spec.ball(rho)
	solution = poisson.solve(spec.f, rho, spec.dimension, spec.tolerances)
	squared = radial_model.multiply(spec.g, spec.g, 0.0, rho)
	value = calculus.volume_integral(squared, ball) - poisson.source_work(solution)
	derivative = ball.surface_area * (spec.g(rho) ** 2 - solution.boundary_gradient ** 2)
	return FunctionalSample(rho=rho, value=value, derivative=derivative)

def functional_F(spec: radial_model.ProblemSpec, rho: float, data_power: int=1) -> FunctionalSample:
	"""F(rho) = 1/2 int u_rho^2 - int_{B_rho} g^data_power.

	Its radial derivative is |S_rho| (|u'||v'| - g^data_power)(rho).
	"""
	if data_power not in (1, 2):
		raise errors.UsageError("data_power must be 1 or 2, got {}".format(data_power))
	if spec.g.start > 0:
		raise errors.GInteriorUndefined("g starts at {} and does not cover B_rho".format(spec.g.start))
	ball = spec.ball(rho)
	plate = biharmonic.solve_biharmonic(spec.f, rho, spec.dimension, spec.tolerances)
	weight = spec.g.restrict(0.0, rho)
	if data_power == 2:
		weight = radial_model.multiply(weight, weight, 0.0, rho)
	value = 0.5 * biharmonic.moment_energy(plate) - calculus.volume_integral(weight, ball)
	derivative = ball.surface_area * (plate.edge_product - spec.g(rho) ** data_power)
	return FunctionalSample(rho=rho, value=value, derivative=derivative)

def qs_sample(spec: radial_model.ProblemSpec, rho: float) -> FunctionalSample:
	N = spec.dimension
	w = spec.ball(1.0).unit_sphere_area
	slope = spec.g.derivative()(rho)
	derivative = -w * ((N - 1) * rho ** (N - 2) * spec.g(rho) + rho ** (N - 1) * slope)
	return FunctionalSample(rho=rho, value=qs_deficit(spec, rho), derivative=derivative)

def phi_sample(spec: radial_model.ProblemSpec, rho: float) -> FunctionalSample:
	N = spec.dimension
	ball = spec.ball(rho)
	w = ball.unit_sphere_area
	solution = poisson.solve(spec.f, rho, N, spec.tolerances)
	flux = w ** 2 * ((2 * N - 2) * rho ** (2 * N - 3) * spec.g(rho) + rho ** (2 * N - 2) * spec.g.derivative()(rho))
	# d/drho int_{B_rho} u_rho = |u'(rho)| |B_rho|
	mass = solution.boundary_gradient * ball.volume
	value = ball.surface_area ** 2 * max(spec.g(rho), 0.0) - existence.total_source(spec) * solution.total_mass
	return FunctionalSample(rho=rho, value=value, derivative=flux - existence.total_source(spec) * mass)

def psi_sample(spec: radial_model.ProblemSpec, rho: float) -> FunctionalSample:
	N = spec.dimension
	plate = biharmonic.solve_biharmonic(spec.f, rho, N, spec.tolerances)
	# Rates of |u'(rho)| and |v'(rho)| from the two Green identities.
	shear = spec.f(rho) - (N - 1) * plate.shear / rho
	slope = plate.shear * rho / N - (N - 1) * plate.slope / rho
	derivative = shear * plate.slope + plate.shear * slope - spec.g.derivative()(rho)
	return FunctionalSample(rho=rho, value=plate.edge_product - spec.g(rho), derivative=derivative)

FUNCTIONALS = collections.OrderedDict([
	("J", functional_J),
	("F", functional_F),
	("phi", phi_sample),
	("qs", qs_sample),
	("psi", psi_sample),
])

# Functionals whose critical points, rather than zeros, mark R*.
STATIONARY = ("J", "F")

def scan(spec: radial_model.ProblemSpec, functional: typing.Text, rho_from: float, rho_to: float, steps: int, skip_errors: bool=False) -> ScanTable:
	"""Sample a functional on a uniform grid and bracket its sign changes.

	For J and F the derivative is tracked, for the deficits the value.
	With skip_errors a sample that fails is kept with None in place of
	its value and derivative and a warning is logged.
	"""
	if functional not in FUNCTIONALS:
		raise errors.UsageError("unknown functional {}, expected one of {}".format(functional, ", ".join(FUNCTIONALS)))
	if steps < 2:
		raise errors.UsageError("a scan needs at least 2 steps, got {}".format(steps))
	if not spec.core_radius <= rho_from < rho_to <= spec.rho_max:
		raise errors.UsageError("scan range [{}, {}] must lie inside [{}, {}]".format(rho_from, rho_to, spec.core_radius, spec.rho_max))
	evaluate = FUNCTIONALS[functional]
	samples = []
	for rho in numpy.linspace(rho_from, rho_to, steps):
		try:
			samples.append(evaluate(spec, float(rho)))
		except errors.Error as e:
			if not skip_errors:
				raise
			logging.warning("Scan of %s failed at rho = %r: %s", functional, float(rho), e)
			samples.append(FunctionalSample(rho=float(rho), value=None, derivative=None))
	tracked = [s.derivative if functional in STATIONARY else s.value for s in samples]
	changes = tuple(
		(left.rho, right.rho)
		for left, right, a, b in zip(samples, samples[1:], tracked, tracked[1:])
		if a is not None and b is not None and (a * b < 0 or (b == 0 and a != 0)))
	return ScanTable(functional=functional, samples=tuple(samples), sign_changes=changes)

def knob_template(spec: radial_model.ProblemSpec, knob: typing.Text) -> typing.Callable[[float], radial_model.ProblemSpec]:
	"""Build a one parameter family of problems around spec.

	c replaces g by a constant, g_scale and f_scale multiply the data.
	"""
	if knob == "c":
		return lambda value: spec.override(g=radial_model.RadialProfile.constant(value, spec.rho_max, extend_last=True))
	if knob == "g_scale":
		return lambda value: spec.override(g=spec.g.scaled(value))
	if knob == "f_scale":
		return lambda value: spec.override(f=spec.f.scaled(value))
	raise errors.UsageError("unknown knob {}, expected one of c, g_scale, f_scale".format(knob))

def sweep_parameter(template: typing.Callable[[float], radial_model.ProblemSpec], values: typing.Iterable[float], problem: typing.Text="qs", force: bool=False) -> SweepTable:
	"""Solve one problem per knob value, recording failures row by row.

	The modulus is the largest |dR*| / |dknob| between neighbouring
	solved rows, a discrete view of how R* moves with the data.
	"""
	if problem not in ("qs", "b"):
		raise errors.UsageError("unknown problem {}, expected qs or b".format(problem))
	rows = []
	for value in values:
		spec = template(value)
		report = existence.check_qs(spec) if problem == "qs" else existence.check_b(spec)
		try:
			if problem == "qs":
				result = solve_qs(spec)
			else:
				result = solve_b(spec, force=force)
			rows.append(SweepRow(knob=value, critical_radius=result.critical_radius, margin=report.margin, error=None))
		except (errors.NoSolutionCertificate, errors.BracketNotFound) as e:
			logging.warning("Sweep row %r has no critical radius: %s", value, e)
			rows.append(SweepRow(knob=value, critical_radius=None, margin=report.margin, error=type(e).__name__))
	solved = [row for row in rows if row.critical_radius is not None]
	slopes = [
		abs(b.critical_radius - a.critical_radius) / abs(b.knob - a.knob)
		for a, b in zip(solved, solved[1:]) if b.knob != a.knob]
	return SweepTable(rows=tuple(rows), modulus=max(slopes) if slopes else None)

def _check_radius(spec, rho):
	if rho < spec.core_radius:
		raise errors.InvalidGeometry("rho = {} is inside the core of radius {}".format(rho, spec.core_radius))

def _refine(function, lo, hi, xtol, accelerate):
	method = optimize.brentq if accelerate else optimize.bisect
	root, info = method(function, lo, hi, xtol=xtol, full_output=True)
	if not info.converged:
		raise errors.ToleranceNotMet("root refinement on [{}, {}] did not converge".format(lo, hi), root, hi - lo)
	return float(root), (float(lo), float(hi)), info.iterations

def _find_root(spec, function, scale, accelerate):
	tolerances = spec.tolerances
	lo, hi = spec.core_radius, spec.rho_max
	zero_tol = tolerances.scaled("root_tol", scale)
	roots, boundary_root = find_roots(function, lo, hi, tolerances.scan_points, zero_tol, 1e-3 * tolerances.root_tol, accelerate,
		boundary_tol = constants.ROUNDOFF * max(1.0, abs(scale)))
	notes = ["{} sign change{} on [{}, {}]".format(len(roots), "" if len(roots) == 1 else "s", lo, hi)]
	if boundary_root:
		notes.append("deficit vanishes at rho = R, rejected since R* must exceed R")
	if len(roots) > 1:
		notes.append("smallest root returned")
	if not roots:
		at_ceiling = function(hi)
		if boundary_root:
			raise errors.BracketNotFound(
				"deficit only vanishes at rho = R on [{}, {}]; value at rho_max is {:.10g}".format(lo, hi, at_ceiling), at_ceiling)
		raise errors.BracketNotFound(
			"deficit never changes sign on [{}, {}]; value at rho_max is {:.10g}".format(lo, hi, at_ceiling), at_ceiling)
	critical, bracket, iterations = roots[0]
	residual = function(critical)
	if abs(residual) > zero_tol:
		raise errors.ToleranceNotMet("deficit at R* = {!r} is {:.3g}".format(critical, residual), critical, abs(residual))
	logging.debug("Critical radius %r after %d iterations in %s", critical, iterations, bracket)
	return RootResult(
		all_roots         = tuple(root for root, _, _ in roots),
		bracket           = bracket,
		critical_radius   = critical,
		identity_check    = None,
		iterations        = iterations,
		multiplicity_note = "; ".join(notes),
		pointwise_check   = None,
		residual          = residual,
		sign_changes      = len(roots))
