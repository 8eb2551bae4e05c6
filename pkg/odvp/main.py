"""Command line entry point."""
import argparse
import logging
import math
import sys
import time
import typing

import numpy

from odvp import constants, errors, existence, freeboundary, ledger, radial_model, report, specfile, types

CHECK_ITEMS = ("qs", "b", "reduction:LAMBDA", "holder:P", "interp:R:S", "eigen:ALPHA", "product", "hierarchy", "all")

ALL_CHECKS = ("qs", "b", "holder:2", "eigen", "product", "hierarchy")

DEFAULT_VERIFY = "green,energy,plate_energy,pohozaev,reilly"

USER_ERRORS = (errors.SpecParseError, errors.UsageError, errors.InvalidSpec, errors.InvalidGeometry)

class ArgumentParser(argparse.ArgumentParser):
	"""An argument parser that raises UsageError instead of exiting."""
	def error(self, message):
		raise errors.UsageError(message)

def run(argv: typing.Optional[typing.Sequence[typing.Text]]=None, stdout=None) -> int:
	"""Run one command and return its exit status."""
	stdout = stdout or sys.stdout
	try:
		args = build_parser().parse_args(argv)
	except errors.UsageError as e:
		sys.stderr.write("usage error: {}\n".format(e))
		return constants.EXIT_PARSE_ERROR
	logging.basicConfig(level=getattr(logging, args.log_level))
	collector = report.WarningCollector()
	root = logging.getLogger()
	root.addHandler(collector)
	started = time.perf_counter()
	try:
		result, status = args.handler(args, base_tolerances(args))
	except USER_ERRORS as e:
		sys.stderr.write("error: {}\n".format(e))
		return constants.EXIT_PARSE_ERROR
	except errors.Error as e:
		sys.stderr.write("numeric failure: {}: {}\n".format(type(e).__name__, e))
		return constants.EXIT_NUMERIC_FAILURE
	finally:
		root.removeHandler(collector)
	result.warnings = tuple(collector.messages) + result.warnings
	if not args.no_timing:
		result.timing = time.perf_counter() - started
	stdout.write(result.to_json() if args.json else result.to_text())
	stdout.write("\n")
	return status

def build_parser() -> ArgumentParser:
	common = ArgumentParser(add_help=False)
	common.add_argument("--json", action="store_true", help="Emit the report as JSON")
	common.add_argument("--no-timing", action="store_true", help="Leave elapsed time out of the report")
	common.add_argument("--log-level", default="WARNING", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
	common.add_argument("--tol", type=float, help="Identity and root tolerance, overriding everything else")

	with_spec = ArgumentParser(add_help=False, parents=[common])
	with_spec.add_argument("--spec", required=True, help="The JSON problem description")
	with_spec.add_argument("--rho-max", type=float, help="Override the search ceiling")

	parser = ArgumentParser(prog="odvp", description="Radial overdetermined free boundary problems")
	commands = parser.add_subparsers(dest="command")
	commands.required = True

	check = commands.add_parser("check", parents=[with_spec], help="Evaluate existence conditions")
	check.add_argument("--which", default="all", help="Comma separated items from {}".format(", ".join(CHECK_ITEMS)))
	check.set_defaults(handler=cmd_check)

	solve = commands.add_parser("solve", parents=[with_spec], help="Find the critical radius")
	solve.add_argument("--which", default="qs", choices=("qs", "b"))
	solve.add_argument("--force", action="store_true", help="Search even when the B condition fails")
	solve.add_argument("--formulation", default="deficit", choices=freeboundary.FORMULATIONS)
	solve.add_argument("--accelerate", action="store_true", help="Refine brackets with Brent's method")
	solve.set_defaults(handler=cmd_solve)

	scan = commands.add_parser("scan", parents=[with_spec], help="Tabulate a functional over rho")
	scan.add_argument("--functional", default="phi", choices=tuple(freeboundary.FUNCTIONALS))
	scan.add_argument("--from", dest="rho_from", type=float, help="Defaults to R")
	scan.add_argument("--to", dest="rho_to", type=float, help="Defaults to rho_max")
	scan.add_argument("--steps", type=int, default=200)
	scan.add_argument("--out", required=True, help="CSV output path")
	scan.set_defaults(handler=cmd_scan)

	sweep = commands.add_parser("sweep", parents=[with_spec], help="Track R* while a data knob moves")
	sweep.add_argument("--which", default="qs", choices=("qs", "b"))
	sweep.add_argument("--knob", default="c", choices=("c", "g_scale", "f_scale"))
	sweep.add_argument("--values", help="Comma separated knob values")
	sweep.add_argument("--start", type=float)
	sweep.add_argument("--stop", type=float)
	sweep.add_argument("--step", type=float)
	sweep.add_argument("--force", action="store_true")
	sweep.add_argument("--out", required=True, help="CSV output path")
	sweep.set_defaults(handler=cmd_sweep)

	verify = commands.add_parser("verify", parents=[with_spec], help="Check integral identities")
	verify.add_argument("--checks", default=DEFAULT_VERIFY, help="Comma separated items from {}".format(", ".join(ledger.CHECKS)))
	verify.add_argument("--rho", type=float, help="Ball radius for the identities, defaults to R")
	verify.add_argument("--depth", type=int, default=2, help="Depth of the iterated Green chain")
	verify.add_argument("--sign-convention", default="corrected", choices=ledger.SIGN_CONVENTIONS)
	verify.set_defaults(handler=cmd_verify)

	reproduce = commands.add_parser("reproduce-s8", parents=[common], help="Recompute the unit ball case study")
	reproduce.set_defaults(handler=cmd_reproduce_s8)
	return parser

def base_tolerances(args) -> types.Tolerances:
	try:
		tolerances = types.Tolerances.from_environment()
	except ValueError as e:
		raise errors.UsageError("bad {}: {}".format(constants.ENVIRONMENT_TOL, e))
	if args.tol is not None:
		tolerances = tolerances.override(identity_tol=args.tol, root_tol=args.tol)
	return tolerances

def load_spec(args, tolerances: types.Tolerances) -> radial_model.ProblemSpec:
	spec = specfile.load(args.spec, tolerances)
	if args.tol is not None:
		spec = spec.override(tolerances=spec.tolerances.override(identity_tol=args.tol, root_tol=args.tol))
	if args.rho_max is not None:
		spec = spec.override(rho_max=args.rho_max)
	return spec

def cmd_check(args, tolerances):
	spec = load_spec(args, tolerances)
	items = []
	for item in args.which.split(","):
		items.extend(ALL_CHECKS if item == "all" else [item])
	results = []
	for item in items:
		try:
			results.append(check_item(spec, item))
		except errors.UsageError:
			raise
		except errors.Error as e:
			logging.warning("%s: %s: %s", item, type(e).__name__, e)
	return report.RunReport("check", specfile.dump(spec), results), constants.EXIT_OK

def check_item(spec: radial_model.ProblemSpec, item: typing.Text):
	name, *params = item.split(":")
	values = [_parse_float(p, item) for p in params]
	if name == "qs" and not values:
		return existence.check_qs(spec)
	if name == "b" and not values:
		return existence.check_b(spec)
	if name == "reduction" and len(values) == 1:
		return existence.check_proportional_reduction(spec, values[0])
	if name == "holder" and len(values) <= 1:
		return existence.check_holder(spec, values[0] if values else 2.0)
	if name == "interp" and len(values) == 2:
		return existence.check_interpolation(spec, *values)
	if name == "eigen" and len(values) <= 1:
		alpha = values[0] if values else 1.0 / existence.first_dirichlet_eigenvalue(spec.dimension, spec.core_radius)
		return existence.check_eigenvalue(spec, alpha)
	if name == "product" and not values:
		return existence.check_product_root(spec)
	if name == "hierarchy" and not values:
		return existence.hierarchy_report(spec)
	raise errors.UsageError("unknown check {}, expected one of {}".format(item, ", ".join(CHECK_ITEMS)))

def cmd_solve(args, tolerances):
	spec = load_spec(args, tolerances)
	try:
		if args.which == "qs":
			result = freeboundary.solve_qs(spec, accelerate=args.accelerate)
		else:
			result = freeboundary.solve_b(spec, force=args.force, formulation=args.formulation, accelerate=args.accelerate)
	except errors.NoSolutionCertificate as e:
		return report.RunReport("solve", specfile.dump(spec), [e.report], ["no solution: {}".format(e)]), constants.EXIT_NO_SOLUTION
	return report.RunReport("solve", specfile.dump(spec), [result]), constants.EXIT_OK

def cmd_scan(args, tolerances):
	spec = load_spec(args, tolerances)
	rho_from = spec.core_radius if args.rho_from is None else args.rho_from
	rho_to = spec.rho_max if args.rho_to is None else args.rho_to
	table = freeboundary.scan(spec, args.functional, rho_from, rho_to, args.steps, skip_errors=True)
	with open(args.out, "w", newline="") as f:
		report.write_csv(f, ("rho", "value", "derivative"), table.samples)
	return report.RunReport("scan", specfile.dump(spec), [table._replace(samples=())]), constants.EXIT_OK

def cmd_sweep(args, tolerances):
	spec = load_spec(args, tolerances)
	table = freeboundary.sweep_parameter(freeboundary.knob_template(spec, args.knob), sweep_values(args), args.which, force=args.force)
	with open(args.out, "w", newline="") as f:
		report.write_csv(f, ("knob", "critical_radius", "margin"), [row[:3] for row in table.rows])
	return report.RunReport("sweep", specfile.dump(spec), [table]), constants.EXIT_OK

def sweep_values(args) -> typing.List[float]:
	if args.values is not None:
		return [_parse_float(v, "--values") for v in args.values.split(",") if v.strip()]
	if None in (args.start, args.stop, args.step) or not args.step > 0:
		raise errors.UsageError("give --values or all of --start, --stop and a positive --step")
	count = int(math.floor((args.stop - args.start) / args.step + 1e-9)) + 1
	return [float(v) for v in args.start + args.step * numpy.arange(max(count, 0))]

def cmd_verify(args, tolerances):
	spec = load_spec(args, tolerances)
	rho = spec.core_radius if args.rho is None else args.rho
	names = [name.strip() for name in args.checks.split(",") if name.strip()]
	unknown = [name for name in names if name not in ledger.CHECKS]
	if unknown:
		raise errors.UsageError("unknown check(s) {}, expected one of {}".format(", ".join(unknown), ", ".join(ledger.CHECKS)))
	results = []
	for name in names:
		try:
			results.extend(verify_item(spec, name, rho, args))
		except errors.UnsupportedDimension as e:
			logging.warning("%s skipped: %s", name, e)
	return report.RunReport("verify", specfile.dump(spec), results), constants.EXIT_OK

def verify_item(spec: radial_model.ProblemSpec, name: typing.Text, rho: float, args) -> typing.List[ledger.IdentityCheck]:
	R = spec.core_radius
	if name == "green":
		return [ledger.check_green(spec, rho)]
	if name == "energy":
		return [ledger.check_energy(spec, rho)]
	if name == "plate_energy":
		return [ledger.check_plate_energy(spec, rho)]
	if name == "pohozaev":
		return [ledger.check_pohozaev(rho, spec.dimension, spec.tolerances)]
	if name == "reilly":
		return [ledger.check_reilly(rho, spec.dimension, args.sign_convention, spec.tolerances)]
	if name == "cauchy_product":
		return [ledger.check_cauchy_product(spec.f, radial_model.RadialProfile.constant(1.0, R), R, spec.dimension, spec.tolerances)]
	if name == "duality":
		return list(ledger.check_duality(spec))
	if name == "iterated_green":
		return [ledger.check_iterated_green(spec.f, R, spec.dimension, args.depth, spec.tolerances)]
	if name == "equality_case":
		return [ledger.check_equality_case(spec)]
	values = [v for v in spec.f.sample(0.0, R, spec.tolerances.sample_points) if v > 0]
	return [ledger.check_means_order(values, spec.tolerances)]

def cmd_reproduce_s8(args, tolerances):
	"""N = 3, R = 1, f = 1 on the core and constant g.

	Every figure with a reference value must agree to the digits the
	reference shows, or the command fails.
	"""
	spec = radial_model.constant_problem(3, 1.0, 0.005, 5.0, tolerances)
	hierarchy = existence.hierarchy_report(spec)
	rows = [
		reproduction("int_C f", existence.total_source(spec), "4.18879"),
		reproduction("int_C u_C", existence.core_solution(spec).total_mass, "0.27925"),
		reproduction("B threshold on c", hierarchy.c_b, "0.007407"),
		reproduction("QS threshold on c", hierarchy.c_qs, "0.333"),
		report.Reproduction("threshold ratio", hierarchy.ratio, "45", abs(hierarchy.ratio - 45.0) < 45.0 * 1e-12),
	]
	plate = freeboundary.solve_b(spec)
	R = plate.critical_radius
	rows.append(reproduction("R*_B for c = 0.005", R, "{:.6f}".format(math.sqrt(_plate_root_square(0.005)))))
	rows.append(report.Reproduction("mass identity residual at R*_B", plate.identity_check, None, plate.identity_check < 1e-8))

	flux = freeboundary.solve_qs(spec.override(g=radial_model.RadialProfile.constant(0.1, spec.rho_max, extend_last=True)))
	rows.append(reproduction("R*_QS for c = 0.1", flux.critical_radius, "{:.8f}".format(math.sqrt(10.0 / 3.0))))

	narrow = spec.override(g=radial_model.RadialProfile.constant(0.0076, spec.rho_max, extend_last=True))
	forced = freeboundary.solve_b(narrow, force=True)
	logging.warning(
		"B condition fails for c = 0.0076 (margin %.6g) yet Phi has %d roots at %s; the condition is sufficient, not necessary",
		existence.check_b(narrow).margin, forced.sign_changes, ", ".join("{:.6f}".format(r) for r in forced.all_roots))
	for index, root in enumerate(forced.all_roots):
		rows.append(report.Reproduction("root {} of Phi for c = 0.0076".format(index + 1), root, None, None))

	ceiling = freeboundary.b_deficit(spec, spec.rho_max)
	if not ceiling > 0:
		raise errors.IdentityMismatch("Phi(rho_max) = {!r} is not positive".format(ceiling))
	logging.warning("int_{B_rho} u_rho grows like rho^2 int_C f / (2N) in dimension 3; only Phi(rho_max) > 0 is checked, not a rho^4 rate")

	failed = [row for row in rows if row.agrees is False]
	if failed:
		raise errors.IdentityMismatch("reproduction mismatch: {}".format(
			", ".join("{} = {!r} vs {}".format(row.quantity, row.computed, row.reference) for row in failed)))
	return report.RunReport("reproduce-s8", specfile.dump(spec), rows + [hierarchy, plate, flux, forced]), constants.EXIT_OK

def reproduction(quantity: typing.Text, computed: float, reference: typing.Text) -> report.Reproduction:
	"""Compare computed with reference rounded to the decimals reference shows."""
	decimals = len(reference.partition(".")[2])
	return report.Reproduction(
		agrees    = round(computed, decimals) == round(float(reference), decimals),
		computed  = computed,
		quantity  = quantity,
		reference = reference)

def _plate_root_square(c: float) -> float:
	# Phi = 16 pi^2 (c x^2 - x / 54 + 1 / 90) with x = rho^2, larger root.
	return (1.0 / 54.0 + math.sqrt(1.0 / 54.0 ** 2 - 4.0 * c / 90.0)) / (2.0 * c)

def _parse_float(text: typing.Text, where: typing.Text) -> float:
	try:
		return float(text)
	except ValueError:
		raise errors.UsageError("{} is not a number in {}".format(text, where))
