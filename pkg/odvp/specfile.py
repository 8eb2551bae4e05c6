"""Reading and writing problem descriptions as JSON.

A spec file looks like

	{
		"dimension": 3,
		"core_radius": 1.0,
		"rho_max": 5.0,
		"f": {"segments": [[0.0, 1.0, [1.0]]]},
		"g": {"segments": [[0.0, 5.0, [0.005]]], "extend_last": true},
		"tolerances": {"identity_tol": 1e-10}
	}

where each segment is [lo, hi, coefficients] with coefficients in
ascending degree.
"""
import json
import typing

from odvp import calculus, errors, radial_model, types

REQUIRED = ("dimension", "core_radius", "rho_max", "f", "g")

def load(path: typing.Text, tolerances: typing.Optional[types.Tolerances]=None) -> radial_model.ProblemSpec:
	try:
		with open(path, "r") as f:
			content = f.read()
	except OSError as e:
		raise errors.SpecParseError(e.strerror or str(e), path)
	return parse(content, tolerances=tolerances, location=path)

def parse(content: typing.Text, tolerances: typing.Optional[types.Tolerances]=None, location: typing.Text="<spec>") -> radial_model.ProblemSpec:
	"""Build a ProblemSpec from JSON text.

	Args:
		content: the JSON document
		tolerances: the base tolerances, which the file's own tolerances block refines
		location: name used in error messages
	Returns:
		A validated ProblemSpec.
	"""
	try:
		data = json.loads(content)
	except json.JSONDecodeError as e:
		raise errors.SpecParseError(e.msg, "{}:{}:{}".format(location, e.lineno, e.colno))
	if not isinstance(data, dict):
		raise errors.SpecParseError("top level must be an object", location)
	missing = [key for key in REQUIRED if key not in data]
	if missing:
		raise errors.SpecParseError("missing field(s) {}".format(", ".join(missing)), location)
	base = tolerances or types.Tolerances.from_environment()
	try:
		return radial_model.ProblemSpec(
			core_radius = _number(data["core_radius"], location, "core_radius"),
			dimension   = _integer(data["dimension"], location, "dimension"),
			f           = _profile(data["f"], location, "f"),
			g           = _profile(data["g"], location, "g"),
			rho_max     = _number(data["rho_max"], location, "rho_max"),
			tolerances  = _tolerances(data.get("tolerances", {}), base, location))
	except (errors.InvalidSpec, errors.InvalidGeometry) as e:
		raise errors.SpecParseError(str(e), location)

def dump(spec: radial_model.ProblemSpec) -> typing.Dict[typing.Text, typing.Any]:
	"""The JSON-ready form of a spec, as echoed in run reports."""
	return {
		"core_radius": spec.core_radius,
		"dimension": spec.dimension,
		"f": dump_profile(spec.f),
		"g": dump_profile(spec.g),
		"rho_max": spec.rho_max,
		"tolerances": spec.tolerances.as_dict(),
	}

def dump_profile(profile: radial_model.RadialProfile) -> typing.Dict[typing.Text, typing.Any]:
	segments = []
	for lo, hi, terms in profile.segments:
		try:
			segments.append([lo, hi, calculus.coefficients(terms)])
		except errors.NotPossible:
			segments.append([lo, hi, [list(term) for term in terms]])
	return {"segments": segments, "extend_last": profile.extend_last}

def _field(location, name):
	return "{} field {}".format(location, name)

def _number(value, location, name) -> float:
	if isinstance(value, bool) or not isinstance(value, (int, float)):
		raise errors.SpecParseError("expected a number, got {!r}".format(value), _field(location, name))
	return float(value)

def _integer(value, location, name) -> int:
	if isinstance(value, bool) or not isinstance(value, int):
		raise errors.SpecParseError("expected an integer, got {!r}".format(value), _field(location, name))
	return value

def _profile(data, location, name) -> radial_model.RadialProfile:
	if not isinstance(data, dict) or "segments" not in data:
		raise errors.SpecParseError("expected an object with segments", _field(location, name))
	segments = data["segments"]
	if not isinstance(segments, list) or not segments:
		raise errors.SpecParseError("segments must be a non-empty list", _field(location, name))
	pieces = []
	for index, segment in enumerate(segments):
		path = "{}.segments[{}]".format(name, index)
		if not isinstance(segment, list) or len(segment) != 3 or not isinstance(segment[2], list):
			raise errors.SpecParseError("expected [lo, hi, [coefficients]]", _field(location, path))
		coefficients = [_number(c, location, "{}[2][{}]".format(path, i)) for i, c in enumerate(segment[2])]
		pieces.append((_number(segment[0], location, path + "[0]"), _number(segment[1], location, path + "[1]"), coefficients))
	extend_last = data.get("extend_last", False)
	if not isinstance(extend_last, bool):
		raise errors.SpecParseError("extend_last must be true or false", _field(location, name))
	try:
		return radial_model.RadialProfile.polynomial(pieces, extend_last=extend_last)
	except errors.InvalidSpec as e:
		raise errors.SpecParseError(str(e), _field(location, name))

def _tolerances(data, base, location) -> types.Tolerances:
	if not isinstance(data, dict):
		raise errors.SpecParseError("tolerances must be an object", _field(location, "tolerances"))
	unknown = sorted(set(data) - set(types.VALID_PARAMS))
	if unknown:
		raise errors.SpecParseError("unknown tolerance(s) {}".format(", ".join(unknown)), _field(location, "tolerances"))
	values = {}
	for key, value in data.items():
		if key in ("sample_points", "scan_points"):
			values[key] = _integer(value, location, "tolerances." + key)
		else:
			values[key] = _number(value, location, "tolerances." + key)
	return base.override(**values)
