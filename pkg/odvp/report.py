"""Run reports as text, JSON and CSV.

JSON reports carry a schema_version and decode back into the same
result tuples they were built from.
"""
import collections
import csv
import enum
import json
import logging
import typing

import numpy

from odvp import alignment, constants, existence, freeboundary, ledger

Reproduction = collections.namedtuple("Reproduction", ("quantity", "computed", "reference", "agrees"))

KINDS = {cls.__name__: cls for cls in (
	existence.ConditionReport,
	existence.HierarchyReport,
	freeboundary.FunctionalSample,
	freeboundary.RootResult,
	freeboundary.ScanTable,
	freeboundary.SweepRow,
	freeboundary.SweepTable,
	ledger.IdentityCheck,
	Reproduction,
)}

ENUM_FIELDS = {
	"check_id": ledger.CheckId,
	"condition_id": existence.ConditionId,
	"verdict": ledger.Verdict,
}

class RunReport():
	"""What a command computed, for printing or for storing."""
	def __init__(self, command: typing.Text, spec=None, results=(), warnings=(), timing: typing.Optional[float]=None):
		self.command = command
		self.spec = spec
		self.results = tuple(results)
		self.warnings = tuple(warnings)
		self.timing = timing

	def __eq__(self, other):
		return isinstance(other, RunReport) and self.to_dict() == other.to_dict()

	def __repr__(self):
		return "RunReport({}, {} results)".format(self.command, len(self.results))

	def to_dict(self) -> typing.Dict[typing.Text, typing.Any]:
		result = {
			"command": self.command,
			"results": [encode(r) for r in self.results],
			"schema_version": constants.SCHEMA_VERSION,
			"spec": self.spec,
			"warnings": list(self.warnings),
		}
		if self.timing is not None:
			result["timing"] = self.timing
		return result

	@classmethod
	def from_dict(cls, data):
		if data.get("schema_version") != constants.SCHEMA_VERSION:
			raise ValueError("unsupported report schema {!r}".format(data.get("schema_version")))
		return cls(
			command  = data["command"],
			results  = [decode(r) for r in data["results"]],
			spec     = data.get("spec"),
			timing   = data.get("timing"),
			warnings = data.get("warnings", ()))

	def to_json(self) -> typing.Text:
		return json.dumps(self.to_dict(), indent=2, sort_keys=True)

	@classmethod
	def from_json(cls, content: typing.Text):
		return cls.from_dict(json.loads(content))

	def to_text(self) -> typing.Text:
		blocks = ["{} report".format(self.command)]
		for result in self.results:
			blocks.append(render(result))
		if self.warnings:
			blocks.append("\n".join("warning: {}".format(w) for w in self.warnings))
		if self.timing is not None:
			blocks.append("elapsed: {:.3f} s".format(self.timing))
		return "\n\n".join(blocks)

def encode(value):
	if isinstance(value, enum.Enum):
		return value.value
	if isinstance(value, numpy.generic):
		return value.item()
	if hasattr(value, "_fields"):
		result = {"kind": type(value).__name__}
		result.update({field: encode(getattr(value, field)) for field in value._fields})
		return result
	if isinstance(value, (list, tuple)):
		return [encode(v) for v in value]
	return value

def decode(value, field: typing.Optional[typing.Text]=None):
	if isinstance(value, dict) and "kind" in value:
		cls = KINDS[value["kind"]]
		return cls(**{f: decode(value[f], f) for f in cls._fields})
	if isinstance(value, list):
		return tuple(decode(v) for v in value)
	if field in ENUM_FIELDS and value is not None:
		return ENUM_FIELDS[field](value)
	return value

def render(result) -> typing.Text:
	"""Text block for one result tuple, its fields lined up on ':'."""
	title = "[{}]".format(type(result).__name__)
	lines = []
	tables = []
	for field in result._fields:
		value = getattr(result, field)
		if isinstance(value, tuple) and value and all(hasattr(v, "_fields") for v in value):
			tables.append((field, value))
		else:
			lines.append((field, format_value(value)))
	blocks = [title, alignment.on_character(lines, " : ")]
	for field, rows in tables:
		header = list(rows[0]._fields)
		body = [[format_value(getattr(row, name)) for name in header] for row in rows]
		blocks.append("{}:\n{}".format(field, alignment.columns([header] + body)))
	return "\n".join(blocks)

def format_value(value) -> typing.Text:
	if isinstance(value, enum.Enum):
		return str(value.value)
	if isinstance(value, bool) or value is None:
		return str(value)
	if isinstance(value, (float, numpy.floating)):
		return "{:.10g}".format(value)
	if isinstance(value, tuple):
		return "; ".join(format_value(v) for v in value) if value else "-"
	return str(value)

def write_csv(stream, header: typing.Sequence[typing.Text], rows: typing.Iterable[typing.Sequence]) -> int:
	"""Write rows with '.' decimals, ',' separators and LF endings.

	Floats keep 17 significant digits so they read back exactly.
	None becomes an empty cell. Returns the number of data rows.
	"""
	writer = csv.writer(stream, lineterminator="\n")
	writer.writerow(header)
	count = 0
	for row in rows:
		writer.writerow([_csv_cell(cell) for cell in row])
		count += 1
	return count

def _csv_cell(value):
	if value is None:
		return ""
	if isinstance(value, (float, numpy.floating)):
		return constants.CSV_FLOAT_FORMAT.format(value)
	return value

class WarningCollector(logging.Handler):
	"""Keeps the text of every warning logged while a command runs."""
	def __init__(self):
		super().__init__(level=logging.WARNING)
		self.messages = []

	def emit(self, record):
		self.messages.append(record.getMessage())
