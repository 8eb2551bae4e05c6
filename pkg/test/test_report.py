import io
import logging

import numpy

import odvp.existence
import odvp.freeboundary
import odvp.ledger
import odvp.radial_model
import odvp.report

def _unit(c):
	return odvp.radial_model.constant_problem(3, 1.0, c, 5.0)

def test_json_restores_results():
	spec = _unit(0.005)
	results = [
		odvp.existence.check_qs(spec),
		odvp.ledger.check_reilly(1.0, 3),
		odvp.freeboundary.solve_b(spec),
		odvp.report.Reproduction("int_C f", 4.18879020478639, "4.18879", True),
	]
	original = odvp.report.RunReport("check", {"dimension": 3}, results, ["a warning"])
	restored = odvp.report.RunReport.from_json(original.to_json())
	assert restored == original
	assert restored.results[0].condition_id is odvp.existence.ConditionId.QS_INTEGRAL
	assert restored.results[1].verdict is odvp.ledger.Verdict.PASS
	assert restored.results[2].bracket == results[2].bracket

def test_json_is_deterministic_without_timing():
	report = odvp.report.RunReport("check", None, [odvp.existence.check_b(_unit(0.005))])
	assert report.to_json() == odvp.report.RunReport("check", None, [odvp.existence.check_b(_unit(0.005))]).to_json()
	assert "timing" not in report.to_dict()
	assert report.to_dict()["schema_version"] == 1

def test_json_rejects_other_schema():
	try:
		odvp.report.RunReport.from_dict({"schema_version": 99, "command": "check", "results": []})
		assert False, "expected ValueError"
	except ValueError:
		pass

def test_encode_numpy_scalars():
	assert odvp.report.encode(numpy.float64(0.5)) == 0.5
	assert odvp.report.encode(numpy.bool_(True)) is True
	assert odvp.report.encode(odvp.ledger.Verdict.FAIL) == "fail"

def test_render_aligns_fields():
	report = odvp.existence.make_report(odvp.existence.ConditionId.QS_INTEGRAL, 2.0, 1.0)
	text = odvp.report.render(report)
	lines = text.split("\n")
	assert lines[0] == "[ConditionReport]"
	assert lines[1] == "condition_id : QS_INTEGRAL"
	assert "margin       : 1" in lines
	assert "annotations  : -" in lines

def test_render_nested_table():
	table = odvp.freeboundary.SweepTable(rows=(
		odvp.freeboundary.SweepRow(0.1, 1.8257418583505538, 3.9, None),
		odvp.freeboundary.SweepRow(0.4, None, -0.8, "NoSolutionCertificate"),
	), modulus=None)
	text = odvp.report.render(table)
	assert "rows:\nknob  critical_radius  margin  error" in text
	assert "0.4   None             -0.8    NoSolutionCertificate" in text

def test_to_text_lists_warnings():
	report = odvp.report.RunReport("solve", None, [], ["no solution: c too large"], timing=0.25)
	text = report.to_text()
	assert text.startswith("solve report")
	assert "warning: no solution: c too large" in text
	assert text.endswith("elapsed: 0.250 s")

def test_write_csv():
	stream = io.StringIO()
	count = odvp.report.write_csv(stream, ("rho", "value", "derivative"), [
		odvp.freeboundary.FunctionalSample(1.0, 0.1, None),
		(2.0, 1.0 / 3.0, -2.5),
	])
	assert count == 2
	assert stream.getvalue() == (
		"rho,value,derivative\n"
		"1,0.10000000000000001,\n"
		"2,0.33333333333333331,-2.5\n"
	)

def test_warning_collector():
	collector = odvp.report.WarningCollector()
	root = logging.getLogger()
	root.addHandler(collector)
	try:
		logging.debug("ignored")
		logging.warning("Phi has %d roots", 2)
	finally:
		root.removeHandler(collector)
	assert collector.messages == ["Phi has 2 roots"]

def test_json_restores_zero_source_hierarchy():
	spec = odvp.radial_model.ProblemSpec(
		allow_degenerate = True,
		core_radius      = 1.0,
		dimension        = 3,
		f                = odvp.radial_model.RadialProfile.constant(0.0, 1.0),
		g                = odvp.radial_model.RadialProfile.constant(0.005, 5.0, extend_last=True),
		rho_max          = 5.0)
	hierarchy = odvp.existence.hierarchy_report(spec)
	assert hierarchy.ratio is None
	assert "B threshold is zero, no ratio" in hierarchy.annotations
	original = odvp.report.RunReport("check", None, [hierarchy])
	assert odvp.report.RunReport.from_json(original.to_json()) == original
