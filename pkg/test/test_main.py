import io
import json
import os
import shutil
import tempfile

import odvp.main

INPUT_DIRECTORY = os.path.join(os.path.dirname(__file__), "input")

def _spec(name):
	return os.path.join(INPUT_DIRECTORY, name)

def _run(*argv):
	stdout = io.StringIO()
	status = odvp.main.run(list(argv), stdout=stdout)
	return status, stdout.getvalue()

class TemporaryDirectory():
	def __enter__(self):
		self.path = tempfile.mkdtemp()
		return self.path

	def __exit__(self, *args):
		shutil.rmtree(self.path)

def test_check_text():
	status, output = _run("check", "--spec", _spec("unit_c0005.json"), "--which", "qs,b")
	assert status == 0
	assert output.startswith("check report")
	assert "QS_INTEGRAL" in output
	assert "B_INTEGRAL" in output
	assert "elapsed:" in output

def test_check_all():
	status, output = _run("check", "--spec", _spec("unit_c0005.json"), "--json", "--no-timing")
	assert status == 0
	kinds = [r["kind"] for r in json.loads(output)["results"]]
	assert kinds.count("ConditionReport") == 5
	assert kinds.count("HierarchyReport") == 1

def test_check_parametrized_items():
	status, output = _run("check", "--spec", _spec("unit_c01.json"), "--which", "reduction:4,holder:3,interp:2:4,eigen", "--json", "--no-timing")
	assert status == 0
	ids = [r["condition_id"] for r in json.loads(output)["results"]]
	assert ids == ["PROPORTIONAL_REDUCTION", "HOLDER_P", "INTERPOLATION_THETA", "EIGENVALUE"]

def test_check_unknown_item():
	status, _ = _run("check", "--spec", _spec("unit_c0005.json"), "--which", "qs,bogus")
	assert status == 3

def test_json_deterministic():
	argv = ("check", "--spec", _spec("unit_c0005.json"), "--json", "--no-timing")
	first = _run(*argv)
	second = _run(*argv)
	assert first == second
	assert "timing" not in json.loads(first[1])

def test_solve_b():
	status, output = _run("solve", "--spec", _spec("unit_c0005.json"), "--which", "b", "--json", "--no-timing")
	assert status == 0
	result = json.loads(output)["results"][0]
	assert result["kind"] == "RootResult"
	assert abs(result["critical_radius"] - 1.7177159) < 1e-6

def test_solve_b_pointwise_accelerated():
	status, output = _run("solve", "--spec", _spec("unit_c0005.json"), "--which", "b", "--formulation", "pointwise", "--accelerate", "--json", "--no-timing")
	assert status == 0
	assert abs(json.loads(output)["results"][0]["critical_radius"] - 1.7177159) < 1e-6

def test_solve_qs_rho_max_override():
	status, output = _run("solve", "--spec", _spec("unit_c0005.json"), "--rho-max", "10", "--json", "--no-timing")
	assert status == 0
	assert abs(json.loads(output)["results"][0]["critical_radius"] - (200.0 / 3.0) ** 0.5) < 1e-8

def test_solve_no_solution():
	status, output = _run("solve", "--spec", _spec("unit_c01.json"), "--which", "b", "--json", "--no-timing")
	assert status == 2
	report = json.loads(output)
	assert report["results"][0]["holds"] is False
	assert any(w.startswith("no solution: ") for w in report["warnings"])

def test_solve_forced():
	status, output = _run("solve", "--spec", _spec("unit_c01.json"), "--which", "b", "--force", "--json", "--no-timing")
	assert status == 4

def test_solve_bracket_not_found():
	status, _ = _run("solve", "--spec", _spec("unit_c0005.json"), "--which", "qs")
	assert status == 4

def test_missing_spec_file():
	status, _ = _run("check", "--spec", _spec("does_not_exist.json"))
	assert status == 3

def test_bad_spec_file():
	with TemporaryDirectory() as directory:
		path = os.path.join(directory, "bad.json")
		with open(path, "w") as f:
			f.write("{\"dimension\": 3,")
		status, _ = _run("check", "--spec", path)
	assert status == 3

def test_unknown_command():
	status, _ = _run("optimize", "--spec", _spec("unit_c0005.json"))
	assert status == 3

def test_tol_overrides_spec():
	status, output = _run("check", "--spec", _spec("unit_c0005.json"), "--which", "qs", "--tol", "1e-9", "--json", "--no-timing")
	assert status == 0
	tolerances = json.loads(output)["spec"]["tolerances"]
	assert tolerances["identity_tol"] == 1e-9
	assert tolerances["root_tol"] == 1e-9
	assert tolerances["scan_points"] == 256

def test_bad_environment_tolerance():
	os.environ["ODVP_DEFAULT_TOL"] = "tight"
	try:
		status, _ = _run("check", "--spec", _spec("unit_c0005.json"))
	finally:
		del os.environ["ODVP_DEFAULT_TOL"]
	assert status == 3

def test_scan_writes_csv():
	with TemporaryDirectory() as directory:
		out = os.path.join(directory, "phi.csv")
		status, output = _run("scan", "--spec", _spec("unit_c0005.json"), "--functional", "phi", "--from", "1", "--to", "3", "--steps", "21", "--out", out, "--json", "--no-timing")
		with open(out, "r") as f:
			lines = f.read().split("\n")
	assert status == 0
	assert lines[0] == "rho,value,derivative"
	assert len(lines) == 23
	assert lines[-1] == ""
	assert lines[1].startswith("1,")
	table = json.loads(output)["results"][0]
	assert len(table["sign_changes"]) == 1

def test_sweep_values():
	with TemporaryDirectory() as directory:
		out = os.path.join(directory, "sweep.csv")
		status, _ = _run("sweep", "--spec", _spec("unit_c0005.json"), "--which", "b", "--values", "0.002,0.004,0.006", "--out", out)
		with open(out, "r") as f:
			lines = f.read().strip().split("\n")
	assert status == 0
	assert lines[0] == "knob,critical_radius,margin"
	assert len(lines) == 4

def test_sweep_range():
	with TemporaryDirectory() as directory:
		out = os.path.join(directory, "sweep.csv")
		status, output = _run("sweep", "--spec", _spec("unit_c01.json"), "--start", "0.1", "--stop", "0.4", "--step", "0.1", "--out", out, "--json", "--no-timing")
		with open(out, "r") as f:
			lines = f.read().strip().split("\n")
	assert status == 0
	assert len(lines) == 5
	assert lines[-1].startswith("0.4")
	assert lines[-1].split(",")[1] == ""
	rows = json.loads(output)["results"][0]["rows"]
	assert rows[-1]["error"] == "NoSolutionCertificate"

def test_sweep_needs_values():
	with TemporaryDirectory() as directory:
		status, _ = _run("sweep", "--spec", _spec("unit_c01.json"), "--start", "0.1", "--out", os.path.join(directory, "x.csv"))
	assert status == 3

def test_verify_default():
	status, output = _run("verify", "--spec", _spec("unit_c0005.json"), "--json", "--no-timing")
	assert status == 0
	results = json.loads(output)["results"]
	assert [r["check_id"] for r in results] == ["GREEN", "ENERGY", "ENERGY", "POHOZAEV", "REILLY"]
	assert all(r["verdict"] == "pass" for r in results)

def test_verify_all_checks():
	checks = ",".join(odvp.main.ledger.CHECKS)
	status, output = _run("verify", "--spec", _spec("unit_c0005.json"), "--checks", checks, "--json", "--no-timing")
	assert status == 0
	results = json.loads(output)["results"]
	assert len(results) == len(odvp.main.ledger.CHECKS) + 1
	assert all(r["verdict"] == "pass" for r in results)

def test_verify_printed_reilly_warns():
	status, output = _run("verify", "--spec", _spec("unit_c0005.json"), "--checks", "reilly", "--sign-convention", "printed", "--json", "--no-timing")
	assert status == 0
	report = json.loads(output)
	assert report["results"][0]["verdict"] == "fail"
	assert any("Reilly" in w for w in report["warnings"])

def test_verify_plane_skips_pohozaev():
	status, output = _run("verify", "--spec", _spec("plane.json"), "--checks", "green,pohozaev", "--json", "--no-timing")
	assert status == 0
	report = json.loads(output)
	assert len(report["results"]) == 1
	assert any("pohozaev skipped" in w for w in report["warnings"])

def test_verify_unknown_check():
	status, _ = _run("verify", "--spec", _spec("unit_c0005.json"), "--checks", "green,stokes")
	assert status == 3

def test_reproduce():
	status, output = _run("reproduce-s8", "--no-timing")
	assert status == 0
	assert "4.18879" in output
	assert "0.27925" in output
	assert "0.007407" in output
	assert "1.033" in output
	assert "1.169" in output

def test_reproduce_json():
	status, output = _run("reproduce-s8", "--json", "--no-timing")
	assert status == 0
	report = json.loads(output)
	agreements = [r["agrees"] for r in report["results"] if r["kind"] == "Reproduction"]
	assert all(a in (True, None) for a in agreements)
	assert any("0.0076" in w for w in report["warnings"])
