"""Tests for the verification orchestrator, the table and map emitters, and the CLI."""

import csv
import io
import json
import os
import sys
import time
from unittest.mock import patch

import pydot
import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import qp
from series.schemas import FamilyPayload, KernelPayload
from twopoint.baseline import solve_R_family
from twopoint.kernel import KernelBundle, build_kernel
from verify import config
from verify.checks import (
    CHECKS,
    H4_FIRST_TERMS,
    SUITE_CHECKS,
    RunParameters,
    check_bridge_final_formula,
    check_series_properties,
    min_order,
    run_suite,
    validate_parameters,
)
from verify.emit import emit_maps, emit_series
from verify.schemas import CheckResult, VerificationReport


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# ----------------------------------------------------------------------
# configuration and report models
# ----------------------------------------------------------------------
def test_int_setting_rejects_garbage(monkeypatch):
    """A non-integer value names the variable in the error."""
    monkeypatch.setenv("QP_TEST_SETTING", "many")
    with pytest.raises(ValueError, match="QP_TEST_SETTING"):
        config._int_setting("QP_TEST_SETTING", 1)


def test_int_setting_enforces_ceiling(monkeypatch):
    """Values above the hard ceiling are refused."""
    monkeypatch.setenv("QP_MAX_FACES_TRY", "9")
    with pytest.raises(ValueError):
        config._int_setting("QP_MAX_FACES_TRY", 6, 1, config.HARD_MAX_FACES)
    monkeypatch.setenv("QP_MAX_FACES_TRY", "8")
    assert config._int_setting("QP_MAX_FACES_TRY", 6, 1, config.HARD_MAX_FACES) == 8


def test_int_setting_default_when_unset(monkeypatch):
    monkeypatch.delenv("QP_UNSET_SETTING", raising=False)
    assert config._int_setting("QP_UNSET_SETTING", 7) == 7


def test_report_json_ignores_timing():
    """Wall times differ between runs; the JSON payload does not."""
    first = VerificationReport(
        suite="series",
        parameters={"order": 6},
        checks=[CheckResult(name="a", status="pass", detail="ok", elapsed_ms=12.5)],
    )
    second = first.model_copy(update={
        "checks": [CheckResult(name="a", status="pass", detail="ok", elapsed_ms=99.0)]
    })
    assert first.to_json() == second.to_json()
    payload = json.loads(first.to_json())
    assert payload["overall"] == "pass"
    assert "elapsed_ms" not in payload["checks"][0]


def test_report_overall_and_exit_code():
    """One failing check fails the report."""
    report = VerificationReport(
        suite="all",
        parameters={},
        checks=[
            CheckResult(name="a", status="pass"),
            CheckResult(name="b", status="fail", detail="boom"),
        ],
    )
    assert not report.overall
    assert report.exit_code == 1
    assert [c.name for c in report.failed()] == ["b"]
    assert "overall: fail" in report.to_table()


# ----------------------------------------------------------------------
# orchestrator
# ----------------------------------------------------------------------
def test_every_check_runs_once_in_the_full_suite():
    """The full suite lists each named check exactly once."""
    assert sorted(SUITE_CHECKS["all"]) == sorted(CHECKS)
    assert len(CHECKS) == 8
    for suite, names in SUITE_CHECKS.items():
        assert set(names) <= set(CHECKS), suite


def test_parameter_bounds():
    """Order, kmax and faces outside their ranges are usage errors."""
    with pytest.raises(ValueError):
        validate_parameters(65, 12, 5)
    with pytest.raises(ValueError):
        validate_parameters(20, 33, 5)
    with pytest.raises(ValueError):
        validate_parameters(20, 12, 0)
    with pytest.raises(ValueError):
        validate_parameters(20, 12, 6)
    validate_parameters(20, 12, 5)


def test_unknown_suite():
    """Only the four named suites exist."""
    with pytest.raises(ValueError):
        run_suite("everything")


def test_series_suite_passes_and_is_deterministic():
    """Same parameters, byte-identical JSON."""
    first = run_suite("series", order=8, kmax=6, seed=config.QP_DEFAULT_SEED, workers=2)
    second = run_suite("series", order=8, kmax=6, seed=config.QP_DEFAULT_SEED, workers=2)
    assert first.overall, first.failed()
    assert [c.name for c in first.checks] == SUITE_CHECKS["series"]
    assert first.to_json() == second.to_json()


def test_kernel_suite_passes():
    """h4 routes, kernel identities, closed forms and bridge at order 8."""
    report = run_suite("kernel", order=8, kmax=4, workers=2)
    assert report.overall, report.failed()
    assert report.exit_code == 0


def test_maps_suite_passes_at_two_faces():
    """Tallies and decompositions agree with the series at two faces."""
    report = run_suite("maps", faces=2, workers=2)
    assert report.overall, report.failed()


def test_kernel_suites_need_order_two():
    """Order 1 is a usage error for suites with kernel checks, and fine for the series suite."""
    assert min_order("kernel") == min_order("all") == 2
    assert min_order("series") == min_order("maps") == 1
    with pytest.raises(ValueError, match="2..64"):
        run_suite("kernel", order=1, kmax=4)
    with pytest.raises(ValueError):
        run_suite("all", order=1, kmax=4)
    assert run_suite("series", order=1, kmax=4, workers=2).overall


def test_kernel_suite_passes_at_smallest_order():
    report = run_suite("kernel", order=2, kmax=4, workers=2)
    assert report.overall, report.failed()


def test_bridge_covers_G_up_to_ten():
    """kmax=10 compares G_1..G_10; larger kmax stays capped at 10."""
    for kmax in (10, 12):
        detail = check_bridge_final_formula(RunParameters(order=6, kmax=kmax, faces=1, seed=0))
        assert "k <= 10 " in detail
    detail = check_bridge_final_formula(RunParameters(order=6, kmax=3, faces=1, seed=0))
    assert "k <= 3 " in detail


def test_series_properties_within_budget():
    """Two hundred samples at order 12 in under two seconds."""
    start = time.perf_counter()
    detail = check_series_properties(RunParameters(order=12, kmax=4, faces=1, seed=config.QP_DEFAULT_SEED))
    assert time.perf_counter() - start < 2.0
    assert detail.startswith("200 seeded samples")


def test_exception_in_a_check_becomes_a_failure():
    """A check that raises is reported, not propagated."""
    with patch("verify.checks.check_baseline", side_effect=RuntimeError("boom")):
        report = run_suite("series", order=6, kmax=4, workers=1)
    failed = {c.name: c.detail for c in report.failed()}
    assert list(failed) == ["baseline_consistency"]
    assert "boom" in failed["baseline_consistency"]


# ----------------------------------------------------------------------
# command line
# ----------------------------------------------------------------------
def test_cli_corrupted_coefficient_exits_one(capsys):
    """A wrong Lagrange coefficient fails the triple agreement check by name."""
    corrupted = {1: 1, 2: 1, 3: 3, 4: 11, 5: 46, 6: 210}
    with patch("verify.checks.lagrange_h4", side_effect=corrupted.__getitem__):
        code = qp.main(["verify", "--suite", "kernel", "--order", "6", "--kmax", "3", "--json"])
    assert code == 1
    payload = json.loads(capsys.readouterr().out)
    status = {c["name"]: c["status"] for c in payload["checks"]}
    assert status["h4_triple_agreement"] == "fail"
    assert payload["overall"] == "fail"


def test_cli_bounds_exit_two(capsys):
    """Out-of-range parameters are usage errors."""
    assert qp.main(["verify", "--order", "65"]) == 2
    assert qp.main(["verify", "--suite", "maps", "--faces", "9", "--extended"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_series_to_stdout(capsys):
    """Without --out the table goes to stdout."""
    assert qp.main(["series", "--target", "C", "--order", "4"]) == 0
    rows = csv_rows(capsys.readouterr().out)
    assert [r["coefficient"] for r in rows] == ["0", "1", "3", "12", "55"]


def test_cli_writes_json_report(tmp_path):
    out = tmp_path / "report.json"
    assert qp.main(["verify", "--suite", "series", "--order", "6", "--kmax", "4", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["suite"] == "series"


# ----------------------------------------------------------------------
# emitters
# ----------------------------------------------------------------------
def test_emit_h_row_six():
    """h_4 at six faces is 209."""
    rows = csv_rows(emit_series("h", 6, 2, "csv"))
    value = {(int(r["k"]), int(r["n"])): r["coefficient"] for r in rows}
    assert value[(2, 6)] == "209"
    assert [value[(2, p)] for p in range(1, 7)] == ["1", "1", "3", "11", "46", "209"]


def test_emit_G_at_one_face():
    """One face: G_1 = 3, G_2 = 1, G_3 = 0."""
    rows = csv_rows(emit_series("G", 1, 3, "csv"))
    at_one = {int(r["k"]): r["coefficient"] for r in rows if r["n"] == "1"}
    assert at_one == {1: "3", 2: "1", 3: "0"}


def test_emit_R_at_order_zero():
    """Every R_k starts with the empty slice."""
    rows = csv_rows(emit_series("R", 0, 4, "csv"))
    assert len(rows) == 4
    assert all(r["coefficient"] == "1" for r in rows)


def test_emit_json_file(tmp_path):
    """The JSON table parses back into the same family."""
    out = tmp_path / "tables" / "t.json"
    emit_series("t", 5, 4, "json", out)
    family = FamilyPayload.model_validate_json(out.read_text()).to_family()
    assert family.name == "t"
    assert family.K == 4
    assert [int(c) for c in family[2].coefficients[:4]] == [0, 1, 2, 6]


def test_emit_kernel_bundle(tmp_path):
    """The kernel target writes the whole bundle as JSON and reads back intact."""
    out = tmp_path / "kernel.json"
    emit_series("kernel", 6, 4, "json", out)
    bundle = KernelBundle.from_payload(KernelPayload.model_validate_json(out.read_text()))
    assert bundle == build_kernel(2, 6)
    assert [int(c) for c in bundle.h(2).coefficients] == [0] + list(H4_FIRST_TERMS)
    assert len(bundle.h_table) == 3


def test_emit_kernel_rejects_csv_and_order_one():
    with pytest.raises(ValueError):
        emit_series("kernel", 6, 4, "csv")
    with pytest.raises(ValueError):
        emit_series("kernel", 1, 4, "json")


def test_cli_kernel_defaults_to_json(capsys):
    assert qp.main(["series", "--target", "kernel", "--order", "4", "--kmax", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert sorted(payload) == ["C", "Y", "aux_g4", "h_table", "phi"]
    assert qp.main(["series", "--target", "kernel", "--format", "csv"]) == 2


def test_emit_rejects_bad_target_and_format():
    with pytest.raises(ValueError):
        emit_series("Q", 4, 4)
    with pytest.raises(ValueError):
        emit_series("R", 4, 4, "xml")


def test_emit_all_maps_one_face(tmp_path):
    """Six pointed rooted maps with one face, each a parseable DOT file."""
    written = emit_maps(1, "all", tmp_path)
    assert len(written) == 6
    assert len(list(tmp_path.glob("*.dot"))) == 6
    for path in written:
        assert len(pydot.graph_from_dot_data(path.read_text())) == 1
    assert (tmp_path / "tally_1.csv").exists()


def test_emit_slices_two_faces(tmp_path):
    """One file per slice with two inner faces."""
    R = solve_R_family(4, 2)
    expected = sum(R[k][2] - R[k - 1][2] for k in range(1, 4))
    written = emit_maps(2, "slices", tmp_path)
    assert len(written) == expected


def test_emit_lines_highlight(tmp_path):
    """Dividing-line exports carry red edges."""
    written = emit_maps(2, "lines", tmp_path)
    assert written
    assert all("red" in path.read_text() for path in written)


def test_emit_maps_face_cap(tmp_path):
    with pytest.raises(ValueError):
        emit_maps(6, "all", tmp_path)
