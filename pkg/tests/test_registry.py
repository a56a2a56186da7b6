from fractions import Fraction

import pytest

from mirrorkit.registry import (EXACT_KINDS, RegistryError, c6_scan, gating_failures, get_record, identity_ids,
                                numeric_spotcheck, p_minus_u, p_plus_u, p16_u, run_all, run_identity)

SERIES_SAMPLE = ["landen-3f2", "bailey-4f3", "hadamard-powers", "ded2-compatibility", "theta-3f2"]


@pytest.fixture(scope="module")
def default_run():
    return run_all()


def test_ids_sorted_and_unique():
    ids = identity_ids()
    assert ids == sorted(set(ids))
    assert len(ids) >= 50


def test_unknown_id():
    with pytest.raises(RegistryError):
        run_identity("no-such-identity")
    with pytest.raises(RegistryError):
        get_record("no-such-identity")
    with pytest.raises(RegistryError):
        run_all({"no-such-identity": 10})


def test_default_run_has_no_gating_failure(default_run):
    assert gating_failures(default_run) == []
    statuses = {r.status for r in default_run}
    assert statuses <= {"PASS", "DIAGNOSTIC", "SKIPPED"}


def test_diagnostics_always_reported_as_such(default_run):
    by_id = {r.id: r for r in default_run}
    for i in identity_ids():
        if get_record(i).diagnostic:
            assert by_id[i].status == "DIAGNOSTIC"
            assert "outcome:" in by_id[i].detail


def test_run_all_deterministic(default_run):
    again = run_all(ids=[r.id for r in default_run[:20]])
    assert [r.to_dict() for r in again] == [r.to_dict() for r in default_run[:20]]


def test_reports_carry_anchor_and_order(default_run):
    for r in default_run:
        assert r.anchor
        if r.kind in EXACT_KINDS:
            assert r.order is None
        d = r.to_dict()
        assert d["id"] == r.id and d["status"] == r.status


@pytest.mark.parametrize("id", SERIES_SAMPLE)
def test_doubled_order_stable(id):
    rec = get_record(id)
    assert run_identity(id).status == "PASS"
    assert run_identity(id, 2 * rec.default_order).status == "PASS"


def test_low_order_still_passes():
    reports = run_all({i: 8 for i in identity_ids() if get_record(i).kind not in EXACT_KINDS})
    assert gating_failures(reports) == []


def test_exact_kind_ignores_order():
    a = run_identity("x02-parametrization")
    b = run_identity("x02-parametrization", 99)
    assert a.to_dict() == b.to_dict()


def test_ode_file_entry(tmp_path):
    assert run_identity("nome-nonlinear-ode").status == "SKIPPED"
    bad = tmp_path / "bad.txt"
    bad.write_text("this is not a polynomial ((")
    assert run_identity("nome-nonlinear-ode", ode_file=str(bad)).status == "SKIPPED"


def test_spotcheck_guards():
    with pytest.raises(ValueError, match="cannot certify below target"):
        numeric_spotcheck("c6-relation", 2, precision_bits=32)
    with pytest.raises(ValueError):
        numeric_spotcheck("c6-relation", 2)
    with pytest.raises(ValueError):
        numeric_spotcheck("c6-relation", -1, continuation=True)
    with pytest.raises(RegistryError):
        numeric_spotcheck("elsewhere", 2)


def test_spotcheck_continuation():
    rep = numeric_spotcheck("c6-relation", 2, continuation=True)
    assert rep.status == "DIAGNOSTIC"
    literal, fitted = rep.checks
    assert not literal["below_threshold"]
    assert fitted["below_threshold"]


def test_no_admissible_c6_sample():
    assert c6_scan() == []
    u = Fraction(17)
    vals = [f(u) for f in (p16_u(), p_plus_u(), p_minus_u())]
    assert abs(p_plus_u()(u)) > 1 or abs(p_minus_u()(u)) > 1
    assert all(v < 1 for v in vals)
