import math

import pytest

from nuentangle.fock.verify import (
    Check,
    VerificationReport,
    check_helicity_independence,
    check_qft_point,
    check_qm_point,
    random_grid,
    run_verification,
)


def test_small_run_passes():
    report = run_verification(n_points=3, seed=7)
    assert report.passed, report.to_text()
    assert report.n_points == 3
    names = [c.name for c in report.checks]
    assert len(names) == len(set(names))
    assert "qft.four_point_identity" in names and "qm.su2_closure" in names
    assert report.max_residual < 1e-10


def test_grid_is_deterministic():
    a, b = random_grid(5, seed=3), random_grid(5, seed=3)
    assert all((a[k] == b[k]).all() for k in a)
    assert (random_grid(5, seed=4)["t"] != a["t"]).any()


def test_point_checks_at_edges():
    # no mixing, equal masses and zero momentum are all legal corners
    for theta in (0.0, math.pi / 2):
        assert all(c.passed for c in check_qm_point(theta, 1.0, 1.0, 3.0))
        assert all(c.passed for c in check_qft_point(theta, 1.0, 1.0, 0.0, 3.0))
    assert check_helicity_independence(0.3, 0.5, 2.0, 1.0, 4.0).passed


def test_check_and_report_failures():
    bad = Check("x", 1e-3, 1e-10)
    nan = Check("y", math.nan, 1e-10)
    good = Check("z", 0.0, 1e-10)
    assert not bad.passed and not nan.passed and good.passed
    rep = VerificationReport([good, bad], n_points=1)
    assert not rep.passed
    assert rep.failures == [bad]
    assert "FAIL" in rep.to_text() and "1 check(s) failed" in rep.to_text()
    assert rep.rows()[1] == {"check": "x", "residual": 1e-3, "tolerance": 1e-10, "passed": False}


def test_rejects_empty_grid():
    with pytest.raises(ValueError):
        run_verification(0)
