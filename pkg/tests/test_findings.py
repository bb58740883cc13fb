import json
import math

import pytest

from polyzeta import findings


def test_bk_constant_plus_one_is_reproduced():
    f = findings.bk_constant()
    assert f["max_abs_closed_minus_integral"] < 1e-10
    assert f["oracle_reproduces_plus_one"]


def test_bk_expansion_orders():
    f = findings.bk_expansion_order()
    # the bare-log form does not converge; with mu0 inside the log the residual is fourth order
    assert abs(f["slope_bare_log"]) < 0.5
    assert f["slope_mu0_in_log"] == pytest.approx(4.0, abs=0.3)


def test_sierra_expansion_orders():
    f = findings.sierra_expansion_order()
    assert f["slope_quoted_correction"] == pytest.approx(2.0, abs=0.05)
    assert f["slope_half_correction"] == pytest.approx(4.0, abs=0.1)


def test_sierra_convention():
    f = findings.sierra_convention()
    assert not f["bare"]["levels_exact"]
    assert f["bare"]["modulus_mismatch"] > 1.0
    assert f["self-adjoint"]["levels_exact"]
    assert f["self-adjoint"]["m2_momentum"] == pytest.approx(40.0)


def test_poly_offset_decomposition():
    f = findings.poly_closed_offset()
    assert f["max_gap_error"] < 1e-9
    assert all(r["gap"] > 1.0 for r in f["rows"])


def test_poly_coefficient():
    f = findings.poly_coefficient()
    assert not f["matches_quoted"]
    assert f["derived"] == pytest.approx(((200 / (2 * math.pi)) ** 2 - 1) / 12)
    assert f["relative_error_vs_derived"] < 1e-5


def test_eigenfunction_orders():
    f = findings.eigenfunction_orders()
    assert f["slope_bk"] == pytest.approx(2.0, abs=0.05)
    assert f["slope_sierra"] == pytest.approx(2.0, abs=0.05)


def test_sierra_smooth_part():
    f = findings.sierra_smooth_part()
    assert f["oracle"] == pytest.approx(67.4982723213191108, rel=1e-10)
    assert f["difference"] < -10.0


def test_all_findings_serialisable():
    out = findings.all_findings()
    assert len(out) >= 3
    json.dumps(out)
    assert findings.all_findings() == out
