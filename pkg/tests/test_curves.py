import csv
import io

import numpy as np
import pytest

from ere_stability import analytic
from ere_stability.curves import (CSV_HEADER, boundaries_to_csv,
                                  convex_boundaries, curves_to_csv,
                                  find_degenerate, is_hyperbolic,
                                  make_system, region_classify, trace_curve,
                                  trace_family, verify_ordering)
from ere_stability.systems import EssentialSystem


def test_make_system_dispatch():
    assert make_system("nonconvex", 1.0, 0.1).case_tag == "nonconvex"
    assert make_system("convex", 1.0, 0.1).case_tag == "convex"
    assert make_system("lagrange", 1.0, 0.1).case_tag == "lagrange"
    with pytest.raises(ValueError):
        make_system("bogus", 1.0, 0.1)


def test_find_degenerate_golden_minus1_nonconvex():
    pts = find_degenerate("nonconvex", -1.0, 0.0, (0.0, 0.2))
    assert len(pts) == 1
    p = pts[0]
    assert p.param == pytest.approx(analytic.BETA_HAT_HALF, abs=1e-8)
    assert p.nu_hill == 2
    assert p.nu_monodromy == 2
    assert p.stabilized


def test_find_degenerate_golden_plus1_nonconvex():
    pts = find_degenerate("nonconvex", 1.0, 0.0, (0.2, 0.5))
    assert len(pts) == 1
    assert pts[0].param == pytest.approx(1.0 / 3.0, abs=1e-8)
    assert pts[0].nu_hill == 2


def test_find_degenerate_empty_bracket_and_no_root():
    with pytest.raises(ValueError):
        find_degenerate("convex", -1.0, 0.0, (0.5, 0.5))
    assert find_degenerate("convex", -1.0, 0.0, (0.5, 0.6)) == []


def test_degenerate_point_has_sign_certificate_off_axis():
    # for e > 0 the first anti-periodic curves are simple crossings
    pts = find_degenerate("nonconvex", -1.0, 0.2, (-0.2, 0.04))
    assert pts, "expected the lower -1-curve inside the bracket"
    p = min(pts, key=lambda q: abs(q.param))
    assert p.nu_hill == 1
    assert p.d_sign_change
    assert abs(p.i_below - p.i_above) == 1


def test_is_hyperbolic_split():
    assert is_hyperbolic(EssentialSystem.convex(1.0, 0.0))
    assert not is_hyperbolic(EssentialSystem.convex(0.1, 0.0))


def test_trace_curve_short_grid():
    c = trace_curve("nonconvex", -1.0, analytic.BETA_HAT_HALF,
                    e_grid=[0.0, 0.05, 0.1], label="Xi_1", branch="lower",
                    slope_hint=-analytic.SLOPE_NONCONVEX)
    assert c.truncated_reason is None
    assert len(c.samples) == 3
    params = c.params()
    assert params[0] == pytest.approx(analytic.BETA_HAT_HALF, abs=1e-8)
    assert np.all(np.diff(params) < 0.0)  # lower branch heads down


def test_convex_boundaries_e0():
    b = convex_boundaries(e_grid=[0.0])
    assert b.beta_l[0] == pytest.approx(analytic.BETA_STAR, abs=1e-7)
    assert b.beta_m[0] == pytest.approx(analytic.BETA_STAR, abs=1e-7)
    assert b.beta_r[0] == pytest.approx(analytic.BETA_DOUBLE_STAR, abs=1e-7)
    b.check()


def test_region_classify_shapes():
    cells = region_classify("convex", [0.1, 6.0], [0.0])
    assert len(cells) == 2
    verdicts = {c.param: c.verdict for c in cells}
    assert verdicts[0.1] == "strongly-stable"
    assert verdicts[6.0] == "hyperbolic"


def test_verify_ordering_flags_violation():
    fam = trace_family("nonconvex", e_grid=[0.0])
    report = verify_ordering(fam)
    assert report["ok"], report["violations"]
    # corrupt one curve and expect a violation
    fam["Xi_2"].samples[0] = type(fam["Xi_2"].samples[0])(
        e=0.0, param=5.0, nu=1, bracket=0.0)
    report_bad = verify_ordering(fam)
    assert not report_bad["ok"]


def test_csv_format():
    fam = trace_family("nonconvex", e_grid=[0.0])
    text = curves_to_csv(fam)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == CSV_HEADER
    assert all(len(r) == len(CSV_HEADER) for r in rows)
    # 15 significant digits survive a float round-trip
    for r in rows[1:]:
        assert r[0] == "nonconvex"
        float(r[3]), float(r[4])
        assert r[5] in ("1", "2")
    # deterministic: a second export is byte-identical
    assert curves_to_csv(fam) == text


def test_boundaries_csv_format():
    b = convex_boundaries(e_grid=[0.0])
    rows = list(csv.reader(io.StringIO(boundaries_to_csv(b))))
    assert rows[0] == CSV_HEADER
    labels = {r[2] for r in rows[1:]}
    assert labels == {"Gamma_l", "Gamma_m", "Gamma_r"}
    for r in rows[1:]:
        # beta_r rows are not omega-curves: empty nu/bracket, omega written 0
        if r[2] == "Gamma_r":
            assert r[1] == "0" and r[5] == "" and r[6] == ""
        else:
            assert r[1] == "-1"
