import cmath

import pytest

import invariety


def test_gamma_3():
    series = invariety.gamma_series(3)
    assert len(series) == 1
    assert series[0]["period"] == 3
    assert series[0]["gamma"] == "a*f - b*e - 3*c^2 + c*d"


def test_periodic_points_period_3():
    pts = invariety.periodic_points(0.6 + 0.1j, 2.1, 3)
    assert len(pts) == invariety.expected_count(3) == 6
    for p in pts:
        assert p["period"] == 3
        assert p["residual"] < 1e-8


def test_fossil_scan_shrinks_with_delta():
    cells = invariety.transition_scan(0.7, 4, [1e-2, 1e-3])
    assert [c["count"] for c in cells] == [12, 12]
    assert cells[1]["max_dist"] < cells[0]["max_dist"]


def test_julia_scan_at_zero_epsilon():
    report = invariety.julia_scan(0.6, [1e-2, 0.0], depth=8, samples=50)
    assert report["rows"][1]["max_dist"] == 0.0
    assert all(r["max_dist"] <= r["bound"] for r in report["rows"])


def test_orbit_conserves_lv_invariants():
    states = invariety.orbit("lv3", [], [0.3 + 0.1j, 0.5, 0.7 - 0.2j], 50)
    h0 = invariety.invariants("lv3", [], states[0])
    h50 = invariety.invariants("lv3", [], states[-1])
    assert all(abs(a - b) < 1e-10 * (1 + abs(a)) for a, b in zip(h0, h50))


def test_varieties():
    r = invariety.verify_variety_2d(3, 0.7 - 0.2j, k=1, samples=20)
    assert r["passes"] == 20
    lv = invariety.verify_variety_lv(3, samples=10)
    assert lv["passes"] == 10


def test_errors_are_raised():
    with pytest.raises(invariety.UsageError):
        invariety.periodic_points(0.6, 2.1, 0)
    with pytest.raises(invariety.InvarietyError):
        invariety.orbit("lv3", [], [0.5, 0.3, 2.0], 3)
    assert cmath.isclose(invariety.fossil_points(0.5, 3)[0], -2.0)
