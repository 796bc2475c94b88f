import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gftomega import geometry as G
from gftomega import omega as O
from gftomega.errors import PoleEncountered
from gftomega.series import TaylorSeries, partial_sum


def dense_min(kind, f, r, samples):
    z = r * np.exp(2j * np.pi * np.arange(samples) / samples)
    return np.min(G.eval_functional(kind, f, z))


@pytest.mark.parametrize("kind", ["starlike", "convex", "ctc"])
def test_identity_and_origin(kind):
    ident = TaylorSeries([1.0])
    assert G.eval_functional(kind, ident, 0.3 - 0.4j) == pytest.approx(1.0)
    assert G.eval_functional(kind, O.family_f_mu(0.3, 16), 0.0) == pytest.approx(1.0)
    assert G.min_on_circle(kind, ident, 0.9).min_value == pytest.approx(1.0)


def test_functional_examples():
    f = O.quadratic(0.5)
    assert abs(G.eval_functional("convex", f, -0.5)) < 1e-15
    for r in (0.2, 0.7):
        assert G.eval_functional("starlike", f, -r) == pytest.approx((1 - r) / (1 - r / 2), abs=1e-15)
    with pytest.raises(PoleEncountered):
        G.eval_functional("convex", O.quadratic(1.0), -0.5)


def test_min_on_circle_convex_zero_at_pi():
    res = G.min_on_circle("convex", O.quadratic(0.5), 0.5)
    assert abs(res.min_value) < 1e-12
    assert abs(res.argmin_theta - math.pi) < 1e-6


def test_min_on_circle_matches_dense_scan():
    f = O.family_f_mu(0.7, 64)
    res = G.min_on_circle("starlike", f, 0.5)
    oracle = dense_min("starlike", f, 0.5, 65536)
    assert oracle - 1e-9 <= res.min_value <= oracle + 1e-12


@pytest.mark.parametrize(
    "f,kind,want",
    [
        (O.quadratic(0.5), "convex", 0.5),
        (O.quadratic(1.0), "starlike", 0.5),
        (O.quadratic(0.6), "starlike", 1 / 1.2),
        (O.quadratic(2.0), "starlike", 0.25),
        (O.quadratic(1.0), "convex", 0.25),
    ],
)
def test_radius_examples(f, kind, want):
    res = G.radius_of_positivity(kind, f)
    assert abs(res.radius - want) < 1e-6
    assert res.method in {"sign-bisection", "analytic"}


def test_radius_scan_limit_and_analytic():
    res = G.radius_of_positivity("ctc", O.quadratic(0.1))
    assert res.method == "scan-limit" and res.radius == pytest.approx(0.999)
    # z + z^2 has f' = 0 at -1/2; the convex functional is capped there
    assert G.denominator_zero_radius("convex", O.quadratic(1.0)) == pytest.approx(0.5)


def test_radius_residual_contract():
    f = O.family_f_mu(-0.6, 64)
    res = G.partial_sum_radius("convex", f, 4)
    cfg = G.ScanConfig()
    if res.method == "sign-bisection":
        assert res.residual <= 10 * cfg.bisection_tol * max(1.0, abs(res.slope))
    inner = res.radius - 1e-4
    assert G.min_on_circle("convex", partial_sum(f, 4), inner).min_value > 0


def test_counterexample_partial_sums():
    f9 = O.family_f_mu(0.9, 256)
    assert G.partial_sum_radius("convex", f9, 3).radius >= 0.4969
    f7 = O.family_f_mu(0.7, 128)
    assert G.partial_sum_radius("ctc", f7, 3).radius >= 0.9428


def test_halving_step_does_not_grow_radius():
    f = O.family_f_mu(0.9, 256)
    a = G.partial_sum_radius("convex", f, 3)
    b = G.partial_sum_radius("convex", f, 3, G.ScanConfig(r_step=5e-4))
    assert b.radius <= a.radius + 1e-7


def test_min_continuity_in_r():
    f = O.family_f_mu(0.4, 64)
    vals = [G.min_on_circle("starlike", f, r).min_value for r in (0.5, 0.5001)]
    assert abs(vals[0] - vals[1]) <= 10 * 1e-4


def test_partial_sum_radius_rejects_small_n():
    with pytest.raises(ValueError):
        G.partial_sum_radius("ctc", O.quadratic(0.5), 1)
    with pytest.raises(ValueError):
        G.ScanConfig(theta_samples=100)


def test_cubic_bound_sign_changes():
    assert G.cubic_univalence_bound(4 / 7) == pytest.approx(0.0, abs=1e-15)
    assert G.cubic_starlike_bound(4 / 7) == pytest.approx(0.0, abs=1e-15)
    assert G.cubic_convex_bound(4 / 17) == pytest.approx(0.0, abs=1e-15)


def test_s3_bound_expression_matches_root():
    from gftomega.roots import counterexample_bound_root

    r = counterexample_bound_root("convex", 0.9).root
    assert abs(G.s3_lower_bound_expression("convex", 0.9, r)) < 1e-10


members = st.integers(0, 2**32 - 1).map(
    lambda s: O.random_member(np.random.default_rng(s), O.OMEGA_LAMBDA, 20)
)


@settings(max_examples=25, deadline=None)
@given(members, st.sampled_from([0.1, 0.3, 0.5, 0.6]))
def test_convex_ratio_bound(f, r):
    assert G.max_convex_ratio(f, r) <= r / (1 - r) + 1e-9


@settings(max_examples=25, deadline=None)
@given(members, st.sampled_from([0.1, 0.5, 0.9]))
def test_starlike_and_ctc_lower_bounds(f, r):
    assert G.min_on_circle("starlike", f, r).min_value >= 2 * (1 - r) / (2 - r) - 1e-9
    assert G.min_on_circle("ctc", f, r).min_value >= 1 - r - 1e-9
