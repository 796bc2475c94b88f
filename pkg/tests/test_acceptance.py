"""One test per acceptance criterion, at the stated tolerances."""

import math
import time
from fractions import Fraction

import numpy as np

from gftomega import bounds as B
from gftomega import geometry as G
from gftomega import omega as O
from gftomega import roots as R
from gftomega.series import (
    RawSeries,
    convolve,
    derivative,
    multiply,
    partial_sum,
    reciprocal_series,
)

HALF = O.OMEGA_LAMBDA


def test_01_named_roots(criterion):
    expected = {
        "convexity_2_1": (0.3181, 5e-4),
        "starlike_2_2": (0.4899, 5e-4),
        "ctc_2_5": (0.5471, 5e-4),
        "aux_9r2_8r_4": (0.3568, 5e-4),
        "aux_3r2_4r_4": (2 / 3, 1e-10),
        "tail_dominance_f": (1 - math.exp(-2), 1e-10),
    }
    t0 = time.perf_counter()
    results = {name: R.named_radius(name) for name in expected}
    elapsed = time.perf_counter() - t0
    ok = elapsed < 0.1
    for name, (want, tol) in expected.items():
        res = results[name]
        ok &= abs(res.root - want) <= tol and res.residual < 1e-10
    roots = ", ".join(f"{n}={r.root:.6f}" for n, r in results.items())
    criterion(1, ok, f"{roots}; {elapsed * 1e3:.1f} ms")


def test_02_counterexample_roots(criterion):
    convex = R.counterexample_bound_root("convex", 0.9).root
    star = R.counterexample_bound_root("starlike", 0.7).root
    ctc = R.counterexample_bound_root("ctc", 0.7).root
    ok = abs(convex - 0.4969) <= 5e-4 and abs(star - 0.9428) <= 5e-4 and abs(ctc - 0.9428) <= 5e-4
    criterion(2, ok, f"convex(0.9)={convex:.6f} starlike(0.7)={star:.6f} ctc(0.7)={ctc:.6f}")


def test_03_membership(criterion):
    # degree 128 keeps the truncation error of f_mu, |mu| <= 0.75, below 1e-9
    defects = [O.boundary_defect(O.family_f_mu(mu, 128)) for mu in np.linspace(-1, 1, 9)]
    ok = max(defects) <= 0.5 + 1e-9
    cubic = [abs(O.boundary_defect(O.cubic_example(lam)) - lam) for lam in (0.25, 0.5, 1.0)]
    ok &= max(cubic) <= 1e-9
    rejected = not O.is_member(O.quadratic(1.0), HALF).member
    ok &= rejected
    criterion(3, ok, f"max f_mu defect={max(defects):.12f}; cubic |defect-lam|<={max(cubic):.1e}; "
                     f"z+z^2 rejected={rejected}")


def test_04_coefficient_growth_distortion(criterion):
    rng = np.random.default_rng(4)
    worst_coeff = worst_growth = math.inf
    for _ in range(500):
        f = O.random_member(rng, HALF)
        worst_coeff = min(worst_coeff, min(b.slack for b in O.coefficient_bounds_check(f, HALF)))
        worst_growth = min(worst_growth, min(b.slack for b in O.growth_distortion_sweep(f, HALF, (0.3, 0.6, 0.9))))
    ok = worst_coeff >= -1e-12 and worst_growth >= -1e-9
    exact = all(abs(O.extremal_k(k, HALF).coeff(k)) == Fraction(1, 2 * (k - 1)) for k in range(2, 12))
    ok &= exact
    f = O.quadratic(Fraction(1, 2))
    eq_err = 0.0
    for r in (0.3, 0.6, 0.9):
        eq_err = max(eq_err, abs(abs(f(r)) - (r + r * r / 2)), abs(abs(derivative(f)(r)) - (1 + r)))
        reps = O.growth_distortion_check(f, HALF, r)
        eq_err = max(eq_err, abs(reps[1].slack), abs(reps[3].slack))
    ok &= eq_err <= 1e-9
    criterion(4, ok, f"coeff slack>={worst_coeff:.2e}, growth slack>={worst_growth:.2e}, "
                     f"extremal exact={exact}, equality err={eq_err:.1e}")


def test_05_geometric_radii(criterion):
    errs = [abs(G.radius_of_positivity("convex", O.quadratic(0.5)).radius - 0.5)]
    for lam in (0.6, 1.0, 2.0):
        errs.append(abs(G.radius_of_positivity("starlike", O.quadratic(lam)).radius - 1 / (2 * lam)))
    errs.append(abs(G.radius_of_positivity("convex", O.quadratic(1.0)).radius - 0.25))
    criterion(5, max(errs) <= 1e-6, f"max radius error={max(errs):.2e}")


def test_06_partial_sum_radii(criterion):
    bounds = {
        "convex": R.named_radius("convexity_2_1").root,
        "starlike": R.named_radius("starlike_2_2").root,
        "ctc": R.named_radius("ctc_2_5").root,
    }
    rng = np.random.default_rng(6)
    worst = {k: math.inf for k in bounds}
    for _ in range(50):
        f = O.random_member(rng, HALF)
        for n in (2, 3, 5, 8):
            for kind in bounds:
                worst[kind] = min(worst[kind], G.partial_sum_radius(kind, f, n).radius)
    ok = all(worst[k] >= bounds[k] - 1e-4 for k in bounds)
    criterion(6, ok, ", ".join(f"min {k}={worst[k]:.4f} (>= {bounds[k]:.4f})" for k in bounds))


def test_07_tail_domination(criterion):
    rng = np.random.default_rng(7)
    worst, count = math.inf, 0
    for _ in range(200):
        f = O.random_member(rng, HALF)
        reps = B.tail_domination_sweep(f, range(2, 11), (0.1, 0.3, 0.5, 0.7, 0.8))
        worst = min(worst, min(b.slack for b in reps))
        count += len(reps)
    criterion(7, worst >= -1e-9, f"{count} checks, worst slack={worst:.3e}")


def test_08_thm33_constants(criterion):
    k = B.reconstructed_constant()
    c11, c12 = B.c_n(11), B.c_n(12)
    target = math.sin(math.radians(56.84))
    n = B.minimal_n()
    ok = abs(k - 61.735) <= 0.01 and c11 > 1 and c12 < target and n == 12
    criterion(8, ok, f"constant={k:.4f}, C_11={c11:.4f}, C_12={c12:.4f} (< {target:.4f}), minimal n={n}")


def test_09_ratio_gap(criterion):
    rng = np.random.default_rng(9)
    worst = math.inf
    for _ in range(100):
        f = O.random_member(rng, HALF)
        reps = B.ratio_gap_sweep(f, range(2, 11), (0.1, 0.2, 0.3, 0.4, 0.5), mode="exact-harmonic")
        worst = min(worst, min(b.slack for b in reps))
    ratio = min(B.a_n(n, r, "paper") / B.a_n(n, r, "exact-harmonic")
                for n in range(5, 101) for r in (0.1, 0.3, 0.5))
    ok = worst >= -1e-9 and ratio >= 0.98
    criterion(9, ok, f"exact-harmonic worst slack={worst:.3e}; paper/exact factor >= {ratio:.4f} for n >= 5")


def test_10_figure1(criterion):
    rows = B.figure1_data(2, 40)
    radius = dict(rows)
    values = [r for _, r in rows]
    monotone = all(a >= b for a, b in zip(values, values[1:]))
    ctc = R.named_radius("ctc_2_5").root
    start = B.plateau_start(rows)
    ok = (radius[2] == 1.0 and abs(radius[3] - 0.6667) <= 1e-4 and monotone
          and abs(radius[20] - ctc) < 1e-4 and start is not None and start <= 14)
    criterion(10, ok, f"radius(2)={radius[2]}, radius(3)={radius[3]:.6f}, radius(20)={radius[20]:.6f}, "
                      f"plateau from n={start}")


def test_11_convolution(criterion):
    rng = np.random.default_rng(11)
    worst = {}
    for lam in (0.5, 1.0):
        margin = math.inf
        for _ in range(100):
            f, g = O.random_member(rng, lam), O.random_member(rng, lam)
            O.require_member(f, lam)
            O.require_member(g, lam)
            margin = min(margin, O.is_member(convolve(f, g), lam).margin)
        worst[lam] = margin
    ok = all(m >= -1e-9 for m in worst.values())
    witness = True
    for lam in (Fraction(1, 2), Fraction(1)):
        h = convolve(O.quadratic(lam), O.quadratic(lam))
        witness &= h.coeffs.tolist() == [1, lam * lam]
    ok &= witness
    criterion(11, ok, f"worst margins {worst}; exact witness={witness}")


def _crafted_inputs(rng, count):
    inputs = []
    for i in range(count):
        kind = i % 5
        if kind == 0:
            inputs.append(O.random_member(rng, HALF, 24))
        elif kind == 1:  # scaled beyond the class
            f = O.random_member(rng, 1.0, 24)
            inputs.append(f)
        elif kind == 2:
            inputs.append(O.random_polynomial(rng, 6, float(rng.uniform(0.05, 1.5))))
        elif kind == 3:
            inputs.append(O.quadratic(float(rng.uniform(0.0, 1.0))))
        else:
            c = float(rng.uniform(0.0, 0.4))
            inputs.append(O.cubic_example(max(c, 1e-3) * 2))
    return inputs


def test_12_sufficient_conditions(criterion):
    rng = np.random.default_rng(12)
    lam = HALF
    inputs = _crafted_inputs(rng, 500)
    fp2 = fp3 = non_members = 0
    for f in inputs:
        member = O.is_member(f, lam).member
        non_members += not member
        if not member:
            fp2 += O.second_deriv_sufficient(f, lam) is O.Verdict.SUFFICIENT
            fp3 += O.operator_sufficient(f, lam) is O.Verdict.SUFFICIENT
    witnesses_ok = True
    for lam_w in (0.25, 0.5, 1.0):
        for w in (O.second_deriv_witness(lam_w, 2 * lam_w + 0.1), O.operator_witness(lam_w, 3 * lam_w + 0.1)):
            witnesses_ok &= w.inside and abs(derivative(w.f)(w.critical_point)) < 1e-12
        witnesses_ok &= O.second_deriv_sufficient(O.quadratic((2 * lam_w + 0.1) / 2), lam_w) is O.Verdict.INCONCLUSIVE
        witnesses_ok &= O.operator_sufficient(O.quadratic((3 * lam_w + 0.1) / 3), lam_w) is O.Verdict.INCONCLUSIVE
    ok = fp2 == 0 and fp3 == 0 and non_members > 50 and witnesses_ok
    criterion(12, ok, f"{len(inputs)} inputs ({non_members} non-members): false positives "
                      f"f''={fp2}, operator={fp3}; witnesses ok={witnesses_ok}")


def test_13_oracle_equivalence(criterion):
    rng = np.random.default_rng(13)
    worst_excess = 0.0
    worst_raw = 0.0
    kinds = ("starlike", "convex", "ctc")
    for i in range(50):
        f = O.random_member(rng, HALF, 24)
        kind = kinds[i % 3]
        r = float(rng.uniform(0.1, 0.9))
        res = G.min_on_circle(kind, f, r)
        m = 10 * res.samples
        theta = 2 * np.pi * np.arange(m) / m
        vals = G.eval_functional(kind, f, r * np.exp(1j * theta))
        dense = float(vals.min())
        # a grid minimum overshoots the true minimum by at most h^2/8 * max|F''|
        second = np.abs(np.roll(vals, 1) - 2 * vals + np.roll(vals, -1)).max()
        grid_error = second / 8
        gap = dense - res.min_value
        worst_raw = max(worst_raw, abs(gap))
        if gap < -1e-12:  # refined result worse than brute force
            worst_excess = max(worst_excess, -gap)
        elif gap > 1e-9 + grid_error:
            worst_excess = max(worst_excess, gap - grid_error)
    ok = worst_excess <= 1e-9

    rec_err = 0.0
    for _ in range(20):
        c = rng.normal(size=16) + 1j * rng.normal(size=16)
        c[0] = 1.0
        p = RawSeries(c * 0.5 ** np.arange(16))
        prod = multiply(p, reciprocal_series(p)).values[: p.degree + 1]
        rec_err = max(rec_err, np.abs(prod - np.eye(1, p.degree + 1)[0]).max())
    ok &= rec_err <= 1e-12

    identity = True
    for mu in (Fraction(1, 2), Fraction(-3, 4), Fraction(1, 3)):
        f = O.family_f_mu(mu, 12)
        inv = reciprocal_series(derivative(f))
        for n in range(2, 9):
            c = multiply(derivative(partial_sum(f, n)), inv).coeffs[n]
            identity &= c == -(n + 1) * f.coeff(n + 1)
    ok &= identity
    criterion(13, ok, f"min_on_circle vs 10x grid: |gap|<={worst_raw:.1e}, excess over grid error "
                      f"{worst_excess:.1e}; reciprocal err={rec_err:.1e}; c_n identity exact={identity}")
