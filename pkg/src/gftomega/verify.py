"""Seeded verification suites, one per stated result.

Each suite builds its own generator from the seed, so a suite's report does
not depend on which other suites ran before it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from . import _scan, bounds, geometry, omega, roots
from .errors import PoleEncountered
from .reports import SuiteReport
from .series import RawSeries, convolve, derivative, evaluate, multiply, partial_sum, reciprocal_series

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 20
SUITE_DEGREE = 20
SCAN_DEGREE = 12


def _members(rng, count, lam=omega.OMEGA_LAMBDA, degree=SUITE_DEGREE):
    out = []
    for _ in range(count):
        f = omega.random_member(rng, lam, degree)
        omega.require_member(f, lam)
        out.append(f)
    return out


def _minus_one(p: RawSeries) -> RawSeries:
    c = p.values.copy()
    c[0] -= 1
    return RawSeries(c)


def _close(report: SuiteReport, label, measured, expected, tol):
    err = abs(measured - expected)
    report.add(label, err <= tol, measured, expected, tol - err)


def suite_lemma1(rng, samples):
    rep = SuiteReport("lemma1")
    fs = _members(rng, samples) + [omega.family_f_mu(mu, 128) for mu in (-0.5, 0.0, 0.5, 1.0)]
    worst_coeff = min(min(b.slack for b in omega.coefficient_bounds_check(f)) for f in fs)
    rep.add("|a_k| <= 1/(2(k-1)) over all members", worst_coeff >= -1e-12, worst_coeff, 0.0, worst_coeff)
    for r in (0.3, 0.6, 0.9):
        reps = [b for f in fs for b in omega.growth_distortion_check(f, omega.OMEGA_LAMBDA, r)]
        worst = min(b.slack for b in reps)
        rep.add(f"growth/distortion r={r}", all(b.passed for b in reps), worst, 0.0, worst)
    for k in (2, 3, 5, 8):
        a_k = float(abs(omega.extremal_k(k).values[k - 1]))
        _close(rep, f"extremal k={k}: |a_k| = 1/(2(k-1))", a_k, 1 / (2 * (k - 1)), 0.0)
    f = omega.extremal_k(2)
    for r in (0.3, 0.6, 0.9):
        _close(rep, f"z+z^2/2 at z={r}: |f| = r + r^2/2", abs(complex(evaluate(f, r))), r + r * r / 2, 1e-12)
        _close(rep, f"z+z^2/2 at z={r}: |f'| = 1 + r", abs(complex(evaluate(derivative(f), r))), 1 + r, 1e-12)
    return rep


def suite_lemma12(rng, samples):
    rep = SuiteReport("lemma12")
    fs = _members(rng, samples)
    for r in (0.1, 0.3, 0.5, 0.7, 0.9):
        reps = [omega.starlike_deviation_check(f, r) for f in fs]
        worst = min(b.slack for b in reps)
        rep.add(f"|zf'/f - 1| <= r/(2-r) at r={r}", all(b.passed for b in reps), worst, r / (2 - r), worst)
    return rep


def suite_lemma14(rng, samples):
    rep = SuiteReport("lemma14")
    fs = _members(rng, samples)
    rs = (0.1, 0.3, 0.5, 0.7, 0.8)
    reps = [b for f in fs for b in bounds.tail_domination_sweep(f, range(2, 11), rs)]
    for label in ("|rho_n|", "|rho_n'|", "|z rho_n''|"):
        sel = [b for b in reps if b.label == label]
        worst = min(b.slack for b in sel)
        rep.add(f"{label} within closed-form bound", all(b.passed for b in sel), worst, 0.0, worst)
    return rep


def _partial_sum_suite(name, kind, eq_name, rng, samples):
    rep = SuiteReport(name)
    bound = roots.named_radius(eq_name).root
    rep.add(f"{eq_name} root", True, bound, None, None)
    fs = _members(rng, samples, degree=SCAN_DEGREE)
    fs += [omega.family_f_mu(mu, SCAN_DEGREE * 4) for mu in (-0.9, 0.0, 0.7)]
    worst = math.inf
    for f in fs:
        for n in (2, 3, 5, 8):
            radius = geometry.partial_sum_radius(kind, f, n).radius
            worst = min(worst, radius - bound)
    rep.add(f"{kind} radius of s_n >= {bound:.4f}", worst >= -1e-4, bound + worst, bound, worst)
    return rep


def suite_thm21(rng, samples):
    rep = _partial_sum_suite("thm21", "convex", "convexity_2_1", rng, samples)
    limit = (math.sqrt(5) - 1) / 2
    fs = _members(rng, samples)
    worst = math.inf
    for f in fs:
        for r in (0.1, 0.3, 0.5, limit - 1e-9):
            worst = min(worst, r / (1 - r) - geometry.max_convex_ratio(f, r))
    rep.add("max|zf''/f'| <= r/(1-r)", worst >= -1e-9, None, None, worst)
    root = roots.counterexample_bound_root("convex", 0.9).root
    direct = geometry.partial_sum_radius("convex", omega.family_f_mu(0.9, 128), 3)
    rep.add("s_3(f_0.9): bound root", abs(root - 0.4969) < 5e-4, root, 0.4969, None)
    rep.add("s_3(f_0.9): scanned convex radius >= bound root", direct.radius >= root - 1e-6,
            direct.radius, root, direct.radius - root)
    return rep


def suite_thm22(rng, samples):
    rep = _partial_sum_suite("thm22", "starlike", "starlike_2_2", rng, samples)
    fs = _members(rng, samples)
    worst = math.inf
    for f in fs:
        for r in (0.1, 0.3, 0.5, 0.7, 0.9):
            m = geometry.min_on_circle("starlike", f, r).min_value
            worst = min(worst, m - 2 * (1 - r) / (2 - r))
    rep.add("min Re(zf'/f) >= 2(1-r)/(2-r)", worst >= -1e-9, None, None, worst)
    root = roots.counterexample_bound_root("starlike", 0.7).root
    direct = geometry.partial_sum_radius("starlike", omega.family_f_mu(0.7, 128), 3)
    rep.add("s_3(f_0.7): bound root", abs(root - 0.9428) < 5e-4, root, 0.9428, None)
    rep.add("s_3(f_0.7): scanned starlike radius >= bound root", direct.radius >= root - 1e-6,
            direct.radius, root, direct.radius - root)
    return rep


def suite_thm23(rng, samples):
    rep = _partial_sum_suite("thm23", "ctc", "ctc_2_5", rng, samples)
    fs = _members(rng, samples)
    worst = math.inf
    for f in fs:
        for r in (0.1, 0.3, 0.5, 0.7, 0.9):
            worst = min(worst, geometry.min_on_circle("ctc", f, r).min_value - (1 - r))
    rep.add("min Re f' >= 1 - r", worst >= -1e-9, None, None, worst)
    root = roots.counterexample_bound_root("ctc", 0.7).root
    direct = geometry.partial_sum_radius("ctc", omega.family_f_mu(0.7, 128), 3)
    rep.add("s_3(f_0.7): bound root", abs(root - 0.9428) < 5e-4, root, 0.9428, None)
    rep.add("s_3(f_0.7): scanned ctc radius >= bound root", direct.radius >= root - 1e-6,
            direct.radius, root, direct.radius - root)
    return rep


def suite_thm31(rng, samples):
    rep = SuiteReport("thm31")
    fs = _members(rng, samples)
    rs = (0.1, 0.2, 0.3, 0.4, 0.5)
    reps = [b for f in fs for b in bounds.ratio_gap_sweep(f, range(2, 11), rs)]
    worst = min(b.slack for b in reps)
    rep.add("|s_n'/f' - 1| within exact-harmonic bound", all(b.passed for b in reps), None, None, worst)
    ratio = min(bounds.a_n(n, 0.5, "paper") / bounds.a_n(n, 0.5, "exact-harmonic") for n in range(5, 41))
    rep.add("paper/exact-harmonic factor >= 0.98 for n >= 5", ratio >= 0.98, ratio, 0.98, ratio - 0.98)
    for mu in (Fraction(1, 2), Fraction(-3, 4)):
        f = omega.family_f_mu(mu, 12)
        inv = reciprocal_series(derivative(f))
        for n in range(2, 9):
            c = multiply(derivative(partial_sum(f, n)), inv).coeffs[n]
            want = -(n + 1) * f.coeffs[n]
            rep.add(f"c_{n} = -(n+1)a_(n+1) for mu={mu}", c == want, str(c), str(want), None)
    return rep


def suite_thm32(rng, samples):
    rep = SuiteReport("thm32")
    fs = _members(rng, samples)
    r_outer = 0.9
    rs = (0.1, 0.3, 0.5, 0.7)
    reps = [b for f in fs for b in bounds.ratio_gap_sweep(f, range(2, 11), rs, r_outer=r_outer)]
    worst = min(b.slack for b in reps)
    rep.add(f"|s_n'/f' - 1| within B_n bound (r_outer={r_outer})", all(b.passed for b in reps),
            None, None, worst)
    return rep


def suite_thm33(rng, samples):
    rep = SuiteReport("thm33")
    k = bounds.reconstructed_constant()
    _close(rep, "reconstructed constant", k, bounds.PRINTED_CONSTANT, 0.01)
    target = math.sin(math.radians(bounds.ARG_BUDGET_DEGREES))
    c11, c12 = bounds.c_n(11), bounds.c_n(12)
    rep.add("C_11 > 1", c11 > 1, c11, 1.0, c11 - 1)
    rep.add("C_12 < sin(56.84 deg)", c12 < target, c12, target, target - c12)
    n = bounds.minimal_n()
    rep.add("minimal n", n == 12, n, 12, None)
    return rep


def suite_thm41(rng, samples):
    rep = SuiteReport("thm41")
    for lam in (0.75, 1.0, 2.0):
        star = omega.starlike_radius_bound(lam)
        fs = _members(rng, max(2, samples // 4), lam, SCAN_DEGREE)
        worst = min(geometry.radius_of_positivity("starlike", f).radius - star for f in fs)
        rep.add(f"starlike radius >= 1/(2 lam), lam={lam}", worst >= -1e-6, star + worst, star, worst)
        _close(rep, f"z + lam z^2 starlike radius, lam={lam}",
               geometry.radius_of_positivity("starlike", omega.quadratic(lam)).radius, star, 1e-6)
        for r in (0.3, 0.6, 0.9):
            reps = [b for f in fs for b in omega.growth_distortion_check(f, lam, r)]
            worst = min(b.slack for b in reps)
            rep.add(f"growth/distortion lam={lam} r={r}", all(b.passed for b in reps), None, None, worst)
    return rep


def suite_thm42(rng, samples):
    rep = SuiteReport("thm42")
    for lam in (0.75, 1.0, 2.0):
        fs = _members(rng, max(2, samples // 4), lam, SCAN_DEGREE)
        conv = omega.convexity_radius_bound(lam)
        worst = min(geometry.radius_of_positivity("convex", f).radius - conv for f in fs)
        rep.add(f"convex radius >= 1/(4 lam), lam={lam}", worst >= -1e-6, conv + worst, conv, worst)
        r = omega.starlike_radius_bound(lam) * (1 - 1e-9)
        worst = min(2 * lam * r - _scan.max_modulus(_minus_one(derivative(f)), r)[0] for f in fs)
        rep.add(f"|f' - 1| <= 2 lam r, lam={lam}", worst >= -1e-9, None, None, worst)
    _close(rep, "z + z^2 convex radius", geometry.radius_of_positivity("convex", omega.quadratic(1)).radius,
           0.25, 1e-6)
    # sign changes of the cubic example's lower-bound expressions
    for name, fn, crit in (
        ("univalence bound", geometry.cubic_univalence_bound, 4 / 7),
        ("starlike bound", geometry.cubic_starlike_bound, 4 / 7),
        ("convex bound", geometry.cubic_convex_bound, 4 / 17),
    ):
        ok = fn(crit - 1e-6) > 0 > fn(crit + 1e-6)
        rep.add(f"cubic example {name} changes sign at {crit:.6f}", ok, fn(crit + 1e-6), 0.0, None)
    for lam in (0.5, 4 / 7 + 0.05, 0.8):
        f = omega.cubic_example(lam)
        for kind in ("starlike", "convex"):
            try:
                res = geometry.radius_of_positivity(kind, f)
                rep.add(f"cubic example lam={lam:.4f}: direct {kind} radius", True, res.radius, None, None)
            except PoleEncountered as exc:
                rep.add(f"cubic example lam={lam:.4f}: direct {kind} radius", True, exc.last_good_radius, None, None)
    return rep


def _sufficient_suite(name, test, witness, const, rng, samples):
    rep = SuiteReport(name)
    lam = 0.5
    false_pos = 0
    inputs = _members(rng, samples, lam, SUITE_DEGREE)
    inputs += [omega.random_polynomial(rng, 6, scale) for scale in np.linspace(0.05, 1.0, samples)]
    inputs += [omega.quadratic(c) for c in (0.2, lam, 0.6, 1.0)]
    for f in inputs:
        if test(f, lam) is omega.Verdict.SUFFICIENT and not omega.is_member(f, lam).member:
            false_pos += 1
    rep.add("no false positives against boundary scan", false_pos == 0, false_pos, 0, None)
    for lam_w in (0.5, 1.0):
        w = witness(lam_w, const * lam_w + 0.1)
        fp = complex(evaluate(derivative(w.f), w.critical_point))
        rep.add(f"witness lam={lam_w}: f' vanishes inside 1/(2 lam)", w.inside and abs(fp) < 1e-12,
                w.critical_point, w.univalence_radius, w.univalence_radius - abs(w.critical_point))
        at_const = test(omega.quadratic(lam_w), lam_w)
        rep.add(f"boundary case lam={lam_w} is sufficient", at_const is omega.Verdict.SUFFICIENT,
                at_const.value, "sufficient", None)
    return rep


def suite_thm43(rng, samples):
    return _sufficient_suite("thm43", omega.second_deriv_sufficient, omega.second_deriv_witness, 2, rng, samples)


def suite_thm44(rng, samples):
    return _sufficient_suite("thm44", omega.operator_sufficient, omega.operator_witness, 3, rng, samples)


def suite_thm45(rng, samples):
    rep = SuiteReport("thm45")
    for lam in (0.5, 1.0):
        worst = math.inf
        for _ in range(samples):
            f, g = _members(rng, 2, lam)
            cert = omega.is_member(convolve(f, g), lam)
            worst = min(worst, cert.margin)
        rep.add(f"convolution stays in Omega_{lam}", worst >= -1e-9, lam - worst, lam, worst)
        h = convolve(omega.quadratic(Fraction(lam)), omega.quadratic(Fraction(lam)))
        rep.add(f"(z+{lam}z^2)*(z+{lam}z^2) = z+{lam**2}z^2",
                list(h.coeffs) == [1, Fraction(lam) ** 2], str(h.coeffs[1]), str(Fraction(lam) ** 2), None)
    return rep


def suite_thm46(rng, samples):
    rep = SuiteReport("thm46")
    for lam in (0.3, 0.5, 1.0):
        fs = _members(rng, samples, lam)
        worst = min(min(b.slack for b in omega.coefficient_bounds_check(f, lam)) for f in fs)
        rep.add(f"|a_k| <= lam/(k-1), lam={lam}", worst >= -1e-12, None, None, worst)
        false_pos = sum(
            omega.coeff_sum_sufficient(f, lam) is omega.Verdict.SUFFICIENT and not omega.is_member(f, lam).member
            for f in fs + [omega.random_polynomial(rng, 6, s) for s in np.linspace(0.05, 1, samples)]
        )
        rep.add(f"coefficient-sum test has no false positives, lam={lam}", false_pos == 0, false_pos, 0, None)
        f = omega.extremal_k(4, lam)
        v = omega.coeff_sum_sufficient(f, lam)
        rep.add(f"extremal_k(4, {lam}) inconclusive yet member",
                v is omega.Verdict.INCONCLUSIVE and omega.is_member(f, lam).member, v.value, "inconclusive", None)
    return rep


SUITES: dict[str, Callable] = {
    "lemma1": suite_lemma1,
    "lemma12": suite_lemma12,
    "lemma14": suite_lemma14,
    "thm21": suite_thm21,
    "thm22": suite_thm22,
    "thm23": suite_thm23,
    "thm31": suite_thm31,
    "thm32": suite_thm32,
    "thm33": suite_thm33,
    "thm41": suite_thm41,
    "thm42": suite_thm42,
    "thm43": suite_thm43,
    "thm44": suite_thm44,
    "thm45": suite_thm45,
    "thm46": suite_thm46,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES) -> SuiteReport:
    """Run one suite; raises ``KeyError`` for an unknown name."""
    if name not in SUITES:
        raise KeyError(name)
    if samples < 1:
        raise ValueError("samples must be positive")
    return SUITES[name](np.random.default_rng(seed), samples)


def run_all(seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES) -> list[SuiteReport]:
    return [run_suite(name, seed, samples) for name in SUITES]
