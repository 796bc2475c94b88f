"""Bracketed root finding and the catalog of radius equations.

Every catalog entry is a real function of ``r`` on ``(0, 1)`` whose first
positive zero is the radius of some partial-sum property, together with a
bracket on which it changes sign exactly once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, MaxIterations, NoSignChange, UnknownEquation

DEFAULT_TOL = 1e-12
MAX_ITER = 200


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    bracket_width: float
    iterations: int

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "residual": self.residual,
            "bracket_width": self.bracket_width,
            "iterations": self.iterations,
        }


def solve_bracketed(
    F: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
) -> RootResult:
    """Bisection on ``[a, b]`` until the bracket is narrower than ``tol``.

    The returned root is the bracket end with the smaller ``|F|``; the bracket
    always keeps a sign change, so the answer cannot escape ``[a, b]``.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    fa, fb = F(a), F(b)
    if fa == 0:
        return RootResult(a, 0.0, 0.0, 0)
    if fb == 0:
        return RootResult(b, 0.0, 0.0, 0)
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise NoSignChange(f"F({a}) = {fa:.3g} and F({b}) = {fb:.3g} have the same sign")
    it = 0
    while b - a > tol:
        if it >= max_iter:
            raise MaxIterations(f"bracket still {b - a:.3g} wide after {max_iter} iterations")
        m = 0.5 * (a + b)
        if m <= a or m >= b:  # bracket at float resolution
            break
        fm = F(m)
        it += 1
        if fm == 0:
            return RootResult(m, 0.0, b - a, it)
        if math.copysign(1.0, fm) == math.copysign(1.0, fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
    root, res = (a, abs(fa)) if abs(fa) <= abs(fb) else (b, abs(fb))
    return RootResult(root, res, b - a, it)


def _log1m(r: float) -> float:
    return math.log1p(-r)


def convexity_2_1(r: float) -> float:
    """``(1-r)^2 ln(1-r) + 2 - 7r + 4r^2``."""
    return (1 - r) ** 2 * _log1m(r) + 2 - 7 * r + 4 * r * r


def starlike_2_2(r: float) -> float:
    """``3(1-r)(2-r) ln(1-r) + 4 - 4r - 3r^2 + 2r^3``."""
    return 3 * (1 - r) * (2 - r) * _log1m(r) + 4 - 4 * r - 3 * r * r + 2 * r**3


def ctc_2_5(r: float) -> float:
    """``(1-r) ln(1-r) + 2 - 3r``."""
    return (1 - r) * _log1m(r) + 2 - 3 * r


def tail_dominance_fprime(r: float) -> float:
    """Lower bound ``|f'| - |rho_n'| >= (2-3r)/(2(1-r)) + ln(1-r)/2``."""
    return (2 - 3 * r) / (2 * (1 - r)) + _log1m(r) / 2


def tail_dominance_f(r: float) -> float:
    """``(|f| - |rho_n|)/r >= 1 + ln(1-r)/2``."""
    return 1 + _log1m(r) / 2


@dataclass(frozen=True)
class NamedEquation:
    name: str
    expression: Callable[[float], float]
    bracket: tuple[float, float]
    description: str

    def solve(self, tol: float = DEFAULT_TOL) -> RootResult:
        return solve_bracketed(self.expression, *self.bracket, tol=tol)


CATALOG: dict[str, NamedEquation] = {
    eq.name: eq
    for eq in [
        NamedEquation(
            "convexity_2_1", convexity_2_1, (0.05, 0.6),
            "convexity radius of every partial sum of an Omega member",
        ),
        NamedEquation(
            "starlike_2_2", starlike_2_2, (0.05, 0.8),
            "starlikeness radius of every partial sum of an Omega member",
        ),
        NamedEquation(
            "ctc_2_5", ctc_2_5, (0.05, 0.9),
            "close-to-convexity radius of every partial sum of an Omega member",
        ),
        NamedEquation(
            "aux_9r2_8r_4", lambda r: 9 * r * r + 8 * r - 4, (0.0, 1.0),
            "convexity radius bound for s_3: 9r^2 + 8r - 4 = 0",
        ),
        NamedEquation(
            "aux_3r2_4r_4", lambda r: 3 * r * r + 4 * r - 4, (0.0, 1.0),
            "3r^2 + 4r - 4 = (3r - 2)(r + 2) = 0",
        ),
        NamedEquation(
            "tail_dominance_fprime", tail_dominance_fprime, (0.05, 0.9),
            "|rho_n'| < |f'| holds below this radius",
        ),
        NamedEquation(
            "tail_dominance_f", tail_dominance_f, (0.05, 0.999999),
            "|rho_n| < |f| holds below this radius (closed form 1 - e^-2)",
        ),
    ]
}


def named_radius(name: str, tol: float = DEFAULT_TOL) -> RootResult:
    try:
        eq = CATALOG[name]
    except KeyError:
        raise UnknownEquation(name) from None
    return eq.solve(tol)


# ---------------------------------------------------------------------------
# lower-bound expressions for s_3 of f_mu


def counterexample_expression(kind: str, mu: float) -> Callable[[float], float]:
    """Numerator of the lower bound for the ``kind`` functional of ``s_3(f_mu)``.

    convex:   1 - 2|mu| r - (9/4)(1 - mu^2) r^2
    starlike: 4 - 4|mu| r - 3(1 - mu^2) r^2
    ctc:      1 - |mu| r - (3/4)(1 - mu^2) r^2
    convex_denominator: 1 - |mu| r - (3/4)(1 - mu^2) r^2, the denominator of
    the convex bound (same polynomial as ctc).
    """
    m = abs(mu)
    q = 1 - mu * mu
    table = {
        "convex": lambda r: 1 - 2 * m * r - 2.25 * q * r * r,
        "starlike": lambda r: 4 - 4 * m * r - 3 * q * r * r,
        "ctc": lambda r: 1 - m * r - 0.75 * q * r * r,
        "convex_denominator": lambda r: 1 - m * r - 0.75 * q * r * r,
    }
    try:
        return table[kind]
    except KeyError:
        raise UnknownEquation(kind) from None


def counterexample_bound_root(kind: str, mu: float, tol: float = DEFAULT_TOL) -> RootResult:
    """Radius where the ``s_3(f_mu)`` lower-bound expression vanishes."""
    F = counterexample_expression(kind, mu)
    b = 1.0
    if F(b) > 0:  # no sign change up to the scan limit of the quadratic
        b = 10.0
    return solve_bracketed(F, 0.0, b, tol)


# ---------------------------------------------------------------------------
# worst-case partial sums of f'


def positivity_polynomial(n: int) -> Callable[[float], float]:
    """``P_n(r) = 1 - sum_{k=2}^n k r^{k-1} / (2(k-1))``."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    weights = [k / (2.0 * (k - 1)) for k in range(2, n + 1)]

    def P(r: float) -> float:
        acc = 0.0
        for w in reversed(weights):
            acc = acc * r + w
        return 1.0 - r * acc

    return P


def partial_sum_positivity_radius(n: int, tol: float = DEFAULT_TOL) -> RootResult:
    """Root of ``P_n`` in ``(0, 1]``: where ``Re s_n' > 0`` is guaranteed for Omega."""
    P = positivity_polynomial(n)
    return solve_bracketed(P, 0.0, 1.0, tol)
