"""Tail bounds and the partial-sum approximation constants for Omega.

All bounds assume ``|a_k| <= 1/(2(k-1))``, the coefficient bound of Omega.
The constants ``A_n``, ``B_n`` and ``C_n`` come in two flavours:

``paper``
    uses ``ln(n-1) + gamma`` in place of the harmonic number, reproducing the
    printed constants;
``exact-harmonic``
    keeps ``H_{n-1}``, the value before that approximation.  Since
    ``H_{n-1} >= ln(n-1) + gamma`` this is never smaller.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from . import _scan
from .errors import DomainError, PoleEncountered
from .omega import OMEGA_LAMBDA, require_member
from .reports import BoundReport
from .roots import partial_sum_positivity_radius
from .series import (
    TaylorSeries,
    _horner,
    derivative,
    partial_sum,
    tail,
)

EULER_GAMMA = 0.5772156649015329
PRINTED_CONSTANT = 61.735
C_N_OUTER_RADIUS = 0.99
C_N_DISK_RADIUS = 0.547
ARG_BUDGET_DEGREES = 56.84
MODES = ("paper", "exact-harmonic")


def harmonic(n: int) -> float:
    return math.fsum(1.0 / k for k in range(1, n + 1))


def _check_r(r: float) -> None:
    if not 0 < r < 1:
        raise DomainError(f"r must lie in (0, 1), got {r}")


@dataclass(frozen=True)
class TailBounds:
    n: int
    r: float
    rho_bound: float
    rho_prime_bound: float
    z_rho_double_prime_bound: float


def tail_bounds(n: int, r: float) -> TailBounds:
    """Closed-form bounds for ``|rho_n|``, ``|rho_n'|`` and ``|z rho_n''|`` on ``|z| = r``.

    The bounds do not depend on ``n``: each sum is relaxed to its ``n = 2`` case.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    _check_r(r)
    log1m = math.log1p(-r)
    return TailBounds(
        n,
        r,
        rho_bound=-(r / 2) * log1m - r * r / 2,
        rho_prime_bound=(2 * r * r - r) / (2 * (1 - r)) - log1m / 2,
        z_rho_double_prime_bound=r * r * (3 - 2 * r) / (2 * (1 - r) ** 2),
    )


def _tail_rows(f: TaylorSeries, n: int) -> np.ndarray:
    """Ascending coefficients of ``rho_n``, ``rho_n'`` and ``z rho_n''`` as rows."""
    rho = tail(f, n)
    rho1 = derivative(rho)
    zrho2 = np.concatenate([[0.0], derivative(rho1).values])
    out = np.zeros((3, rho.degree + 1), dtype=np.complex128)
    out[0] = rho.values
    out[1, : rho1.degree + 1] = rho1.values
    out[2, : zrho2.size] = zrho2
    return out


def tail_domination_sweep(
    f: TaylorSeries, ns, rs, samples: int = 4096
) -> list[BoundReport]:
    """:func:`tail_domination_check` for every ``(n, r)`` pair, in one batched scan."""
    require_member(f, OMEGA_LAMBDA)
    pairs = [(n, r) for n in ns for r in rs]
    blocks, radii = [], []
    for n, r in pairs:
        tail_bounds(n, r)  # validates n and r
        blocks.append(_tail_rows(f, n))
        radii.extend([r, r, r])
    maxima, _ = _scan.max_modulus_batch(np.vstack(blocks), np.array(radii), samples)
    reports = []
    labels = ("|rho_n|", "|rho_n'|", "|z rho_n''|")
    for i, (n, r) in enumerate(pairs):
        tb = tail_bounds(n, r)
        bounds = (tb.rho_bound, tb.rho_prime_bound, tb.z_rho_double_prime_bound)
        for j in range(3):
            reports.append(
                BoundReport(labels[j], float(maxima[3 * i + j]), bounds[j], tol=1e-9,
                            inputs={"n": n, "r": r})
            )
    return reports


def tail_domination_check(
    f: TaylorSeries, n: int, r: float, samples: int = 4096
) -> tuple[BoundReport, BoundReport, BoundReport]:
    """Measured maxima of ``|rho_n|``, ``|rho_n'|``, ``|z rho_n''|`` on ``|z| = r``
    against :func:`tail_bounds`."""
    return tuple(tail_domination_sweep(f, [n], [r], samples))


# ---------------------------------------------------------------------------
# approximation constants


def _log_term(n: int, mode: str) -> float:
    if mode == "paper":
        return math.log(n - 1) + EULER_GAMMA
    if mode == "exact-harmonic":
        return harmonic(n - 1)
    raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _sqrt_m2_minus_1(r: float) -> float:
    """``sqrt(M^2 - 1)`` with ``M = 1/(1-r)``, i.e. ``sqrt(2r - r^2)/(1-r)``."""
    return math.sqrt(2 * r - r * r) / (1 - r)


def a_n(n: int, r: float, mode: str = "paper") -> float:
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    _check_r(r)
    return _sqrt_m2_minus_1(r) / 2 * (n + 1 + _log_term(n, mode))


def b_n(n: int, r_outer: float, mode: str = "paper") -> float:
    """``B_n = A_n(r_outer) / r_outer^n``."""
    return a_n(n, r_outer, mode) / r_outer**n


def reconstructed_constant(r: float = C_N_OUTER_RADIUS, r0: float = C_N_DISK_RADIUS) -> float:
    """The coefficient multiplying ``(n+1+...)/r^n`` in ``C_n``: ``sqrt(2r-r^2)/(2(1-r)) * r0/(r-r0)``."""
    return _sqrt_m2_minus_1(r) / 2 * r0 / (r - r0)


def c_n(n: int, mode: str = "paper", constant: str = "printed") -> float:
    """``C_n = r0^n ((n+1)/(2n) + K/r^n (n+1+ln(n-1)+gamma))`` with ``r = 0.99``, ``r0 = 0.547``.

    ``constant="printed"`` uses ``K = 61.735``; ``"reconstructed"`` recomputes it.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if constant == "printed":
        k = PRINTED_CONSTANT
    elif constant == "reconstructed":
        k = reconstructed_constant()
    else:
        raise ValueError(f"constant must be 'printed' or 'reconstructed', got {constant!r}")
    r, r0 = C_N_OUTER_RADIUS, C_N_DISK_RADIUS
    return r0**n * ((n + 1) / (2 * n) + k / r**n * (n + 1 + _log_term(n, mode)))


@dataclass(frozen=True)
class ApproximationConstants:
    n: int
    r: float
    mode: str
    A_n: float
    r_outer: float | None
    B_n: float | None
    C_n: float
    gamma: float = EULER_GAMMA


def approx_constants(
    n: int, r: float, r_outer: float | None = None, mode: str = "paper"
) -> ApproximationConstants:
    if r_outer is not None and not r < r_outer < 1:
        raise DomainError(f"need r < r_outer < 1, got r={r}, r_outer={r_outer}")
    return ApproximationConstants(
        n=n,
        r=r,
        mode=mode,
        A_n=a_n(n, r, mode),
        r_outer=r_outer,
        B_n=None if r_outer is None else b_n(n, r_outer, mode),
        C_n=c_n(n, mode),
    )


def minimal_n(threshold_degrees: float = ARG_BUDGET_DEGREES, mode: str = "paper", n_cap: int = 100_000) -> int:
    """Smallest ``n >= 2`` with ``C_n <= sin(threshold)``."""
    if not 0 < threshold_degrees <= 90:
        raise DomainError(f"threshold must lie in (0, 90], got {threshold_degrees}")
    target = math.sin(math.radians(threshold_degrees))
    for n in range(2, n_cap + 1):
        if c_n(n, mode) <= target:
            return n
    raise DomainError(f"no n <= {n_cap} meets C_n <= {target:.6g}")


# ---------------------------------------------------------------------------
# |s_n'/f' - 1|


def ratio_gap(f: TaylorSeries, n: int, z):
    """``|s_n'(z)/f'(z) - 1|`` at ``z`` (scalar or array)."""
    p = derivative(f).values
    ps = derivative(partial_sum(f, n)).values
    den = _horner(p, z)
    if np.any(np.abs(den) < 1e-14):
        raise PoleEncountered("f' vanishes on the sampled points")
    out = np.abs(_horner(ps, z) / den - 1.0)
    return float(out) if np.ndim(out) == 0 else out


def ratio_gap_bound(n: int, r: float, mode: str = "exact-harmonic", r_outer: float | None = None) -> float:
    """Right-hand side of the ratio-gap inequality at ``|z| = r``.

    Without ``r_outer``: ``r^n ((n+1)/(2n) + A_n(r) r/(1-r))``.  With it:
    ``r^n ((n+1)/(2n) + B_n(r_outer) r/(r_outer - r))`` for ``r < r_outer``.
    """
    lead = (n + 1) / (2 * n)
    if r_outer is None:
        return r**n * (lead + a_n(n, r, mode) * r / (1 - r))
    if not r < r_outer < 1:
        raise DomainError(f"need r < r_outer < 1, got r={r}, r_outer={r_outer}")
    return r**n * (lead + b_n(n, r_outer, mode) * r / (r_outer - r))


def _ratio_gap_maxima(f: TaylorSeries, pairs, samples: int) -> np.ndarray:
    """``max |s_n'/f' - 1|`` on ``|z| = r`` for each ``(n, r)`` in ``pairs``."""
    p = derivative(f).values
    deg = p.size
    # s_n'/f' - 1 = -rho_n'/f'
    num = np.zeros((len(pairs), deg), dtype=np.complex128)
    for i, (n, _) in enumerate(pairs):
        num[i, n:] = -p[n:]
    radii = np.array([r for _, r in pairs], dtype=float)
    den = np.broadcast_to(p, num.shape)
    samples = max(samples, 8 * deg)
    powers = radii[:, None] ** np.arange(deg)[None, :]
    top = np.fft.ifft(num * powers, n=samples, axis=1)
    bottom = np.fft.ifft(den * powers, n=samples, axis=1)
    if np.any(np.abs(bottom) * samples < 1e-14):
        raise PoleEncountered("f' vanishes on a scan circle")
    grid = np.abs(top / bottom)
    num_eval = _scan.polynomial_rows(num, radii, absolute=False)
    den_eval = _scan.polynomial_rows(np.array(den), radii, absolute=False)

    def evaluate(theta, rows):
        return np.abs(num_eval(theta, rows) / den_eval(theta, rows))

    values, _ = _scan.batch_extreme(evaluate, len(pairs), samples, grid_values=grid)
    return values


def ratio_gap_sweep(
    f: TaylorSeries,
    ns,
    rs,
    samples: int = 4096,
    mode: str = "exact-harmonic",
    r_outer: float | None = None,
) -> list[BoundReport]:
    """:func:`ratio_gap_check` for every ``(n, r)`` pair, in one batched scan."""
    require_member(f, OMEGA_LAMBDA)
    pairs = [(n, r) for n in ns for r in rs]
    for _, r in pairs:
        _check_r(r)
    measured = _ratio_gap_maxima(f, pairs, samples)
    reports = []
    for (n, r), m in zip(pairs, measured):
        bound = ratio_gap_bound(n, r, mode, r_outer)
        if mode == "paper":
            bound *= 1.02
        inputs = {"n": n, "r": r, "mode": mode, "r_outer": r_outer}
        reports.append(BoundReport("|s_n'/f'-1|", float(m), bound, tol=1e-9, inputs=inputs))
    return reports


def ratio_gap_check(
    f: TaylorSeries,
    n: int,
    r: float,
    samples: int = 4096,
    mode: str = "exact-harmonic",
    r_outer: float | None = None,
) -> BoundReport:
    """Maximum of :func:`ratio_gap` over ``|z| = r`` against :func:`ratio_gap_bound`.

    With ``mode="paper"`` the bound is allowed a 2% relative excess because the
    logarithm undershoots the harmonic sum.
    """
    return ratio_gap_sweep(f, [n], [r], samples, mode, r_outer)[0]


# ---------------------------------------------------------------------------
# Figure 1


def figure1_data(n_min: int = 2, n_max: int = 40) -> list[tuple[int, float]]:
    """``(n, radius)`` rows, radius being where ``Re s_n' > 0`` is guaranteed."""
    if not 2 <= n_min <= n_max:
        raise DomainError(f"need 2 <= n_min <= n_max, got {n_min}, {n_max}")
    return [(n, partial_sum_positivity_radius(n).root) for n in range(n_min, n_max + 1)]


def plateau_start(rows: list[tuple[int, float]], tol: float = 1e-4) -> int | None:
    """First ``n`` with ``|radius(n) - radius(n+1)| < tol``."""
    for (n, r), (_, r_next) in zip(rows, rows[1:]):
        if abs(r - r_next) < tol:
            return n
    return None


def figure1_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "radius"])
    for n, r in rows:
        writer.writerow([n, f"{r:.10g}"])
    return buf.getvalue()


def figure1_json(rows) -> str:
    return json.dumps([{"n": n, "radius": r} for n, r in rows])
