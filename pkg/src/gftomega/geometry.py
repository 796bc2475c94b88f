"""Geometric functionals on circles and radii of convexity, starlikeness and
close-to-convexity.

For ``f = z + a_2 z^2 + ...`` write

    h(z) = f(z)/z          = sum a_k z^(k-1)
    p(z) = f'(z)           = sum k a_k z^(k-1)
    q(z) = f'(z) + z f''   = sum k^2 a_k z^(k-1)

so that ``Re(z f'/f) = Re(p/h)``, ``Re(1 + z f''/f') = Re(q/p)`` and the
close-to-convexity test (against the identity) is ``Re(p)``.  Working with
``h`` instead of ``f`` removes the removable singularity at the origin.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import _scan
from .errors import PoleEncountered
from .roots import solve_bracketed
from .series import TaylorSeries, _horner, horner_scalar, partial_sum

POLE_EPS = 1e-14


class Kind(str, enum.Enum):
    STARLIKE = "starlike"
    CONVEX = "convex"
    CTC = "ctc"


@dataclass(frozen=True)
class ScanConfig:
    theta_samples: int = 4096
    r_step: float = 1e-3
    bisection_tol: float = 1e-7
    refine_tol: float = 1e-12
    r_max: float = 0.999

    def __post_init__(self):
        if self.theta_samples < 256:
            raise ValueError("theta_samples must be >= 256")
        for name in ("r_step", "bisection_tol", "refine_tol", "r_max"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class MinResult:
    r: float
    min_value: float
    argmin_theta: float
    samples: int


@dataclass(frozen=True)
class RadiusResult:
    """Radius up to which a functional stays positive.

    ``method`` is ``"sign-bisection"`` when a sign change was bracketed,
    ``"analytic"`` when the radius is the modulus of the nearest zero of the
    functional's denominator, and ``"scan-limit"`` when the functional stayed
    positive up to ``ScanConfig.r_max``.
    """

    kind: str
    radius: float
    residual: float
    method: str
    argmin_theta: float
    slope: float = float("nan")

    def to_dict(self) -> dict:
        out = asdict(self)
        if not math.isfinite(out["slope"]):
            out["slope"] = None
        return out


def _parts(kind: Kind, f: TaylorSeries):
    """Numerator and denominator coefficient arrays (ascending) of the ratio."""
    a = f.values
    k = np.arange(1, a.size + 1)
    if kind is Kind.STARLIKE:
        return k * a, a
    if kind is Kind.CONVEX:
        return k * k * a, k * a
    return k * a, None


def _values(num, den, z, kind_label=""):
    top = _horner(num, z)
    if den is None:
        return np.real(top)
    bottom = _horner(den, z)
    small = np.abs(bottom) < POLE_EPS
    if np.any(small):
        idx = np.flatnonzero(np.ravel(small))[0]
        zz = np.ravel(np.asarray(z))[idx]
        raise PoleEncountered(
            f"{kind_label} functional has a pole near z = {zz:.6g}",
            r=float(abs(zz)),
            theta=float(np.angle(zz) % (2 * np.pi)),
        )
    return np.real(top / bottom)


def eval_functional(kind, f: TaylorSeries, z):
    """``Re(z f'/f)``, ``Re(1 + z f''/f')`` or ``Re f'`` at ``z`` (scalar or array)."""
    kind = Kind(kind)
    num, den = _parts(kind, f)
    out = _values(num, den, z, kind.value)
    return float(out) if np.ndim(out) == 0 else out


def min_on_circle(kind, f: TaylorSeries, r: float, cfg: ScanConfig | None = None) -> MinResult:
    """Minimum of the functional over ``|z| = r``: grid, then golden-section polish."""
    cfg = cfg or ScanConfig()
    if not 0 < r < 1:
        raise ValueError(f"r must lie in (0, 1), got {r}")
    kind = Kind(kind)
    num, den = _parts(kind, f)
    samples = max(cfg.theta_samples, 8 * f.degree)
    thetas = _scan.theta_grid(samples)
    vals = _values(num, den, r * np.exp(1j * thetas), kind.value)

    num_l = num.tolist()
    den_l = None if den is None else den.tolist()

    def scalar(theta):
        z = r * complex(math.cos(theta), math.sin(theta))
        top = horner_scalar(num_l, z)
        if den_l is None:
            return top.real
        bottom = horner_scalar(den_l, z)
        if abs(bottom) < POLE_EPS:
            raise PoleEncountered(f"{kind.value} functional has a pole near z = {z:.6g}",
                                  r=r, theta=theta % (2 * math.pi))
        return (top / bottom).real

    theta, value = _scan.refine_min(scalar, thetas, vals, tol=cfg.refine_tol)
    return MinResult(r, value, theta, samples)


def denominator_zero_radius(kind, f: TaylorSeries) -> float:
    """Modulus of the nearest zero of ``h`` (starlike) or ``f'`` (convex)."""
    kind = Kind(kind)
    _, den = _parts(kind, f)
    if den is None:
        return math.inf
    c = np.trim_zeros(den, "b")
    if c.size <= 1:
        return math.inf
    zeros = np.roots(c[::-1])
    return float(np.min(np.abs(zeros))) if zeros.size else math.inf


def _coarse_scan(num, den, radii, samples, kind_label):
    """Grid minima over many circles at once, with a curvature error estimate."""
    thetas = _scan.theta_grid(samples)
    z = radii[:, None] * np.exp(1j * thetas)[None, :]
    vals = _values(num, den, z, kind_label)
    mins = vals.min(axis=1)
    # second differences bound the gap between grid minimum and true minimum
    d2 = np.diff(vals, n=2, axis=1, append=vals[:, :2])
    curv = np.abs(d2).max(axis=1)
    return mins, curv


def radius_of_positivity(kind, f: TaylorSeries, cfg: ScanConfig | None = None) -> RadiusResult:
    """Largest ``r`` such that the functional is positive on every circle below it.

    Radii are scanned outward on a grid of step ``cfg.r_step`` and the first
    bracketing pair is bisected.  The scan stops short of the nearest zero of
    the denominator, which caps the radius.  Circles are screened on a coarse
    angular grid; any circle whose screened minimum is within a curvature
    margin of zero is re-evaluated on the full grid with refinement.
    """
    cfg = cfg or ScanConfig()
    kind = Kind(kind)
    num, den = _parts(kind, f)
    pole = denominator_zero_radius(kind, f)
    limit = min(cfg.r_max, pole)
    coarse = max(256, 16 * f.degree)

    def exact_min(r: float) -> float:
        return min_on_circle(kind, f, r, cfg).min_value

    n_steps = int(math.floor(limit / cfg.r_step + 1e-9))
    radii = cfg.r_step * np.arange(1, n_steps + 1)
    radii = radii[radii < limit]
    if pole <= cfg.r_max:
        radii = radii[radii < pole * (1 - 1e-9)]

    last_good = 0.0
    crossing = None
    block = max(1, 2**18 // coarse)
    for start in range(0, radii.size, block):
        chunk = radii[start : start + block]
        try:
            mins, curv = _coarse_scan(num, den, chunk, coarse, kind.value)
        except PoleEncountered as exc:
            exc.last_good_radius = last_good
            raise
        suspect = np.flatnonzero(mins - 2.0 * curv <= 0)
        for i in suspect:
            r = float(chunk[i])
            if mins[i] <= 0 or exact_min(r) <= 0:
                crossing = r
                break
        if crossing is not None:
            break
        last_good = float(chunk[-1])

    if crossing is None:
        if pole <= cfg.r_max:
            res = min_on_circle(kind, f, min(pole * (1 - 1e-9), 0.999999999), cfg)
            return RadiusResult(kind.value, pole, abs(res.min_value), "analytic", res.argmin_theta)
        res = min_on_circle(kind, f, cfg.r_max, cfg)
        return RadiusResult(kind.value, cfg.r_max, abs(res.min_value), "scan-limit", res.argmin_theta)

    lo = crossing - cfg.r_step
    if lo > 0:
        lo_value = exact_min(lo)
        # the screen may have passed a circle whose refined minimum is already <= 0
        while lo_value <= 0 and lo > 0:
            crossing, lo = lo, lo - cfg.r_step
            lo_value = exact_min(lo) if lo > 0 else 1.0
    F = lambda r: exact_min(r) if r > 0 else 1.0  # noqa: E731
    root = solve_bracketed(F, max(lo, 0.0), crossing, tol=cfg.bisection_tol)
    r_star = root.root
    res = min_on_circle(kind, f, r_star, cfg)
    delta = max(cfg.bisection_tol, 1e-6)
    slope = (F(r_star + delta) - F(max(r_star - delta, 1e-12))) / (2 * delta)
    return RadiusResult(
        kind.value, r_star, abs(res.min_value), "sign-bisection", res.argmin_theta, slope
    )


def partial_sum_radius(kind, f: TaylorSeries, n: int, cfg: ScanConfig | None = None) -> RadiusResult:
    """:func:`radius_of_positivity` applied to ``s_n(z; f)``."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return radius_of_positivity(kind, partial_sum(f, n), cfg)


# ---------------------------------------------------------------------------
# circle maxima used by the partial-sum radius arguments


def max_convex_ratio(f: TaylorSeries, r: float, samples: int = 4096) -> float:
    """``max_{|z|=r} |z f''/f'|``."""
    a = f.values
    k = np.arange(1, a.size + 1)
    num = k * (k - 1) * a  # z f'' / z^0 as a series in z^(k-1)
    den = k * a
    thetas = _scan.theta_grid(samples)

    def neg(theta):
        z = r * np.exp(1j * np.asarray(theta))
        return -np.abs(_horner(num, z) / _horner(den, z))

    _, value = _scan.refine_min(lambda t: float(neg(t)), thetas, neg(thetas))
    return -value


def s3_lower_bound_expression(kind, mu: float, r: float) -> float:
    """The full lower-bound ratio for the ``kind`` functional of ``s_3(f_mu)``."""
    m, q = abs(mu), 1 - mu * mu
    kind = Kind(kind)
    if kind is Kind.CONVEX:
        return (1 - 2 * m * r - 2.25 * q * r * r) / (1 - m * r - 0.75 * q * r * r)
    if kind is Kind.STARLIKE:
        return (4 - 4 * m * r - 3 * q * r * r) / (4 - 2 * m * r - q * r * r)
    return 1 - m * r - 0.75 * q * r * r


# ---------------------------------------------------------------------------
# the cubic example z + lam z^2/2 + lam z^3/4


def cubic_starlike_bound(lam: float) -> float:
    """``1 - 4 lam/(4 - 3 lam)``; its sign flips at ``lam = 4/7``."""
    return 1 - 4 * lam / (4 - 3 * lam)


def cubic_univalence_bound(lam: float) -> float:
    """``1 - lam - 3 lam/4``; its sign flips at ``lam = 4/7``."""
    return 1 - lam - 0.75 * lam


def cubic_convex_bound(lam: float) -> float:
    """``1 - (5 lam/2)/(1 - 7 lam/4)``; its sign flips at ``lam = 4/17``."""
    return 1 - 2.5 * lam / (1 - 1.75 * lam)
