"""Members of the classes Omega_lambda and tests for membership.

``f`` belongs to Omega_lambda when ``|z f'(z) - f(z)| < lambda`` on the unit
disk; Omega is the case ``lambda = 1/2``.  Every member is generated by

    f(z) = z + lambda z^2 * integral_0^1 phi(z t) dt,    |phi| <= 1,

which on coefficients reads ``a_{j+2} = lambda * b_j / (j + 1)``.
"""

from __future__ import annotations

import enum
import weakref
from dataclasses import asdict, dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import _scan
from .errors import DomainError, InvalidLambda, NotCertified
from .reports import BoundReport
from .series import (
    RawSeries,
    TaylorSeries,
    _horner,
    default_degree,
    defect_series,
    derivative,
)

OMEGA_LAMBDA = Fraction(1, 2)
DEFAULT_TOL = 1e-9
DEFAULT_SAMPLES = 4096


class Verdict(str, enum.Enum):
    SUFFICIENT = "sufficient"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class MembershipCertificate:
    """Outcome of a membership test.

    For a polynomial ``g = z f' - f`` with ``g(0) = 0`` the open-disk bound
    ``|g| < lambda`` holds iff ``max_{|z|=1} |g| <= lambda``: by maximum
    modulus an interior point with ``|g| = lambda`` would force ``g`` to be
    constant, and ``g(0) = 0`` rules that out unless ``g == 0``.
    """

    lam: float
    defect: float
    method: str
    margin: float
    samples: int
    member: bool

    def to_dict(self) -> dict:
        out = asdict(self)
        out["lambda"] = out.pop("lam")
        return {k: out[k] for k in ("lambda", "defect", "method", "margin", "samples", "member")}


@dataclass(frozen=True)
class PhiSpec:
    """Polynomial multiplier ``phi(z) = sum_j b_j z^j``.

    ``sum |b_j| <= 1`` certifies ``|phi| <= 1`` on the disk.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def sup_norm_bound(self) -> float:
        return float(sum(abs(complex(b)) for b in self.coeffs))

    @property
    def certified(self) -> bool:
        return self.sup_norm_bound <= 1.0 + 1e-15


def _check_lambda(lam) -> None:
    if not lam > 0:
        raise InvalidLambda(f"lambda must be positive, got {lam!r}")


def from_phi(phi: PhiSpec, lam, degree: int | None = None) -> TaylorSeries:
    """Integrate ``z f' - f = lam z^2 phi`` into a normalized series of ``degree``."""
    _check_lambda(lam)
    degree = default_degree() if degree is None else degree
    exact = isinstance(lam, Rational) and all(isinstance(b, Rational) for b in phi.coeffs)
    zero = Fraction(0) if exact else 0j
    coeffs = [Fraction(1) if exact else 1 + 0j] + [zero] * (degree - 1)
    for j, b in enumerate(phi.coeffs):
        k = j + 2
        if k > degree:
            break
        coeffs[k - 1] = lam * b / (j + 1) if exact else complex(lam) * complex(b) / (j + 1)
    return TaylorSeries(coeffs)


def phi_mobius(mu, degree: int) -> PhiSpec:
    """Taylor coefficients of ``(mu + z)/(1 + mu z)`` up to ``z^degree``."""
    if abs(mu) > 1:
        raise DomainError(f"|mu| must be <= 1, got {mu!r}")
    coeffs = [mu] + [(1 - mu * mu) * (-mu) ** (j - 1) for j in range(1, degree + 1)]
    return PhiSpec(coeffs)


def family_f_mu(mu, degree: int | None = None) -> TaylorSeries:
    """The Omega member generated by ``phi = (mu + z)/(1 + mu z)``.

    ``a_2 = mu/2`` and ``a_{k+2} = (1 - mu^2)(-mu)^{k-1} / (2(k+1))``.  Pass a
    ``Fraction`` for exact coefficients.
    """
    degree = default_degree() if degree is None else degree
    if abs(mu) > 1:
        raise DomainError(f"|mu| must be <= 1, got {mu!r}")
    exact = isinstance(mu, Rational)
    half = Fraction(1, 2) if exact else 0.5
    coeffs = [Fraction(1) if exact else 1.0]
    if degree >= 2:
        coeffs.append(mu * half)
    for k in range(1, degree - 1):
        coeffs.append((1 - mu * mu) * (-mu) ** (k - 1) * half / (k + 1))
    return TaylorSeries(coeffs)


def cubic_example(lam, degree: int = 3) -> TaylorSeries:
    """``z + lam z^2/2 + lam z^3/4``, a member of Omega_lam with defect exactly lam."""
    _check_lambda(lam)
    if degree < 3:
        raise DomainError("the cubic example needs degree >= 3")
    if isinstance(lam, Rational):
        coeffs = [Fraction(1), lam * Fraction(1, 2), lam * Fraction(1, 4)]
        coeffs += [Fraction(0)] * (degree - 3)
    else:
        coeffs = [1.0, lam / 2, lam / 4] + [0.0] * (degree - 3)
    return TaylorSeries(coeffs)


def extremal_k(k: int, lam=OMEGA_LAMBDA, degree: int | None = None) -> TaylorSeries:
    """``z + lam/(k-1) z^k``: equality case of ``|a_k| <= lam/(k-1)``."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    degree = k if degree is None else max(degree, k)
    exact = isinstance(lam, Rational)
    zero = Fraction(0) if exact else 0.0
    coeffs = [Fraction(1) if exact else 1.0] + [zero] * (degree - 1)
    coeffs[k - 1] = Fraction(lam) / (k - 1) if exact else lam / (k - 1)
    return TaylorSeries(coeffs)


def quadratic(c) -> TaylorSeries:
    """``z + c z^2``."""
    return TaylorSeries([Fraction(1) if isinstance(c, Rational) else 1.0, c])


# ---------------------------------------------------------------------------
# membership


def boundary_defect(f: TaylorSeries, samples: int = DEFAULT_SAMPLES) -> float:
    """``max_{|z|=1} |z f'(z) - f(z)|`` for the polynomial ``f``."""
    if samples < 256:
        raise ValueError("boundary scans need at least 256 samples")
    value, _ = _scan.max_modulus(defect_series(f), 1.0, samples)
    return float(value)


def coefficient_defect_bound(f: TaylorSeries) -> float:
    """``sum_k (k-1)|a_k|``, an upper bound for the boundary defect."""
    k = np.arange(1, f.degree + 1)
    return float(np.sum((k - 1) * np.abs(f.values)))


def is_member(
    f: TaylorSeries,
    lam=OMEGA_LAMBDA,
    tol: float = DEFAULT_TOL,
    *,
    samples: int = DEFAULT_SAMPLES,
    method: str = "boundary-scan",
) -> MembershipCertificate:
    """Test ``f`` in Omega_lam; ``member`` iff the defect is at most ``lam + tol``.

    ``method="coefficient-sum"`` replaces the scan by the coefficient bound,
    which can only certify, never refute, membership exactly.
    """
    _check_lambda(lam)
    if method == "boundary-scan":
        defect = boundary_defect(f, samples)
    elif method == "coefficient-sum":
        defect, samples = coefficient_defect_bound(f), 0
    else:
        raise ValueError(f"unknown membership method {method!r}")
    lam = float(lam)
    return MembershipCertificate(
        lam=lam,
        defect=defect,
        method=method,
        margin=lam - defect,
        samples=samples,
        member=defect <= lam + tol,
    )


# series are immutable, so a certificate stays valid for the object's lifetime
_certificates: "weakref.WeakKeyDictionary[TaylorSeries, dict]" = weakref.WeakKeyDictionary()


def require_member(f: TaylorSeries, lam=OMEGA_LAMBDA, tol: float = DEFAULT_TOL):
    """Certificate for ``f`` in Omega_lam, or :class:`NotCertified`."""
    cache = _certificates.setdefault(f, {})
    key = (float(lam), tol)
    if key not in cache:
        cache[key] = is_member(f, lam, tol)
    cert = cache[key]
    if not cert.member:
        raise NotCertified(f"defect {cert.defect:.12g} exceeds lambda = {float(lam):g}")
    return cert


def coeff_sum_sufficient(f: TaylorSeries, lam) -> Verdict:
    """``sum (k-1)|a_k| < lam`` implies membership."""
    ok = coefficient_defect_bound(f) < float(lam)
    return Verdict.SUFFICIENT if ok else Verdict.INCONCLUSIVE


def second_derivative_max(f: TaylorSeries, samples: int = DEFAULT_SAMPLES) -> float:
    f2 = derivative(derivative(f))
    return float(_scan.max_modulus(f2, 1.0, samples)[0])


def second_deriv_sufficient(f: TaylorSeries, lam, *, tol: float = 1e-12) -> Verdict:
    """``|f''| <= 2 lam`` on the disk implies membership (and 2 lam is sharp)."""
    ok = second_derivative_max(f) <= 2 * float(lam) + tol
    return Verdict.SUFFICIENT if ok else Verdict.INCONCLUSIVE


def operator_series(f: TaylorSeries) -> RawSeries:
    """``z^2 f'' + z f' - f``; its coefficients are ``(k^2 - 1) a_k``."""
    k = np.arange(0, f.degree + 1)
    return RawSeries(f.as_raw().values * (k * k - 1.0) * (k > 0))


def operator_sufficient(f: TaylorSeries, lam, *, tol: float = 1e-12) -> Verdict:
    """``|z^2 f'' + z f' - f| <= 3 lam`` implies membership (and 3 lam is sharp)."""
    value = _scan.max_modulus(operator_series(f), 1.0, DEFAULT_SAMPLES)[0]
    return Verdict.SUFFICIENT if value <= 3 * float(lam) + tol else Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class SharpnessWitness:
    """``f`` obeys the relaxed condition with constant ``eta`` yet ``f'`` vanishes
    at ``critical_point`` inside the disk of radius ``1/(2 lam)``."""

    f: TaylorSeries
    eta: float
    critical_point: float
    univalence_radius: float

    @property
    def inside(self) -> bool:
        return abs(self.critical_point) < self.univalence_radius


def second_deriv_witness(lam, eta) -> SharpnessWitness:
    """``z + (eta/2) z^2``: ``|f''| = eta`` and ``f'(-1/eta) = 0``."""
    return SharpnessWitness(quadratic(eta / 2), eta, -1.0 / eta, 1.0 / (2 * lam))


def operator_witness(lam, eta) -> SharpnessWitness:
    """``z + (eta/3) z^2``: operator modulus ``eta`` and ``f'(-3/(2 eta)) = 0``."""
    return SharpnessWitness(quadratic(eta / 3), eta, -3.0 / (2 * eta), 1.0 / (2 * lam))


# ---------------------------------------------------------------------------
# bounds for certified members


def coefficient_bounds_check(f: TaylorSeries, lam=OMEGA_LAMBDA) -> list[BoundReport]:
    """``|a_k| <= lam/(k-1)`` for every stored ``k >= 2``."""
    require_member(f, lam)
    lam = float(lam)
    vals = f.values
    return [
        BoundReport(f"|a_{k}|", float(abs(vals[k - 1])), lam / (k - 1), tol=1e-12, inputs={"k": k})
        for k in range(2, f.degree + 1)
    ]


def growth_distortion_sweep(
    f: TaylorSeries, lam=OMEGA_LAMBDA, rs=(0.5,), samples: int = DEFAULT_SAMPLES
) -> list[BoundReport]:
    """:func:`growth_distortion_check` on several circles with one batched scan."""
    rs = [float(r) for r in rs]
    for r in rs:
        if not 0 < r < 1:
            raise DomainError(f"r must lie in (0, 1), got {r}")
    require_member(f, lam)
    lam = float(lam)
    fz = f.as_raw().values
    fp = np.zeros_like(fz)
    fp[: f.degree] = derivative(f).values
    rows = np.vstack([np.tile(fz, (len(rs), 1)), np.tile(fp, (len(rs), 1))])
    radii = np.array(rs + rs)
    lo, _ = _scan.modulus_extreme_batch(rows, radii, samples, sense="min")
    hi, _ = _scan.max_modulus_batch(rows, radii, samples)
    m = len(rs)
    out = []
    tol = 1e-9
    for i, r in enumerate(rs):
        inputs = {"r": r, "lambda": lam}
        out += [
            BoundReport("min|f|", float(lo[i]), r - lam * r * r, "lower", tol, inputs),
            BoundReport("max|f|", float(hi[i]), r + lam * r * r, "upper", tol, inputs),
            BoundReport("min|f'|", float(lo[m + i]), 1 - 2 * lam * r, "lower", tol, inputs),
            BoundReport("max|f'|", float(hi[m + i]), 1 + 2 * lam * r, "upper", tol, inputs),
        ]
    return out


def growth_distortion_check(
    f: TaylorSeries, lam=OMEGA_LAMBDA, r: float = 0.5, samples: int = DEFAULT_SAMPLES
) -> list[BoundReport]:
    """``r - lam r^2 <= |f| <= r + lam r^2`` and ``1 - 2 lam r <= |f'| <= 1 + 2 lam r``."""
    return growth_distortion_sweep(f, lam, [r], samples)


def starlike_deviation_check(
    f: TaylorSeries, r: float, samples: int = DEFAULT_SAMPLES
) -> BoundReport:
    """``max_{|z|=r} |z f'/f - 1| <= r/(2 - r)`` for members of Omega."""
    require_member(f, OMEGA_LAMBDA)
    g = defect_series(f).values[1:]  # g(z)/z
    h = f.values  # f(z)/z
    thetas = _scan.theta_grid(samples)

    def neg_ratio(theta):
        z = r * np.exp(1j * np.asarray(theta))
        return -np.abs(_horner(g, z) / _horner(h, z))

    vals = neg_ratio(thetas)
    _, neg = _scan.refine_min(lambda t: float(neg_ratio(t)), thetas, vals)
    return BoundReport("max|zf'/f-1|", -neg, r / (2 - r), tol=1e-9, inputs={"r": r})


# ---------------------------------------------------------------------------
# random members


def random_phi(rng: np.random.Generator, max_power: int = 16, mass: float | None = None) -> PhiSpec:
    """Random polynomial multiplier with ``sum |b_j| = mass <= 1``.

    A Dirichlet split of the total mass over a few random powers with uniform
    random phases; half the draws put the full unit mass on the boundary.
    """
    if mass is None:
        mass = 1.0 if rng.random() < 0.5 else float(rng.uniform(0.05, 1.0))
    n_terms = int(rng.integers(1, min(6, max_power + 1) + 1))
    powers = rng.choice(max_power + 1, size=n_terms, replace=False)
    weights = rng.dirichlet(np.ones(n_terms)) * mass
    phases = np.exp(2j * np.pi * rng.random(n_terms))
    coeffs = np.zeros(max_power + 1, dtype=np.complex128)
    coeffs[powers] = weights * phases
    return PhiSpec(coeffs.tolist())


def random_member(
    rng: np.random.Generator, lam=OMEGA_LAMBDA, degree: int | None = None, max_power: int = 16
) -> TaylorSeries:
    """A certified member of Omega_lam of the given degree."""
    degree = default_degree() if degree is None else degree
    phi = random_phi(rng, min(max_power, max(degree - 2, 0)))
    return from_phi(phi, float(lam), degree)


def random_polynomial(rng: np.random.Generator, degree: int = 8, scale: float = 1.0) -> TaylorSeries:
    """Normalized polynomial with ``a_k ~ scale * CN(0, 1) / k``; usually not a member."""
    k = np.arange(2, degree + 1)
    tail = (rng.normal(size=k.size) + 1j * rng.normal(size=k.size)) * scale / k
    return TaylorSeries(np.concatenate([[1.0 + 0j], tail]))


def starlike_radius_bound(lam) -> float:
    """Radius of starlikeness ``1/(2 lam)`` of Omega_lam, capped at 1."""
    _check_lambda(lam)
    return min(1.0, 1.0 / (2.0 * float(lam)))


def convexity_radius_bound(lam) -> float:
    _check_lambda(lam)
    return min(1.0, 1.0 / (4.0 * float(lam)))

