"""Truncated power series normalized by f(0) = 0, f'(0) = 1.

Two containers live here.  :class:`TaylorSeries` stores ``a_1 .. a_N`` of
``f(z) = z + a_2 z^2 + ... + a_N z^N`` and always has ``a_1 == 1``.
:class:`RawSeries` stores ``b_0 .. b_N`` with no normalization and carries the
derived objects (``f'``, ``z f' - f``, ``1/f'``, tails).

Coefficients given as ints or :class:`fractions.Fraction` are kept exact
(object arrays) so that coefficient identities can be checked without
rounding; anything else is stored as ``complex128``.  Evaluation always runs in
floating point.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import EmptyInput, NormalizationError, ZeroConstantTerm

DEFAULT_DEGREE = 64


def default_degree() -> int:
    """Working degree, overridable through ``GFT_DEFAULT_DEGREE``."""
    value = os.environ.get("GFT_DEFAULT_DEGREE")
    if not value:
        return DEFAULT_DEGREE
    degree = int(value)
    if degree < 1:
        raise ValueError(f"GFT_DEFAULT_DEGREE must be >= 1, got {degree}")
    return degree


def _is_exact_scalar(c) -> bool:
    return isinstance(c, Rational) and not isinstance(c, bool)


def _coerce(coeffs: Iterable) -> np.ndarray:
    items = list(coeffs.tolist() if isinstance(coeffs, np.ndarray) else coeffs)
    if items and all(_is_exact_scalar(c) for c in items):
        out = np.empty(len(items), dtype=object)
        out[:] = [Fraction(c) for c in items]
        return out
    return np.asarray(items, dtype=np.complex128).reshape(-1)


def _join(*arrays: np.ndarray) -> list[np.ndarray]:
    """Bring arrays to a common representation (exact only if all are)."""
    if all(a.dtype == object for a in arrays):
        return list(arrays)
    return [np.asarray(a, dtype=np.complex128) for a in arrays]


def _zeros_like_kind(n: int, like: np.ndarray) -> np.ndarray:
    if like.dtype == object:
        out = np.empty(n, dtype=object)
        out[:] = [Fraction(0)] * n
        return out
    return np.zeros(n, dtype=np.complex128)


def _int_weights(values, exact: bool) -> np.ndarray:
    """Integer multipliers; Python ints on object arrays keep Fractions exact."""
    if exact:
        return np.array([int(v) for v in values], dtype=object)
    return np.asarray(values, dtype=float)


def trim(c: np.ndarray) -> np.ndarray:
    """Drop trailing zero coefficients, keeping at least one entry."""
    nz = np.flatnonzero(c)
    return c[: nz[-1] + 1] if nz.size else c[:1]


def _horner(coeffs: np.ndarray, z):
    """Nested evaluation of sum_k coeffs[k] z^k; ``z`` may be an array."""
    c = trim(np.asarray(coeffs, dtype=np.complex128))
    z = np.asarray(z, dtype=np.complex128)
    if c.size == 1:
        acc = np.full(z.shape, c[0], dtype=np.complex128)
    else:
        acc = c[-1] * z + c[-2]
        for ck in c[-3::-1]:
            acc *= z
            acc += ck
    return acc if acc.shape else complex(acc)


def horner_scalar(coeffs: list, z: complex) -> complex:
    """Pure-Python Horner for one point; ``coeffs`` ascending, plain complex."""
    n = len(coeffs)
    while n > 1 and coeffs[n - 1] == 0:
        n -= 1
    coeffs = coeffs[:n]
    acc = coeffs[-1]
    for ck in coeffs[-2::-1]:
        acc = acc * z + ck
    return acc


@dataclass(frozen=True, eq=False)
class RawSeries:
    """Polynomial ``b_0 + b_1 z + ... + b_N z^N`` without normalization."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _coerce(self.coeffs)
        if arr.size == 0:
            raise EmptyInput("a RawSeries needs at least the constant term")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_exact(self) -> bool:
        return self.coeffs.dtype == object

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=np.complex128)

    def padded(self, degree: int) -> np.ndarray:
        """Coefficients ``b_0 .. b_degree``, zero-filled or truncated."""
        out = _zeros_like_kind(degree + 1, self.coeffs)
        m = min(degree, self.degree) + 1
        out[:m] = self.coeffs[:m]
        return out

    def truncate(self, degree: int) -> "RawSeries":
        return RawSeries(self.padded(degree))

    def __add__(self, other: "RawSeries") -> "RawSeries":
        n = max(self.degree, other.degree)
        a, b = _join(self.padded(n), other.padded(n))
        return RawSeries(a + b)

    def __sub__(self, other: "RawSeries") -> "RawSeries":
        n = max(self.degree, other.degree)
        a, b = _join(self.padded(n), other.padded(n))
        return RawSeries(a - b)

    def __mul__(self, other):
        if isinstance(other, RawSeries):
            return multiply(self, other)
        return RawSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"RawSeries(degree={self.degree}, coeffs={self.coeffs.tolist()!r})"


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    """``f(z) = z + a_2 z^2 + ... + a_N z^N`` with ``coeffs[k-1] == a_k``."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _coerce(self.coeffs)
        if arr.size == 0:
            raise EmptyInput("a TaylorSeries needs at least a_1")
        if arr[0] != 1:
            raise NormalizationError(f"a_1 must equal 1 exactly, got {arr[0]!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return self.coeffs.size

    @property
    def is_exact(self) -> bool:
        return self.coeffs.dtype == object

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=np.complex128)

    def coeff(self, k: int):
        """``a_k`` for any ``k >= 1`` (zero beyond the stored degree)."""
        if k < 1:
            raise IndexError("TaylorSeries coefficients start at k = 1")
        if k > self.degree:
            return Fraction(0) if self.is_exact else 0j
        return self.coeffs[k - 1]

    def as_raw(self) -> RawSeries:
        return RawSeries(np.concatenate([_zeros_like_kind(1, self.coeffs), self.coeffs]))

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"TaylorSeries(degree={self.degree}, coeffs={self.coeffs.tolist()!r})"


AnySeries = Union[TaylorSeries, RawSeries]


def make_series(coeffs: Sequence) -> TaylorSeries:
    """Build ``z + a_2 z^2 + ...`` from ``[a_1, a_2, ...]`` (``a_1`` must be 1)."""
    return TaylorSeries(coeffs)


def identity(degree: int = 1) -> TaylorSeries:
    out = [Fraction(0)] * degree
    out[0] = Fraction(1)
    return TaylorSeries(out)


def evaluate(f: AnySeries, z):
    """Evaluate ``f`` at ``z`` (scalar or array) by Horner's scheme."""
    if isinstance(f, TaylorSeries):
        zz = np.asarray(z, dtype=np.complex128)
        out = zz * _horner(f.coeffs, zz)
        return out if np.ndim(out) else complex(out)
    return _horner(f.coeffs, z)


def derivative(f: AnySeries) -> RawSeries:
    """Coefficientwise derivative; ``f'`` of a TaylorSeries has constant term 1."""
    if isinstance(f, TaylorSeries):
        return RawSeries(f.coeffs * _int_weights(range(1, f.degree + 1), f.is_exact))
    if f.degree == 0:
        return RawSeries(_zeros_like_kind(1, f.coeffs))
    return RawSeries(f.coeffs[1:] * _int_weights(range(1, f.degree + 1), f.is_exact))


def defect_series(f: TaylorSeries) -> RawSeries:
    """``g(z) = z f'(z) - f(z)``, whose coefficients are ``(k - 1) a_k``."""
    weights = _int_weights([max(k - 1, 0) for k in range(f.degree + 1)], f.is_exact)
    return RawSeries(f.as_raw().coeffs * weights)


def times_z(p: RawSeries) -> RawSeries:
    """``z p(z)``."""
    return RawSeries(np.concatenate([_zeros_like_kind(1, p.coeffs), p.coeffs]))


def partial_sum(f: TaylorSeries, n: int) -> TaylorSeries:
    """``s_n(z; f) = z + a_2 z^2 + ... + a_n z^n``."""
    if n < 1:
        raise ValueError(f"partial sums need n >= 1, got {n}")
    return TaylorSeries(f.coeffs[: min(n, f.degree)])


def tail(f: TaylorSeries, n: int) -> RawSeries:
    """``rho_n(z; f) = f - s_n``, kept at the full degree of ``f``."""
    raw = f.as_raw().coeffs.copy()
    raw[: min(n, f.degree) + 1] = _zeros_like_kind(min(n, f.degree) + 1, raw)
    return RawSeries(raw)


def convolve(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    """Hadamard product: coefficients ``a_k b_k`` up to the smaller degree."""
    if not (isinstance(f, TaylorSeries) and isinstance(g, TaylorSeries)):
        raise NormalizationError("convolution is defined here for normalized series only")
    n = min(f.degree, g.degree)
    a, b = _join(f.coeffs[:n], g.coeffs[:n])
    return TaylorSeries(a * b)


def multiply(p: RawSeries, q: RawSeries, degree: int | None = None) -> RawSeries:
    """Cauchy product, truncated at ``degree`` (default: full product)."""
    a, b = _join(p.coeffs, q.coeffs)
    out = RawSeries(np.convolve(a, b))
    return out if degree is None else out.truncate(degree)


def reciprocal_series(p: RawSeries, degree: int | None = None) -> RawSeries:
    """Coefficients ``d_0 .. d_N`` of ``1/p(z)``.

    Solves ``sum_{k=0}^{m} p_{m-k} d_k = 0`` for ``m >= 1``; with ``p = f'``
    this is the recurrence ``m a_m + sum_{k=1}^{m-1} (m-k) a_{m-k} d_k = 0``.
    """
    degree = p.degree if degree is None else degree
    b = p.padded(degree)
    if b[0] == 0:
        raise ZeroConstantTerm("cannot invert a series with zero constant term")
    d = _zeros_like_kind(degree + 1, b)
    d[0] = (Fraction(1) / b[0]) if p.is_exact else 1.0 / b[0]
    for m in range(1, degree + 1):
        acc = b[m] * d[0]
        for k in range(1, m):
            acc = acc + b[m - k] * d[k]
        d[m] = -acc * d[0]
    return RawSeries(d)


# ---------------------------------------------------------------------------
# JSON coefficient files


def to_json_dict(f: TaylorSeries) -> dict:
    vals = f.values
    return {
        "degree": f.degree,
        "coeffs": [[float(c.real) + 0.0, float(c.imag) + 0.0] for c in vals],
    }


def from_json_dict(data: dict) -> TaylorSeries:
    """Inverse of :func:`to_json_dict`; raises ``ValueError`` on malformed input."""
    try:
        pairs = data["coeffs"]
        coeffs = [complex(float(re), float(im)) for re, im in pairs]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed coefficient data: {exc}") from exc
    degree = data.get("degree", len(coeffs))
    if degree != len(coeffs):
        raise ValueError(f"degree {degree} does not match {len(coeffs)} coefficients")
    return TaylorSeries(coeffs)


def save_series(f: TaylorSeries, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(f), fh)
        fh.write("\n")


def load_series(path) -> TaylorSeries:
    with open(path) as fh:
        return from_json_dict(json.load(fh))
