"""Circle sampling with golden-section refinement of the best grid points."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .series import RawSeries

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def theta_grid(samples: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(samples) / samples


def golden_section_min(fun: Callable[[float], float], a: float, b: float, tol: float = 1e-12):
    """Minimize a unimodal ``fun`` on ``[a, b]``; returns ``(x, fun(x))``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fun(d)
    x = 0.5 * (a + b)
    return x, fun(x)


def local_minima(values: np.ndarray, top: int) -> np.ndarray:
    """Indices of the ``top`` smallest circular local minima of ``values``."""
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    idx = np.flatnonzero((values <= left) & (values <= right))
    if idx.size == 0:
        idx = np.array([int(np.argmin(values))])
    order = np.argsort(values[idx], kind="stable")
    return idx[order[:top]]


def refine_min(
    fun: Callable[[float], float],
    thetas: np.ndarray,
    values: np.ndarray,
    *,
    top: int = 3,
    tol: float = 1e-12,
):
    """Grid minimum polished by golden-section search around local minima.

    Never returns a value above the grid minimum.
    """
    i0 = int(np.argmin(values))
    best_theta, best_value = float(thetas[i0]), float(values[i0])
    h = 2.0 * np.pi / thetas.size
    for i in local_minima(values, top):
        t = float(thetas[i])
        x, fx = golden_section_min(fun, t - h, t + h, tol)
        if fx < best_value:
            best_theta, best_value = x % (2.0 * np.pi), float(fx)
    return best_theta, best_value


def golden_section_min_vec(fun, a: np.ndarray, b: np.ndarray, tol: float = 1e-12):
    """Elementwise golden-section search; ``fun`` maps an array of points to values."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    while np.max(b - a) > tol:
        left = fc <= fd
        # left: keep [a, d]; right: keep [c, b]
        a_new = np.where(left, a, c)
        b_new = np.where(left, d, b)
        c_new = np.where(left, b_new - INV_PHI * (b_new - a_new), d)
        d_new = np.where(left, c, a_new + INV_PHI * (b_new - a_new))
        probe = np.where(left, c_new, d_new)
        fp = fun(probe)
        fc, fd = np.where(left, fp, fd), np.where(left, fc, fp)
        a, b, c, d = a_new, b_new, c_new, d_new
    x = 0.5 * (a + b)
    return x, fun(x)


def batch_extreme(evaluate, n_rows: int, samples: int, *, sense: str = "max",
                  top: int = 3, tol: float = 1e-12, grid_values=None):
    """Extremum over the circle for ``n_rows`` real functions of ``theta`` at once.

    ``evaluate(theta, rows)`` must broadcast: it is called with a ``(1, M)``
    grid against ``(P, 1)`` row indices, then with matching 1-D arrays.
    ``grid_values`` may supply the ``(P, samples)`` grid evaluation directly.
    Returns ``(values, thetas)`` of shape ``(P,)``.
    """
    sign = 1.0 if sense == "min" else -1.0
    thetas = theta_grid(samples)
    rows = np.arange(n_rows)[:, None]
    v = sign * (evaluate(thetas[None, :], rows) if grid_values is None else grid_values)
    i0 = np.argmin(v, axis=1)
    best = v[np.arange(n_rows), i0]
    best_theta = thetas[i0]
    is_min = (v <= np.roll(v, 1, axis=1)) & (v <= np.roll(v, -1, axis=1))
    ranked = np.where(is_min, v, np.inf)
    k = min(top, samples)
    idx = np.argpartition(ranked, k - 1, axis=1)[:, :k]
    cand_rows = np.repeat(np.arange(n_rows), k)
    centers = thetas[idx.ravel()]
    h = 2.0 * np.pi / samples
    x, fx = golden_section_min_vec(
        lambda t: sign * evaluate(t, cand_rows), centers - h, centers + h, tol
    )
    fx = fx.reshape(n_rows, k)
    x = x.reshape(n_rows, k)
    j = np.argmin(fx, axis=1)
    refined = fx[np.arange(n_rows), j]
    better = refined < best
    best = np.where(better, refined, best)
    best_theta = np.where(better, x[np.arange(n_rows), j] % (2.0 * np.pi), best_theta)
    return sign * best, best_theta


def polynomial_rows(coeffs: np.ndarray, radii: np.ndarray, absolute: bool = True):
    """``evaluate`` callback for :func:`batch_extreme`: ``|p_row(r_row e^{i theta})|``.

    With ``absolute=False`` the complex values are returned instead.
    """
    C = np.asarray(coeffs, dtype=np.complex128)
    nz = np.flatnonzero(np.any(C != 0, axis=0))
    C = C[:, : nz[-1] + 1] if nz.size else C[:, :1]
    radii = np.asarray(radii, dtype=float)

    def evaluate(theta, rows):
        z = radii[rows] * np.exp(1j * theta)
        acc = C[rows, -1] * np.ones_like(z)
        for k in range(C.shape[1] - 2, -1, -1):
            acc = acc * z + C[rows, k]
        return np.abs(acc) if absolute else acc

    return evaluate


def _modulus_grid(coeffs, radii, samples):
    # p(r e^{i t_j}) = sum_k c_k r^k e^{2 pi i jk/M}, all rows in one FFT
    k = np.arange(coeffs.shape[1])
    scaled = coeffs * radii[:, None] ** k[None, :]
    return np.abs(np.fft.ifft(scaled, n=samples, axis=1)) * samples


def modulus_extreme_batch(coeffs: np.ndarray, radii, samples: int = 4096, *,
                          sense: str = "max", tol: float = 1e-12):
    """Row-wise max (or min) of ``|p_i(z)|`` on ``|z| = r_i`` for a ``(P, D)`` matrix."""
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.complex128))
    samples = max(samples, 8 * coeffs.shape[1])
    radii = np.array(np.broadcast_to(np.asarray(radii, dtype=float), (coeffs.shape[0],)))
    grid = _modulus_grid(coeffs, radii, samples)
    return batch_extreme(polynomial_rows(coeffs, radii), coeffs.shape[0], samples,
                         sense=sense, tol=tol, grid_values=grid)


def max_modulus_batch(coeffs: np.ndarray, radii, samples: int = 4096, tol: float = 1e-12):
    """Row-wise ``max_{|z| = r_i} |p_i(z)|``."""
    return modulus_extreme_batch(coeffs, radii, samples, sense="max", tol=tol)


def max_modulus(p: RawSeries, r: float = 1.0, samples: int = 4096, tol: float = 1e-12):
    """``max_{|z| = r} |p(z)|`` and the maximizing angle."""
    values, thetas = max_modulus_batch(p.values[None, :], [r], samples, tol)
    return float(values[0]), float(thetas[0])
