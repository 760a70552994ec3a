"""Chebyshev-Gauss-Lobatto grids, differentiation matrices and transforms.

This module provides the collocation machinery used by the 1D and 2D
solvers: Lobatto grids on ``[-L, L]``, first- and second-order
differentiation matrices (with the interior restriction that imposes
homogeneous Dirichlet conditions), forward/inverse Chebyshev coefficient
transforms in one and two dimensions, and barycentric resampling of grid
data at arbitrary points.

Conventions
-----------
* Grid points are stored in the classical descending order
  ``x_j = L cos(j pi / n)``, from ``+L`` down to ``-L``.
* Differentiation matrices follow Trefethen (2000), *Spectral Methods in
  MATLAB*, chapter 6, with diagonals fixed by the negative-row-sum rule.
* Matrices for half-width ``L`` are the reference ``[-1, 1]`` matrices
  scaled by ``(1/L)**order``, exactly.
* Coefficients are those of the interpolant ``sum_k a_k T_k(x / L)``.

All returned objects are immutable; every function here is pure and safe
to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as _fft

from .errors import InvalidArgumentError

__all__ = [
    "Grid1D",
    "DiffMatrix",
    "ChebCoeffs",
    "cheb_points",
    "diff_matrix",
    "second_diff_matrix",
    "cheb_transform",
    "inverse_cheb_transform",
    "cheb_transform_2d",
    "inverse_cheb_transform_2d",
    "barycentric_resample",
    "barycentric_resample_2d",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Grid1D:
    """Chebyshev-Gauss-Lobatto grid on ``[-half_width, half_width]``.

    Attributes
    ----------
    n : int
        Polynomial order; the grid has ``n + 1`` points.
    half_width : float
        Half-width ``L`` of the domain.
    points : ndarray, shape (n + 1,)
        Nodes ``L cos(j pi / n)`` in descending order, symmetrized so that
        ``points[j] == -points[n - j]`` exactly and the endpoints are
        exactly ``+L`` and ``-L``.
    """

    n: int
    half_width: float
    points: np.ndarray


@dataclass(frozen=True)
class DiffMatrix:
    """Dense collocation differentiation matrix on a :class:`Grid1D`.

    Attributes
    ----------
    order : int
        Derivative order (1 or 2).
    n : int
        Grid order; ``entries`` is ``(n + 1) x (n + 1)``.
    entries : ndarray
        The full differentiation matrix.
    interior : ndarray or None
        For ``order == 2``, the ``(n - 1) x (n - 1)`` block obtained by
        deleting the first and last rows and columns (homogeneous
        Dirichlet restriction); ``None`` for ``order == 1``.
    """

    order: int
    n: int
    entries: np.ndarray
    interior: np.ndarray | None = None


@dataclass(frozen=True)
class ChebCoeffs:
    """Chebyshev-series coefficients ``a_k`` (1D vector or 2D matrix)."""

    coeffs: np.ndarray


def _unit_points(n: int) -> np.ndarray:
    """Lobatto nodes ``cos(j pi / n)`` on ``[-1, 1]``, exactly symmetrized.

    The upper half is mirrored onto the lower half so that
    ``x_j == -x_{n-j}`` holds exactly in floating point, with
    ``x_{n/2} == 0`` exactly for even ``n``; this keeps parity checks and
    center-value lookups free of rounding slack.
    """
    x = np.cos(np.pi * np.arange(n + 1) / n)
    half = n // 2
    x[0] = 1.0
    x[n - half:] = -x[:half + 1][::-1]
    if n % 2 == 0:
        x[half] = 0.0
    return x


def cheb_points(n: int, half_width: float = 1.0) -> Grid1D:
    """Construct the Chebyshev-Gauss-Lobatto grid of order ``n``.

    Parameters
    ----------
    n : int
        Polynomial order, at least 1; the grid has ``n + 1`` points.
    half_width : float
        Half-width ``L > 0`` of the domain ``[-L, L]``.

    Returns
    -------
    Grid1D
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidArgumentError(f"grid order must be an integer >= 1, got {n!r}")
    if not np.isfinite(half_width) or half_width <= 0.0:
        raise InvalidArgumentError(f"half-width must be positive, got {half_width!r}")
    L = float(half_width)
    return Grid1D(n=int(n), half_width=L, points=_readonly(L * _unit_points(n)))


def _diff_matrix_reference(n: int) -> np.ndarray:
    """First-derivative matrix on the unit Lobatto grid (Trefethen ch. 6)."""
    x = _unit_points(n)
    c = np.ones(n + 1)
    c[0] = 2.0
    c[-1] = 2.0
    c *= (-1.0) ** np.arange(n + 1)
    X = np.tile(x[:, None], (1, n + 1))
    D = np.outer(c, 1.0 / c) / (X - X.T + np.eye(n + 1))
    # negative-sum trick: rows of D annihilate constants exactly
    D -= np.diag(D.sum(axis=1))
    return D


def diff_matrix(grid: Grid1D) -> DiffMatrix:
    """First-order differentiation matrix for ``grid``.

    The returned matrix ``D`` maps samples of a function at the grid
    points to samples of the derivative of its degree-``n`` interpolant;
    it is exact for polynomials of degree up to ``n``.  It is built on
    the unit grid and scaled by ``1/L``, so grids of different widths
    share bitwise-identical reference entries.
    """
    D = _diff_matrix_reference(grid.n)
    return DiffMatrix(order=1, n=grid.n, entries=_readonly(D / grid.half_width))


def second_diff_matrix(grid: Grid1D) -> DiffMatrix:
    """Second-order differentiation matrix, as the square of the first.

    The ``interior`` field holds the matrix with first/last rows and
    columns deleted, which applies the operator to functions vanishing at
    both endpoints (homogeneous Dirichlet conditions).
    """
    if grid.n < 2:
        raise InvalidArgumentError("second derivative needs grid order >= 2")
    D = _diff_matrix_reference(grid.n)
    D2 = (D @ D) / grid.half_width**2
    return DiffMatrix(
        order=2,
        n=grid.n,
        entries=_readonly(D2),
        interior=_readonly(D2[1:-1, 1:-1]),
    )


# ---------------------------------------------------------------------------
# Coefficient transforms
#
# With values v_j at the Lobatto nodes x_j = L cos(j pi / n) the
# interpolant is sum_k a_k T_k(x / L) and
#
#     a_k = (d_k / n) [ v_0 + (-1)^k v_n + 2 sum_{j=1}^{n-1} v_j cos(pi j k / n) ]
#
# with d_k = 1/2 for k in {0, n} and 1 otherwise; the bracket is the
# type-I discrete cosine transform (the real even-symmetric FFT of size
# 2n).  A direct O(n^2) summation is kept alongside the fast path and the
# two are tested to agree to 1e-13.
# ---------------------------------------------------------------------------


def _dct1_fast(values: np.ndarray, axis: int) -> np.ndarray:
    return _fft.dct(values, type=1, axis=axis)


def _dct1_direct(values: np.ndarray, axis: int) -> np.ndarray:
    n = values.shape[axis] - 1
    j = np.arange(n + 1)
    C = np.cos(np.pi * np.outer(j, j) / n)
    W = 2.0 * C
    W[:, 0] = 1.0
    W[:, n] = (-1.0) ** j
    return np.moveaxis(W @ np.moveaxis(values, axis, 0), 0, axis)


def _forward_1d(values: np.ndarray, axis: int, method: str) -> np.ndarray:
    n = values.shape[axis] - 1
    kern = _dct1_direct if method == "direct" else _dct1_fast
    a = kern(values, axis) / n
    sl = [slice(None)] * values.ndim
    for end in (0, n):
        sl[axis] = end
        a[tuple(sl)] /= 2.0
    return a


def _inverse_1d(coeffs: np.ndarray, axis: int, method: str) -> np.ndarray:
    w = np.array(coeffs, dtype=float, copy=True)
    sl = [slice(None)] * w.ndim
    sl[axis] = slice(1, -1)
    w[tuple(sl)] /= 2.0
    kern = _dct1_direct if method == "direct" else _dct1_fast
    return kern(w, axis)


def _check_method(method: str) -> str:
    if method not in ("auto", "fast", "direct"):
        raise InvalidArgumentError(f"unknown transform method {method!r}")
    return "fast" if method == "auto" else method


def cheb_transform(grid: Grid1D, values, method: str = "auto") -> ChebCoeffs:
    """Coefficients of the interpolant of ``values`` on ``grid``.

    Parameters
    ----------
    grid : Grid1D
    values : array_like, shape (n + 1,)
        Samples at the grid points (descending order).
    method : {"auto", "fast", "direct"}
        "fast" uses the type-I DCT; "direct" the O(n^2) cosine summation;
        "auto" picks the fast path.

    Returns
    -------
    ChebCoeffs
        Coefficients ``a_k`` of ``sum_k a_k T_k(x / L)``, index 0..n.
    """
    method = _check_method(method)
    v = np.asarray(values, dtype=float)
    if v.shape != (grid.n + 1,):
        raise InvalidArgumentError(
            f"expected {grid.n + 1} values for grid order {grid.n}, got shape {v.shape}"
        )
    return ChebCoeffs(coeffs=_readonly(_forward_1d(v, 0, method)))


def inverse_cheb_transform(grid: Grid1D, coeffs: ChebCoeffs, method: str = "auto") -> np.ndarray:
    """Grid values of the series with the given coefficients (adjoint of
    :func:`cheb_transform`; the round trip is the identity to rounding)."""
    method = _check_method(method)
    a = np.asarray(coeffs.coeffs, dtype=float)
    if a.shape != (grid.n + 1,):
        raise InvalidArgumentError(
            f"expected {grid.n + 1} coefficients for grid order {grid.n}, got shape {a.shape}"
        )
    return _inverse_1d(a, 0, method)


def cheb_transform_2d(grid: Grid1D, values, method: str = "auto") -> ChebCoeffs:
    """Tensor-product transform of a square array of grid samples.

    ``values[i, j]`` holds the sample at ``(x_i, x_j)`` on the tensor
    grid; the result ``a[k, l]`` is the coefficient of
    ``T_k(. / L) T_l(. / L)`` with ``k`` attached to axis 0 and ``l`` to
    axis 1.
    """
    method = _check_method(method)
    v = np.asarray(values, dtype=float)
    m = grid.n + 1
    if v.shape != (m, m):
        raise InvalidArgumentError(
            f"expected a square ({m}, {m}) array of samples, got shape {v.shape}"
        )
    a = _forward_1d(_forward_1d(v, 0, method), 1, method)
    return ChebCoeffs(coeffs=_readonly(a))


def inverse_cheb_transform_2d(grid: Grid1D, coeffs: ChebCoeffs, method: str = "auto") -> np.ndarray:
    """Inverse of :func:`cheb_transform_2d`."""
    method = _check_method(method)
    a = np.asarray(coeffs.coeffs, dtype=float)
    m = grid.n + 1
    if a.shape != (m, m):
        raise InvalidArgumentError(
            f"expected a square ({m}, {m}) coefficient array, got shape {a.shape}"
        )
    return _inverse_1d(_inverse_1d(a, 0, method), 1, method)


# ---------------------------------------------------------------------------
# Barycentric resampling
# ---------------------------------------------------------------------------


def _resample_matrix(grid: Grid1D, targets: np.ndarray) -> np.ndarray:
    """Rows evaluate the degree-n interpolant at each target point.

    Uses the analytic barycentric weights for Lobatto points,
    w_j = (-1)^j * (1/2 at the endpoints, 1 otherwise); see Berrut &
    Trefethen (2004), SIAM Review 46.
    """
    L = grid.half_width
    tol = L * (1.0 + 1e-12)
    if np.any(np.abs(targets) > tol) or not np.all(np.isfinite(targets)):
        raise InvalidArgumentError(
            f"resample targets must lie within [-{L}, {L}]"
        )
    w = (-1.0) ** np.arange(grid.n + 1)
    w[0] *= 0.5
    w[-1] *= 0.5
    diff = targets[:, None] - grid.points[None, :]
    E = np.empty((len(targets), grid.n + 1))
    for i in range(len(targets)):
        hit = np.nonzero(diff[i] == 0.0)[0]
        if hit.size:
            E[i] = 0.0
            E[i, hit[0]] = 1.0
        else:
            r = w / diff[i]
            E[i] = r / r.sum()
    return E


def barycentric_resample(grid: Grid1D, values, targets) -> np.ndarray:
    """Evaluate the interpolant of ``values`` at arbitrary points.

    Targets coinciding with grid points reproduce the input values
    exactly; other targets use the barycentric formula, which is
    backward-stable on Lobatto points.
    """
    v = np.asarray(values, dtype=float)
    if v.shape != (grid.n + 1,):
        raise InvalidArgumentError(
            f"expected {grid.n + 1} values for grid order {grid.n}, got shape {v.shape}"
        )
    t = np.atleast_1d(np.asarray(targets, dtype=float))
    return _resample_matrix(grid, t) @ v


def barycentric_resample_2d(grid: Grid1D, values, targets_x, targets_y) -> np.ndarray:
    """Tensor-product resampling of square grid data.

    ``values[i, j]`` samples axis-0 point ``x_i`` and axis-1 point
    ``x_j``; the result has shape ``(len(targets_x), len(targets_y))``.
    """
    v = np.asarray(values, dtype=float)
    m = grid.n + 1
    if v.shape != (m, m):
        raise InvalidArgumentError(
            f"expected a square ({m}, {m}) array of samples, got shape {v.shape}"
        )
    tx = np.atleast_1d(np.asarray(targets_x, dtype=float))
    ty = np.atleast_1d(np.asarray(targets_y, dtype=float))
    Ex = _resample_matrix(grid, tx)
    Ey = _resample_matrix(grid, ty)
    return Ex @ v @ Ey.T
