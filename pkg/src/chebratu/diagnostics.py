"""Spectral-quality diagnostics: coefficient decay, parity and symmetry.

Smoothness of a converged solution shows up as exponential decay of its
Chebyshev coefficients; evenness in each variable shows up as odd-index
coefficients at rounding level; invariance of the square problem under
the dihedral symmetries shows up directly in the field values.  These
reports quantify all three.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import cheb_transform, cheb_transform_2d
from .errors import InvalidArgumentError
from .pde2d import Field2D

__all__ = [
    "DecayReport",
    "SymmetryReport",
    "decay_report_1d",
    "decay_report_2d",
    "symmetry_report",
]

_TINY = 1e-300


@dataclass(frozen=True)
class DecayReport:
    """Coefficient-decay profile of a solution.

    ``even_floor``/``odd_floor`` are the largest coefficient magnitudes
    over even (beyond index 0) and odd indices; in 2D "odd" means any
    index odd and "even" means both indices even.  ``fit_rate`` is the
    least-squares slope of ``log10 |a_k|`` against the index over the
    pre-plateau range of the even profile (None when fewer than four
    points precede the plateau); ``plateau`` estimates the rounding
    floor.
    """

    coeffs: np.ndarray
    even_floor: float
    odd_floor: float
    fit_rate: float | None
    plateau: float


@dataclass(frozen=True)
class SymmetryReport:
    """Sup-norm deviations of a square field from its symmetry images."""

    rot90_dev: float
    transpose_dev: float
    reflect_x_dev: float
    reflect_y_dev: float


def _fit_and_plateau(indices: np.ndarray, mags: np.ndarray):
    """Slope of the pre-plateau decay and the plateau level.

    The plateau starts where a forward-looking 5-point moving maximum of
    ``log10 |a|`` stops decreasing by at least 0.1 per index; the first
    two entries are excluded (low-order coefficients carry no decay
    information).
    """
    levels = np.log10(np.maximum(mags, _TINY))
    moving = np.array([levels[i: i + 5].max() for i in range(len(levels))])
    start = len(indices)
    for i in range(2, len(indices)):
        step = indices[i] - indices[i - 1]
        if moving[i] - moving[i - 1] > -0.1 * step:
            start = i
            break
    plateau = float(mags[start:].max()) if start < len(indices) else float(mags[-1])
    fit_rate = None
    if start >= 4:
        k = indices[:start].astype(float)
        s = levels[:start]
        fit_rate = float(np.polyfit(k, s, 1)[0])
    return fit_rate, plateau


def decay_report_1d(sol) -> DecayReport:
    """Decay/parity report for a 1D solution (full-grid values)."""
    a = cheb_transform(sol.grid, sol.values).coeffs
    mags = np.abs(a)
    odd_floor = float(mags[1::2].max()) if sol.grid.n >= 1 else 0.0
    even_floor = float(mags[2::2].max()) if sol.grid.n >= 2 else 0.0
    even_idx = np.arange(0, sol.grid.n + 1, 2)
    fit_rate, plateau = _fit_and_plateau(even_idx, mags[even_idx])
    return DecayReport(coeffs=mags, even_floor=even_floor, odd_floor=odd_floor,
                       fit_rate=fit_rate, plateau=plateau)


def decay_report_2d(field: Field2D) -> DecayReport:
    """Decay/parity report for a 2D field (boundary-embedded transform).

    Parity floors scan the full coefficient matrix; the decay fit runs
    along the diagonal ``a_{k,k}``.
    """
    a = cheb_transform_2d(field.grid, field.embed().T).coeffs
    mags = np.abs(a)
    n = field.grid.n
    odd_mask = np.zeros_like(mags, dtype=bool)
    odd_mask[1::2, :] = True
    odd_mask[:, 1::2] = True
    even_mask = ~odd_mask
    even_mask[0, 0] = False
    odd_floor = float(mags[odd_mask].max())
    even_floor = float(mags[even_mask].max())
    diag_idx = np.arange(0, n + 1, 2)
    fit_rate, plateau = _fit_and_plateau(diag_idx, np.diag(mags)[diag_idx])
    return DecayReport(coeffs=mags, even_floor=even_floor, odd_floor=odd_floor,
                       fit_rate=fit_rate, plateau=plateau)


def symmetry_report(field: Field2D) -> SymmetryReport:
    """Deviations from 90-degree rotation, transposition and reflections."""
    u = np.asarray(field.interior, dtype=float)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise InvalidArgumentError("symmetry report needs a square interior matrix")
    return SymmetryReport(
        rot90_dev=float(np.max(np.abs(u - np.rot90(u)))),
        transpose_dev=float(np.max(np.abs(u - u.T))),
        reflect_x_dev=float(np.max(np.abs(u - u[:, ::-1]))),
        reflect_y_dev=float(np.max(np.abs(u - u[::-1, :]))),
    )
