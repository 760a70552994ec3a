"""Newton-Kantorovich driver over residual/Jacobian callbacks.

Full undamped steps, ``J(u_k) d_k = -F(u_k)``, ``u_{k+1} = u_k + d_k``.
Each completed iteration records the sup-norm of its update and of the
residual at the new iterate; the iteration stops as soon as either drops
below its tolerance.  Failures raise with the partial trace attached so
callers can inspect how far the iteration got.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DivergenceError,
    InsufficientDataError,
    InvalidArgumentError,
    NonConvergenceError,
    SingularJacobianError,
    SingularMatrixError,
)
from .numerics import lu_solve

__all__ = [
    "NewtonConfig",
    "NewtonTrace",
    "newton_kantorovich",
    "convergence_order_estimate",
]

# update norms at or below this level are rounding noise, not contraction data
_ORDER_FLOOR = 1e-14


@dataclass(frozen=True)
class NewtonConfig:
    """Stopping parameters for :func:`newton_kantorovich`.

    ``tol_update`` is the primary criterion (sup-norm of the Newton
    update); ``tol_residual`` is a secondary guard on the post-step
    residual.
    """

    tol_update: float = 1e-12
    tol_residual: float = 1e-10
    max_iter: int = 25

    def __post_init__(self):
        if not (self.tol_update > 0.0 and self.tol_residual > 0.0):
            raise InvalidArgumentError("tolerances must be positive")
        if self.max_iter < 1:
            raise InvalidArgumentError("max_iter must be at least 1")


@dataclass(frozen=True)
class NewtonTrace:
    """Per-iteration record of a Newton run.

    ``update_norms[k]`` is ``||d_k||_inf`` of iteration ``k``;
    ``residual_norms[k]`` is ``||F||_inf`` at the iterate produced by that
    iteration.  Both lists have length ``iterations``.
    """

    update_norms: list[float] = field(default_factory=list)
    residual_norms: list[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False


def newton_kantorovich(residual, jacobian, u0, config: NewtonConfig | None = None):
    """Solve ``F(u) = 0`` by undamped Newton iteration.

    Parameters
    ----------
    residual : callable
        ``u -> F(u)``, mapping a length-m vector to a length-m vector.
    jacobian : callable
        ``u -> J(u)``, the m-by-m derivative of ``F``.
    u0 : array_like
        Starting vector.
    config : NewtonConfig, optional

    Returns
    -------
    (solution, trace) : (ndarray, NewtonTrace)

    Raises
    ------
    SingularJacobianError
        If an inner solve meets a singular Jacobian; carries the trace.
    NonConvergenceError
        If ``max_iter`` is exhausted; carries the trace.
    DivergenceError
        If an iterate or residual becomes non-finite; carries the trace.
    """
    cfg = config if config is not None else NewtonConfig()
    u = np.array(u0, dtype=float, copy=True)
    if u.ndim != 1 or u.size == 0:
        raise InvalidArgumentError("initial guess must be a nonempty vector")

    update_norms: list[float] = []
    residual_norms: list[float] = []

    def trace(converged: bool = False) -> NewtonTrace:
        return NewtonTrace(
            update_norms=list(update_norms),
            residual_norms=list(residual_norms),
            iterations=len(update_norms),
            converged=converged,
        )

    def evaluate(fun, what: str) -> np.ndarray:
        out = np.asarray(fun(u), dtype=float)
        if out.shape[0] != u.shape[0]:
            raise InvalidArgumentError(
                f"{what} shape {out.shape} inconsistent with iterate of length {u.shape[0]}"
            )
        return out

    F = evaluate(residual, "residual")
    if not np.all(np.isfinite(F)):
        raise DivergenceError("residual is not finite at the initial guess", trace())

    for _ in range(cfg.max_iter):
        J = evaluate(jacobian, "jacobian")
        try:
            delta = lu_solve(J, -F)
        except SingularMatrixError as exc:
            raise SingularJacobianError(str(exc), trace()) from exc
        u = u + delta
        update_norms.append(float(np.max(np.abs(delta))))
        if not np.all(np.isfinite(u)):
            residual_norms.append(float("inf"))
            raise DivergenceError("iterate became non-finite", trace())
        F = evaluate(residual, "residual")
        if not np.all(np.isfinite(F)):
            residual_norms.append(float("inf"))
            raise DivergenceError("residual became non-finite", trace())
        residual_norms.append(float(np.max(np.abs(F))))
        if update_norms[-1] <= cfg.tol_update or residual_norms[-1] <= cfg.tol_residual:
            return u, trace(converged=True)

    raise NonConvergenceError(
        f"no convergence within {cfg.max_iter} iterations "
        f"(last update {update_norms[-1]:.3e}, residual {residual_norms[-1]:.3e})",
        trace(),
    )


def convergence_order_estimate(trace: NewtonTrace) -> float:
    """Estimate the convergence order from the last admissible update triple.

    Using the final three update norms above the rounding floor,
    ``p = log(||d_{k+1}|| / ||d_k||) / log(||d_k|| / ||d_{k-1}||)``.

    Raises
    ------
    InsufficientDataError
        If fewer than three update norms exceed the floor.
    """
    usable = [v for v in trace.update_norms if v > _ORDER_FLOOR]
    if len(usable) < 3:
        raise InsufficientDataError(
            "need at least three update norms above 1e-14 to estimate an order"
        )
    a, b, c = usable[-3:]
    return float(np.log(c / b) / np.log(b / a))
