"""One-step iteration for zeros of bounded maximal monotone maps on L_p.

The core recursion walks in the dual space and pulls back through the
inverse duality map,

    x_{n+1} = J^{-1}( J x_n - alpha_n A x_n - alpha_n theta_n J x_n ),

with acceptably paired (alpha_n, theta_n): the alpha term is a dual-space
step along A, the theta term is a vanishing Tikhonov-style pull toward 0
that selects the zero of minimal norm.  The iteration stops when
||x_n - x_{n-1}||_p drops below the configured tolerance.

Variants: a J-free Hilbert form at p = 2, coupled primal/dual recursions
for Hammerstein systems, a subgradient form for minimization, a
normal-cone-augmented form for variational inequalities over boxes, and
a J-fixed-point form.  The last three reduce algebraically to the core
recursion with a modified operator; they are implemented with their own
update arithmetic so the reductions remain checkable as test oracles.

All solvers are deterministic: identical inputs reproduce identical
iterate and residual sequences bit for bit (wall-clock columns aside).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .duality import (
    ProductPoint,
    duality_map,
    duality_map_inverse,
    lyapunov_phi,
    product_duality,
    product_norm,
    product_pairing,
)
from .grid import GridFunction, LpContext, NonFiniteValuesError, lp_norm
from .operators import (
    HammersteinPair,
    feasibility_violation,
    vi_normal_cone_selection,
)
from .schedule import ParamSchedule


class DivergenceError(RuntimeError):
    """An iterate norm exceeded the divergence guard."""


class NonFiniteIterateError(RuntimeError):
    """An iterate acquired NaN or Inf nodes."""


@dataclass(frozen=True)
class SolveConfig:
    """Everything a solve needs besides the operator and starting point.

    ``target``, when given, declares a known zero; the trace then carries
    the Lyapunov distance phi(target, x_n) per step.  The divergence
    guard fails the run loudly once ||x_n||_p exceeds it, which signals a
    schedule/operator pairing outside the convergence regime.
    """

    ctx: LpContext
    schedule: ParamSchedule
    tol: float = 1e-6
    max_iter: int = 1_000_000
    divergence_guard: float = 1e6
    target: GridFunction | ProductPoint | None = None

    def __post_init__(self) -> None:
        if self.tol <= 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass(frozen=True)
class TraceRow:
    """One iteration record; optional columns stay None when undefined."""

    n: int
    residual: float
    iterate_norm: float
    residual_dual: float | None = None
    phi_to_target: float | None = None
    feasibility_violation: float | None = None
    elapsed: float = 0.0


@dataclass
class IterationTrace:
    """Per-step history of a solve.

    ``nfe`` counts operator applications (one per step).  ``converged``
    is False when the run stopped on max_iter instead of the residual
    test.
    """

    rows: list[TraceRow] = field(default_factory=list)
    converged: bool = False
    tol: float = 0.0

    @property
    def nfe(self) -> int:
        return len(self.rows)

    @property
    def final(self) -> TraceRow:
        if not self.rows:
            raise ValueError("trace is empty")
        return self.rows[-1]

    def residuals(self) -> np.ndarray:
        return np.array([r.residual for r in self.rows])


def _phi_to_target(target, x, ctx: LpContext) -> float | None:
    if target is None:
        return None
    if isinstance(target, ProductPoint):
        raise TypeError("scalar solver received a product-space target")
    return lyapunov_phi(target, x, ctx)


def _run(
    dual_step: Callable,
    x1: GridFunction,
    cfg: SolveConfig,
    callback: Callable | None,
    jmap: Callable[[GridFunction, LpContext], GridFunction],
    jinv: Callable[[GridFunction, LpContext], GridFunction],
) -> tuple[GridFunction, IterationTrace]:
    """Shared driver: stepping, stopping, tracing and guards.

    ``dual_step(n, x, jx) -> (w, feasibility)`` produces the dual-space
    vector fed to the inverse map; feasibility is None except for the
    variational-inequality solver.
    """
    if x1.M != cfg.ctx.M:
        raise ValueError(f"initial point has M = {x1.M}, context has M = {cfg.ctx.M}")
    t0 = time.perf_counter()
    trace = IterationTrace(tol=cfg.tol)
    x = x1
    for n in range(1, cfg.max_iter + 1):
        try:
            jx = jmap(x, cfg.ctx)
            w, feas = dual_step(n, x, jx)
            x_next = jinv(w, cfg.ctx)
        except NonFiniteValuesError as exc:
            raise NonFiniteIterateError(f"iterate became non-finite at step {n}") from exc
        residual = lp_norm(x_next - x, cfg.ctx.p)
        norm = lp_norm(x_next, cfg.ctx.p)
        if norm > cfg.divergence_guard:
            raise DivergenceError(
                f"||x_{n + 1}||_p = {norm:.3e} exceeded the guard "
                f"{cfg.divergence_guard:.1e}; check the schedule/operator pairing"
            )
        trace.rows.append(
            TraceRow(
                n=n + 1,
                residual=residual,
                iterate_norm=norm,
                phi_to_target=_phi_to_target(cfg.target, x_next, cfg.ctx),
                feasibility_violation=feas,
                elapsed=time.perf_counter() - t0,
            )
        )
        x = x_next
        if callback is not None:
            callback(n + 1, x)
        if residual < cfg.tol:
            trace.converged = True
            break
    return x, trace


def solve_zero(
    A: Callable[[GridFunction], GridFunction],
    x1: GridFunction,
    cfg: SolveConfig,
    callback: Callable | None = None,
) -> tuple[GridFunction, IterationTrace]:
    """Approximate a zero of a bounded maximal monotone map A : E -> E*.

    Runs x_{n+1} = J^{-1}(J x_n - alpha_n A x_n - alpha_n theta_n J x_n)
    from x1 until ||x_{n+1} - x_n||_p < cfg.tol or max_iter steps.

    Parameters
    ----------
    A : callable
        The operator; one application per step (this is the NFE count).
    x1 : GridFunction
        Starting point on cfg's grid.
    cfg : SolveConfig
    callback : callable, optional
        Invoked as callback(n, x_n) after each new iterate.

    Returns
    -------
    (GridFunction, IterationTrace)
        Final iterate and the full per-step trace.
    """
    sched = cfg.schedule

    def dual_step(n, x, jx):
        a = float(sched.alpha(n))
        th = float(sched.theta(n))
        return jx - a * A(x) - (a * th) * jx, None

    return _run(dual_step, x1, cfg, callback, duality_map, duality_map_inverse)


def _identity_map(f: GridFunction, ctx: LpContext) -> GridFunction:
    return f


def solve_zero_hilbert(
    A: Callable[[GridFunction], GridFunction],
    x1: GridFunction,
    cfg: SolveConfig,
    callback: Callable | None = None,
) -> tuple[GridFunction, IterationTrace]:
    """The J-free form x_{n+1} = x_n - alpha_n A x_n - alpha_n theta_n x_n.

    Valid only at p = 2, where the duality map is the identity; agrees
    with :func:`solve_zero` there to roundoff.
    """
    if cfg.ctx.p != 2.0:
        raise ValueError(f"the Hilbert recursion requires p = 2, got p = {cfg.ctx.p}")
    sched = cfg.schedule

    def dual_step(n, x, jx):
        a = float(sched.alpha(n))
        th = float(sched.theta(n))
        return jx - a * A(x) - (a * th) * jx, None

    return _run(dual_step, x1, cfg, callback, _identity_map, _identity_map)


def solve_min(
    subgrad: Callable[[GridFunction], GridFunction],
    x1: GridFunction,
    cfg: SolveConfig,
    callback: Callable | None = None,
) -> tuple[GridFunction, IterationTrace]:
    """Minimize a convex functional given a subgradient selection.

    Identical engine to :func:`solve_zero` with the operator replaced by
    the selection x -> some element of the subdifferential at x.
    """
    return solve_zero(subgrad, x1, cfg, callback)


def solve_vi(
    T: Callable[[GridFunction], GridFunction],
    box,
    x1: GridFunction,
    cfg: SolveConfig,
    callback: Callable | None = None,
    magnitude: float = 1.0,
) -> tuple[GridFunction, IterationTrace]:
    """Approximate a solution of the variational inequality over a box.

    Each step applies T plus a bounded normal-cone selection beta_n at
    x_n (zero at interior points, +/- ``magnitude`` on active bounds), so
    interior trajectories coincide with :func:`solve_zero` on T.  The
    trace records the box violation of each x_n; a point leaving the box
    beyond the selection tolerance raises
    :class:`~lpmono.operators.InfeasiblePointError`.
    """
    sched = cfg.schedule

    def dual_step(n, x, jx):
        feas = feasibility_violation(x, box)
        beta = vi_normal_cone_selection(x, box, magnitude=magnitude)
        a = float(sched.alpha(n))
        th = float(sched.theta(n))
        return jx - a * (T(x) + beta) - (a * th) * jx, feas

    return _run(dual_step, x1, cfg, callback, duality_map, duality_map_inverse)


def solve_jfixed(
    T: Callable[[GridFunction], GridFunction],
    x1: GridFunction,
    cfg: SolveConfig,
    callback: Callable | None = None,
) -> tuple[GridFunction, IterationTrace]:
    """Approximate a J-fixed point (Tx = Jx) of a map T : E -> E*.

    Runs x_{n+1} = J^{-1}((1 - alpha_n) J x_n + alpha_n T x_n
    - alpha_n theta_n J x_n), which rearranges to the zero-finding
    recursion for A = J - T; per-iterate agreement with
    solve_zero(J - T) is a test oracle, so the arithmetic here keeps the
    (1 - alpha) grouping instead of delegating.
    """
    sched = cfg.schedule

    def dual_step(n, x, jx):
        a = float(sched.alpha(n))
        th = float(sched.theta(n))
        return (1.0 - a) * jx + a * T(x) - (a * th) * jx, None

    return _run(dual_step, x1, cfg, callback, duality_map, duality_map_inverse)


def solve_hammerstein(
    pair: HammersteinPair,
    u1: GridFunction,
    v1: GridFunction,
    cfg: SolveConfig,
    callback: Callable | None = None,
) -> tuple[GridFunction, GridFunction, IterationTrace]:
    """Approximate a solution of u + KFu = 0 via the coupled recursion.

    The primal sequence u_n is driven by Fu_n - v_n through the L_p
    duality map; the dual sequence v_n by Kv_n + u_n through the L_q map.
    Componentwise this is the core recursion on the product space
    E = X x X* with A[u, v] = [Fu - v, Kv + u] (an equivalence the tests
    exercise).  Stops when both ||u_n - u_{n-1}||_p and
    ||v_n - v_{n-1}||_q are below tol; the trace carries both residual
    columns, the product-space iterate norm, and, when a product-space
    target is declared, the product Lyapunov distance to it.
    """
    if u1.M != cfg.ctx.M or v1.M != cfg.ctx.M:
        raise ValueError("initial points must live on the context grid")
    target = cfg.target
    if target is not None and not isinstance(target, ProductPoint):
        raise TypeError("Hammerstein solver expects a ProductPoint target")
    sched = cfg.schedule
    ctx = cfg.ctx
    t0 = time.perf_counter()
    trace = IterationTrace(tol=cfg.tol)
    u, v = u1, v1
    for n in range(1, cfg.max_iter + 1):
        a = float(sched.alpha(n))
        th = float(sched.theta(n))
        try:
            ju = duality_map(u, ctx)
            jv = duality_map_inverse(v, ctx)  # duality map of the dual side
            wu = ju - a * (pair.F(u) - v) - (a * th) * ju
            wv = jv - a * (pair.K(v) + u) - (a * th) * jv
            u_next = duality_map_inverse(wu, ctx)
            v_next = duality_map(wv, ctx)  # inverse of the dual-side map
        except NonFiniteValuesError as exc:
            raise NonFiniteIterateError(f"iterate became non-finite at step {n}") from exc
        ru = lp_norm(u_next - u, ctx.p)
        rv = lp_norm(v_next - v, ctx.q)
        z = ProductPoint(u_next, v_next)
        norm = product_norm(z, ctx)
        if norm > cfg.divergence_guard:
            raise DivergenceError(
                f"product norm {norm:.3e} exceeded the guard "
                f"{cfg.divergence_guard:.1e} at step {n + 1}"
            )
        phi = None
        if target is not None:
            nt = product_norm(target, ctx)
            phi = nt * nt - 2.0 * product_pairing(target, product_duality(z, ctx)) + norm * norm
        trace.rows.append(
            TraceRow(
                n=n + 1,
                residual=ru,
                iterate_norm=norm,
                residual_dual=rv,
                phi_to_target=phi,
                elapsed=time.perf_counter() - t0,
            )
        )
        u, v = u_next, v_next
        if callback is not None:
            callback(n + 1, u, v)
        if ru < cfg.tol and rv < cfg.tol:
            trace.converged = True
            break
    return u, v, trace


def regularization_path_residual(
    A: Callable[[GridFunction], GridFunction],
    y: GridFunction,
    theta: float,
    ctx: LpContext,
) -> float:
    """Residual ||theta * J(y) + A(y)||_q of the regularized equation.

    The equation theta J y + A y = 0 defines the path the iteration
    shadows as theta decreases; this diagnostic measures how nearly y
    sits on the path at the given theta.  No solve is performed.
    """
    if theta <= 0.0:
        raise ValueError(f"theta must be positive, got {theta}")
    return lp_norm(theta * duality_map(y, ctx) + A(y), ctx.q)
