"""Duality geometry of the discrete L_p space.

Implements the normalized duality map J : L_p -> L_q and its inverse, the
Lyapunov functional phi, the V functional, the product-space duality map
for X x X*, and the constants (t_p, c_p) appearing in the L_p geometry
inequalities.

Because norms and pairings carry the trapezoid weights (see
:mod:`lpmono.grid`), the defining identities

    <f, Jf> = ||f||_p^2 = ||Jf||_q^2,    J^{-1}(Jf) = f

hold to machine precision in the discrete norms, not merely up to
quadrature error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridFunction, LpContext, lp_norm, pairing

DUALITY_VARIANTS = ("standard", "flipped")


class NoRootError(ValueError):
    """The t_p equation has no root on (0, 1] for the requested exponent."""


def duality_map(f: GridFunction, ctx: LpContext, variant: str = "standard") -> GridFunction:
    """Normalized duality map J : L_p -> L_q.

    The ``standard`` variant evaluates

        (Jf)(t) = ||f||_p^{2-p} |f(t)|^{p-1} sign f(t),

    the exponent arrangement satisfying <f, Jf> = ||f||_p^2 and
    ||Jf||_q = ||f||_p.  The ``flipped`` variant interchanges the norm
    and nodewise exponents,

        (Jf)(t) = ||f||_p^{p-2} |f(t)|^{3-p} sign f(t),

    and is kept only for sensitivity studies: it violates the defining
    identity for non-constant f.  Zero maps to zero under both.
    """
    if variant not in DUALITY_VARIANTS:
        raise ValueError(f"unknown duality variant {variant!r}")
    norm = lp_norm(f, ctx.p)
    if norm == 0.0:
        return GridFunction.zeros(f.M)
    v = f.values
    # overflow here surfaces as NonFiniteValuesError below, so the numpy
    # warnings carry no extra information
    with np.errstate(over="ignore", invalid="ignore"):
        if variant == "standard":
            vals = norm ** (2.0 - ctx.p) * np.abs(v) ** (ctx.p - 1.0) * np.sign(v)
        else:
            vals = norm ** (ctx.p - 2.0) * np.abs(v) ** (3.0 - ctx.p) * np.sign(v)
    return GridFunction(vals)


def duality_map_inverse(g: GridFunction, ctx: LpContext) -> GridFunction:
    """Inverse duality map J^{-1} : L_q -> L_p.

    Evaluates (J^{-1}g)(t) = ||g||_q^{2-q} |g(t)|^{q-1} sign g(t); this is
    also the duality map of L_q viewed as a primal space.
    """
    norm = lp_norm(g, ctx.q)
    if norm == 0.0:
        return GridFunction.zeros(g.M)
    v = g.values
    with np.errstate(over="ignore", invalid="ignore"):
        vals = norm ** (2.0 - ctx.q) * np.abs(v) ** (ctx.q - 1.0) * np.sign(v)
    return GridFunction(vals)


def lyapunov_phi(x: GridFunction, y: GridFunction, ctx: LpContext) -> float:
    """Lyapunov functional phi(x, y) = ||x||^2 - 2<x, Jy> + ||y||^2.

    Nonnegative, zero iff x = y; the Bregman-type substitute for
    ||x - y||^2 outside Hilbert space.
    """
    nx = lp_norm(x, ctx.p)
    ny = lp_norm(y, ctx.p)
    return nx * nx - 2.0 * pairing(x, duality_map(y, ctx)) + ny * ny


def v_functional(x: GridFunction, xstar: GridFunction, ctx: LpContext) -> float:
    """V(x, x*) = ||x||_p^2 - 2<x, x*> + ||x*||_q^2 = phi(x, J^{-1}x*)."""
    nx = lp_norm(x, ctx.p)
    ns = lp_norm(xstar, ctx.q)
    return nx * nx - 2.0 * pairing(x, xstar) + ns * ns


@dataclass(frozen=True)
class XuConstants:
    """Constants of the two-point L_p inequality: root t_p and factor c_p."""

    t_p: float
    c_p: float


def _tp_equation(t: float, p: float) -> float:
    return (p - 1.0) * t ** (p - 1.0) + (p - 1.0) * t ** (p - 2.0) - 1.0


def xu_constants(p: float, residual_tol: float = 1e-12, max_iter: int = 200) -> XuConstants:
    """Solve (p-1) t^{p-1} + (p-1) t^{p-2} - 1 = 0 on (0, 1] by bisection.

    The equation has a root on (0, 1] exactly for 1 < p <= 3/2 (at p = 3/2
    the root sits at t = 1; for larger p the left side stays positive).
    Raises :class:`NoRootError` when the bracketing sign conditions fail.
    From the root, c_p = (1 + t_p^{p-1}) (1 + t_p)^{-(p-1)}.
    """
    if not 1.0 < p <= 2.0:
        raise ValueError(f"p must lie in (1, 2], got {p}")
    lo, hi = 1e-12, 1.0
    f_lo = _tp_equation(lo, p)
    f_hi = _tp_equation(hi, p)
    if abs(f_hi) <= residual_tol:
        t_p = hi
    elif abs(f_lo) <= residual_tol:
        t_p = lo
    elif f_lo * f_hi > 0.0:
        raise NoRootError(
            f"t_p equation has no sign change on (0, 1] for p = {p}; "
            "the root exists only for 1 < p <= 1.5"
        )
    else:
        for _ in range(max_iter):
            mid = 0.5 * (lo + hi)
            f_mid = _tp_equation(mid, p)
            if abs(f_mid) <= residual_tol or hi - lo < 4.0 * np.finfo(float).eps * mid:
                break
            if f_lo * f_mid <= 0.0:
                hi, f_hi = mid, f_mid
            else:
                lo, f_lo = mid, f_mid
        t_p = 0.5 * (lo + hi)
        if abs(_tp_equation(t_p, p)) > residual_tol:
            raise NoRootError(
                f"bisection did not reach residual {residual_tol} for p = {p}"
            )
    c_p = (1.0 + t_p ** (p - 1.0)) * (1.0 + t_p) ** (-(p - 1.0))
    return XuConstants(t_p=t_p, c_p=c_p)


@dataclass(frozen=True)
class ProductPoint:
    """A point [u, v] of the product space E = X x X* (X = L_p, X* = L_q).

    The same container also carries points of E* = X* x X, where the
    first component is dual-valued; the component spaces are tracked by
    usage, the data is just a pair of grid functions on one grid.
    """

    u: GridFunction
    v: GridFunction

    def __post_init__(self) -> None:
        self.u._check_grid(self.v)

    def __add__(self, other: "ProductPoint") -> "ProductPoint":
        return ProductPoint(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "ProductPoint") -> "ProductPoint":
        return ProductPoint(self.u - other.u, self.v - other.v)

    def __rmul__(self, scalar) -> "ProductPoint":
        return ProductPoint(scalar * self.u, scalar * self.v)


def product_norm(z: ProductPoint, ctx: LpContext) -> float:
    """Norm of E = X x X*: (||u||_p^2 + ||v||_q^2)^(1/2)."""
    return float(np.hypot(lp_norm(z.u, ctx.p), lp_norm(z.v, ctx.q)))


def product_norm_dual(w: ProductPoint, ctx: LpContext) -> float:
    """Norm of E* = X* x X: (||a||_q^2 + ||b||_p^2)^(1/2) for w = [a, b]."""
    return float(np.hypot(lp_norm(w.u, ctx.q), lp_norm(w.v, ctx.p)))


def product_pairing(z: ProductPoint, w: ProductPoint) -> float:
    """Pairing of z = [u, v] in E with w = [a, b] in E*: <u, a> + <v, b>."""
    return pairing(z.u, w.u) + pairing(z.v, w.v)


def product_duality(z: ProductPoint, ctx: LpContext) -> ProductPoint:
    """Product duality map J_E [u, v] = [J_X u, J_{X*} v] from E to E*.

    J_X is the L_p map, J_{X*} the L_q map (formula of the inverse map).
    Preserves the norm: ||J_E z||_{E*} = ||z||_E.
    """
    return ProductPoint(duality_map(z.u, ctx), duality_map_inverse(z.v, ctx))


def product_duality_inverse(w: ProductPoint, ctx: LpContext) -> ProductPoint:
    """Inverse of the product duality map, from E* = X* x X back to E."""
    return ProductPoint(duality_map_inverse(w.u, ctx), duality_map(w.v, ctx))
