"""Low-level numerical kernels: bracketed root finding, adaptive Simpson
quadrature, the AGM form of the complete elliptic integral, and a checked
wrapper around scipy's embedded Runge-Kutta integrator."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import BracketError, ToleranceError


def bracketed_root(f: Callable[[float], float], a: float, b: float,
                   rel_tol: float = 1e-12, max_iter: int = 200) -> float:
    """Root of f in [a, b] by bisection with a safeguarded secant step.

    f(a) and f(b) must have opposite signs.  The secant step is accepted
    only when it lands strictly inside the current bracket; otherwise the
    iteration falls back to bisection, so convergence is unconditional.
    Terminates when the bracket width drops below rel_tol * |root|.
    """
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise BracketError(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        x = mid
        if fb != fa:
            xs = b - fb * (b - a) / (fb - fa)
            if a < xs < b:
                x = xs
        fx = f(x)
        if fx == 0.0:
            return x
        if fa * fx < 0:
            b, fb = x, fx
        else:
            a, fa = x, fx
        if (b - a) <= rel_tol * max(abs(a), abs(b)):
            break
    return 0.5 * (a + b)


def find_bracket(f: Callable[[float], float], a: float, b: float,
                 n_probe: int = 32) -> tuple[float, float]:
    """First subinterval of [a, b] with a sign change, probing n_probe points."""
    xs = np.linspace(a, b, n_probe + 1)
    fprev = f(xs[0])
    for x0, x1 in zip(xs[:-1], xs[1:]):
        fnext = f(x1)
        if fprev == 0.0:
            return x0, x0
        if fprev * fnext <= 0:
            return x0, x1
        fprev = fnext
    raise BracketError(f"no sign change located on [{a}, {b}] with {n_probe} probes")


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     abs_tol: float = 1e-14, max_depth: int = 30) -> float:
    """Adaptive Simpson quadrature of a smooth scalar integrand.

    The requested absolute tolerance is floored at a few units of machine
    round-off relative to the first whole-interval estimate, so integrands
    of large magnitude terminate at the precision actually attainable.
    """
    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, tol, depth):
        xm = 0.5 * (x0 + x2)
        xl, xr = 0.5 * (x0 + xm), 0.5 * (xm + x2)
        fl, fr = f(xl), f(xr)
        left = simpson(x0, xm, f0, fl, f1)
        right = simpson(xm, x2, f1, fr, f2)
        err = left + right - whole
        if depth <= 0 or abs(err) <= 15.0 * max(tol, floor):
            return left + right + err / 15.0
        return (recurse(x0, xm, f0, fl, f1, left, 0.5 * tol, depth - 1)
                + recurse(xm, x2, f1, fr, f2, right, 0.5 * tol, depth - 1))

    if a == b:
        return 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = simpson(a, b, fa, fm, fb)
    floor = 8.0 * 2.220446049250313e-16 * abs(whole)
    return recurse(a, b, fa, fm, fb, whole, abs_tol, max_depth)


def elliptic_k_agm(m: float) -> float:
    """Complete elliptic integral of the first kind, parameter convention:

        K(m) = integral_0^{pi/2} dphi / sqrt(1 - m sin^2 phi),  0 <= m < 1,

    via the arithmetic-geometric mean, K(m) = pi / (2 * AGM(1, sqrt(1-m))).
    Quadratic convergence; stops at machine precision.
    """
    if not 0.0 <= m < 1.0:
        raise ValueError(f"elliptic parameter m={m} outside [0, 1)")
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(60):
        if abs(a - b) <= 2e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def integrate_checked(rhs: Callable, t_span: tuple[float, float], y0: Sequence[float],
                      energy: Callable[[np.ndarray], float] | None = None,
                      drift_tol: float | None = 1e-8,
                      rtol: float = 1e-10, atol: float = 1e-12,
                      method: str = "RK45", t_eval=None, dense_output: bool = False):
    """solve_ivp with an optional conserved-quantity drift guard.

    When `energy` is given, the relative drift max|E(y(t)) - E0| / max(|E0|, tiny)
    is evaluated on the returned samples.  If it exceeds `drift_tol`, tolerances
    are tightened by 100x and the integration retried once; a second failure
    raises ToleranceError instead of returning silently drifting output.
    """
    for attempt in range(2):
        sol = solve_ivp(rhs, t_span, np.asarray(y0, dtype=float), method=method,
                        rtol=rtol, atol=atol, t_eval=t_eval, dense_output=dense_output)
        if not sol.success:
            raise ToleranceError(f"integrator failed: {sol.message}")
        if energy is None or drift_tol is None:
            return sol
        e0 = energy(sol.y[:, 0])
        scale = max(abs(e0), 1e-300)
        step = max(1, sol.y.shape[1] // 256)
        drift = max(abs(energy(sol.y[:, i]) - e0) for i in range(0, sol.y.shape[1], step))
        drift = max(drift, abs(energy(sol.y[:, -1]) - e0)) / scale
        if drift <= drift_tol:
            return sol
        if attempt == 0:
            rtol, atol = rtol * 1e-2, atol * 1e-2
    raise ToleranceError(
        f"energy drift {drift:.3e} exceeds {drift_tol:.1e} even after tightening tolerances")
