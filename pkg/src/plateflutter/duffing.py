"""Dynamics of one decoupled longitudinal mode: the undamped Duffing
oscillator phi'' + rho phi + b phi^3 = 0.

Everything closed-form that can be: conserved energy, amplitude from the
energy through Lambda_-, and the energy-period law through the complete
elliptic integral evaluated by AGM.  Time-domain orbits come from the
adaptive embedded Runge-Kutta pair with an energy-drift guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import elliptic_k_agm, integrate_checked


def energy_of(phi0: float, phi1: float, rho: float, b: float) -> float:
    """Conserved energy of the orbit through (phi, phi') = (phi0, phi1)."""
    return 0.5 * phi1 ** 2 + 0.5 * rho * phi0 ** 2 + 0.25 * b * phi0 ** 4


def lambda_pm(E: float, rho: float, b: float) -> tuple[float, float]:
    """The two roots (Lambda_+, Lambda_-) of b z^2/4 + rho z/2 = E in z = phi^2.

    Lambda_- is the squared orbit amplitude; -Lambda_+ the negative root.
    The minus root uses the conjugate form 4E/(r + rho), immune to the
    subtractive cancellation that r - rho suffers at small energies.
    """
    r = math.sqrt(rho * rho + 4.0 * b * E)
    return (r + rho) / b, 4.0 * E / (r + rho)


def amplitude(E: float, rho: float, b: float) -> float:
    """Sup-norm of the orbit at energy E: sqrt(Lambda_-)."""
    return math.sqrt(lambda_pm(E, rho, b)[1])


def elliptic_modulus(E: float, rho: float, b: float) -> float:
    """Parameter of the period's elliptic integral; always inside (0, 1/2)."""
    return 0.5 * (1.0 - rho / math.sqrt(rho * rho + 4.0 * b * E))


def period(E: float, rho: float, b: float) -> float:
    """Orbit period at energy E > 0 (E = 0 returns the harmonic limit).

        T(E) = 4 K(m(E)) / (rho^2 + 4 b E)^{1/4},

    strictly decreasing in E, with T(0) = 2 pi / sqrt(rho).
    """
    if E < 0:
        raise ValueError(f"energy must be nonnegative, got {E}")
    if E == 0.0:
        return 2.0 * math.pi / math.sqrt(rho)
    return 4.0 * elliptic_k_agm(elliptic_modulus(E, rho, b)) / (rho * rho + 4.0 * b * E) ** 0.25


@dataclass(frozen=True)
class DuffingOrbit:
    """One longitudinal mode at fixed energy."""
    k: int
    rho: float
    b: float
    E: float

    @property
    def amplitude(self) -> float:
        return amplitude(self.E, self.rho, self.b)

    @property
    def period(self) -> float:
        return period(self.E, self.rho, self.b)

    @classmethod
    def from_amplitude(cls, k: int, rho: float, b: float, A: float) -> "DuffingOrbit":
        """Orbit launched from (A, 0), the threshold-scan convention."""
        return cls(k, rho, b, energy_of(A, 0.0, rho, b))


def solve_orbit(phi0: float, phi1: float, rho: float, b: float, t_end: float,
                rtol: float = 1e-10, atol: float = 1e-12, n_samples: int = 2001):
    """Integrate the mode ODE from (phi0, phi1) to t_end.

    Returns (t, phi, dphi) arrays.  Energy drift beyond 1e-8 relative per 100
    time units triggers one tolerance-tightening retry, then an error; drift
    never passes silently.
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")

    def rhs(t, y):
        return [y[1], -(rho * y[0] + b * y[0] ** 3)]

    def e_of(y):
        return energy_of(y[0], y[1], rho, b)

    drift_tol = 1e-8 * max(1.0, t_end / 100.0)
    sol = integrate_checked(rhs, (0.0, t_end), [phi0, phi1], energy=e_of,
                            drift_tol=drift_tol, rtol=rtol, atol=atol,
                            t_eval=np.linspace(0.0, t_end, n_samples))
    return sol.t, sol.y[0], sol.y[1]


def orbit_csv(t, phi, dphi, rho: float, b: float) -> str:
    """Trajectory export in 't,phi,dphi,energy' form."""
    lines = ["t,phi,dphi,energy"]
    for ti, pi_, di in zip(t, phi, dphi):
        lines.append(f"{ti:.17g},{pi_:.17g},{di:.17g},{energy_of(pi_, di, rho, b):.17g}")
    return "\n".join(lines) + "\n"


def period_by_zero_crossings(E: float, rho: float, b: float) -> float:
    """Independent period measurement from an integrated orbit.

    Launches from (0, sqrt(2E)) so phi' starts away from zero; consecutive
    zeros of phi' are then half a period apart, located by event detection.
    Stays independent of the elliptic-integral route it is used to check.
    """
    from scipy.integrate import solve_ivp

    def rhs(t, y):
        return [y[1], -(rho * y[0] + b * y[0] ** 3)]

    def event(t, y):
        return y[1]

    # generous horizon from the harmonic limit, which overestimates the period
    t_guess = 2.0 * 2.0 * math.pi / math.sqrt(rho)
    sol = solve_ivp(rhs, (0.0, t_guess), [0.0, math.sqrt(2.0 * E)], method="RK45",
                    rtol=1e-12, atol=1e-14, events=event)
    crossings = sol.t_events[0]
    if crossings.size < 2:
        raise RuntimeError("not enough zero crossings captured")
    return 2.0 * float(crossings[1] - crossings[0])
