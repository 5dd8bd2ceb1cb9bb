"""Torsional stability of a longitudinal mode via its Hill equation.

Small torsional perturbations riding on the k-th longitudinal orbit obey
xi'' + (delta_l + d_lk * phi_k(t)^2) xi = 0 with a coefficient of period half
the orbit period.  Stability is decided by the Floquet monodromy trace; the
Zhukovskii and Burdina bounds give independent sufficient certificates; an
amplitude scan locates the instability thresholds A_l(k) and the flutter
energy.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .coefficients import ModalCoefficients
from .duffing import DuffingOrbit, energy_of, lambda_pm, period
from .errors import ToleranceError

TRACE_TOL = 1e-8          # marginal band half-width around |trace| = 2
DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12


@dataclass(frozen=True)
class HillProblem:
    """One (longitudinal k, torsional l) stability question at fixed energy."""
    l: int
    k: int
    delta: float          # gamma*nu_{l,2} + abar_l
    d: float              # d_{l,k}
    orbit: DuffingOrbit

    @classmethod
    def build(cls, k: int, l: int, coeffs: ModalCoefficients, A: float) -> "HillProblem":
        orbit = DuffingOrbit.from_amplitude(k, float(coeffs.rho[k - 1]),
                                            float(coeffs.b[k - 1]), A)
        return cls(l, k, float(coeffs.delta[l - 1]), float(coeffs.d[l - 1, k - 1]), orbit)

    def coefficient_extremes(self) -> tuple[float, float]:
        """min and max of the periodic coefficient over one period."""
        lam_minus = lambda_pm(self.orbit.E, self.orbit.rho, self.orbit.b)[1]
        return self.delta, self.delta + self.d * lam_minus


@dataclass
class StabilityVerdict:
    status: str                     # "stable" | "unstable" | "marginal"
    monodromy_trace: float
    growth_exponent: float          # log spectral radius per unit time
    criteria: dict = field(default_factory=dict)


def classify_trace(trace: float, tol: float = TRACE_TOL) -> str:
    if abs(trace) < 2.0 - tol:
        return "stable"
    if abs(trace) > 2.0 + tol:
        return "unstable"
    return "marginal"


def growth_exponent(trace: float, coeff_period: float) -> float:
    """Log of the monodromy spectral radius per unit time (0 when stable)."""
    h = abs(trace) / 2.0
    if h <= 1.0:
        return 0.0
    return math.log(h + math.sqrt(h * h - 1.0)) / coeff_period


def monodromy(p: HillProblem, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL):
    """Fundamental matrix of the Hill equation over one coefficient period.

    The orbit and both Hill columns are integrated together as one 6-d system
    (no interpolated coefficient).  For E = 0 the coefficient is constant and
    the matrix is written down analytically.  Columns are the solutions with
    (xi, xi')(0) = (1,0) and (0,1); the determinant is a Wronskian and must
    stay at 1.
    """
    rho, b, E = p.orbit.rho, p.orbit.b, p.orbit.E
    half_period = 0.5 * period(E, rho, b)
    if E == 0.0:
        w = math.sqrt(p.delta)
        c, s = math.cos(w * half_period), math.sin(w * half_period)
        M = np.array([[c, s / w], [-w * s, c]])
        return M, float(np.trace(M))
    A0 = p.orbit.amplitude
    delta, d = p.delta, p.d

    def rhs(t, y):
        phi, psi, x1, v1, x2, v2 = y
        q = delta + d * phi * phi
        return [psi, -(rho * phi + b * phi ** 3), v1, -q * x1, v2, -q * x2]

    sol = solve_ivp(rhs, (0.0, half_period), [A0, 0.0, 1.0, 0.0, 0.0, 1.0],
                    method="RK45", rtol=rtol, atol=atol)
    if not sol.success:
        raise ToleranceError(f"monodromy integration failed: {sol.message}")
    yf = sol.y[:, -1]
    M = np.array([[yf[2], yf[4]], [yf[3], yf[5]]])
    return M, float(np.trace(M))


def monodromy_trace_grid(A_grid, rho: float, b: float, delta: float, d: float,
                         rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
                         chunk: int = 250):
    """Monodromy traces and determinants for a whole amplitude grid at once.

    Each amplitude is rescaled to unit coefficient period, so the grid
    integrates as one stacked system over tau in [0, 1]; chunking keeps the
    shared adaptive step from being dominated by the stiffest amplitude.
    """
    A_grid = np.asarray(A_grid, dtype=float)
    traces = np.empty_like(A_grid)
    dets = np.empty_like(A_grid)
    for i0 in range(0, A_grid.size, chunk):
        Ab = A_grid[i0:i0 + chunk]
        n = Ab.size
        E = 0.5 * rho * Ab ** 2 + 0.25 * b * Ab ** 4
        c = np.array([0.5 * period(e, rho, b) for e in E])
        y0 = np.zeros((6, n))
        y0[0] = Ab
        y0[2] = 1.0
        y0[5] = 1.0

        def rhs(t, y):
            y = y.reshape(6, n)
            out = np.empty_like(y)
            phi = y[0]
            q = c * (delta + d * phi * phi)
            out[0] = c * y[1]
            out[1] = -c * (rho * phi + b * phi ** 3)
            out[2] = c * y[3]
            out[3] = -q * y[2]
            out[4] = c * y[5]
            out[5] = -q * y[4]
            return out.ravel()

        sol = solve_ivp(rhs, (0.0, 1.0), y0.ravel(), method="RK45", rtol=rtol, atol=atol)
        if not sol.success:
            raise ToleranceError(f"batched monodromy failed: {sol.message}")
        yf = sol.y[:, -1].reshape(6, n)
        traces[i0:i0 + chunk] = yf[2] + yf[5]
        dets[i0:i0 + chunk] = yf[2] * yf[5] - yf[3] * yf[4]
    return traces, dets


def coefficient_period_integral(p: HillProblem, rtol: float = DEFAULT_RTOL,
                                atol: float = DEFAULT_ATOL) -> float:
    """integral_0^{T/2} sqrt(delta + d phi^2(t)) dt along the orbit.

    Computed as a time integral with the same adaptive integrator (an
    augmented quadrature state), not by substitution.
    """
    rho, b, E = p.orbit.rho, p.orbit.b, p.orbit.E
    half_period = 0.5 * period(E, rho, b)
    if E == 0.0:
        return math.sqrt(p.delta) * half_period
    A0 = p.orbit.amplitude
    delta, d = p.delta, p.d

    def rhs(t, y):
        phi, psi, _ = y
        return [psi, -(rho * phi + b * phi ** 3), math.sqrt(delta + d * phi * phi)]

    sol = solve_ivp(rhs, (0.0, half_period), [A0, 0.0, 0.0], method="RK45",
                    rtol=rtol, atol=atol)
    if not sol.success:
        raise ToleranceError(f"coefficient integral failed: {sol.message}")
    return float(sol.y[2, -1])


def zhukovskii_check(p: HillProblem) -> bool:
    """Zhukovskii sufficient stability test.

    True iff some integer m >= 0 sandwiches the squared coefficient period:
    4 m^2 pi^2 / min(A) <= T^2 <= 4 (m+1)^2 pi^2 / max(A).  Passing certifies
    that the monodromy verdict cannot be unstable.
    """
    T = period(p.orbit.E, p.orbit.rho, p.orbit.b)
    amin, amax = p.coefficient_extremes()
    m_cap = int(T * math.sqrt(amin) / (2.0 * math.pi)) + 2
    for m in range(0, m_cap + 1):
        if (4.0 * m * m * math.pi ** 2 / amin <= T * T
                and T * T <= 4.0 * (m + 1) ** 2 * math.pi ** 2 / amax):
            return True
    return False


def burdina_check(p: HillProblem, rtol: float = DEFAULT_RTOL,
                  atol: float = DEFAULT_ATOL) -> bool:
    """Burdina sufficient stability test.

    With I the coefficient-root integral over one period and
    Lg = (1/2) log(max A / min A), stability is certified when some integer
    m >= 0 satisfies m pi <= I - Lg and I + Lg <= (m+1) pi.
    """
    I = coefficient_period_integral(p, rtol=rtol, atol=atol)
    amin, amax = p.coefficient_extremes()
    Lg = 0.5 * math.log(amax / amin)
    m_cap = int((I - Lg) / math.pi) + 2
    for m in range(0, m_cap + 1):
        if m * math.pi <= I - Lg and I + Lg <= (m + 1) * math.pi:
            return True
    return False


@dataclass
class ResonanceFlags:
    """Frequency-ratio diagnostics behind the two sufficient stability tests."""
    ratio: float             # sqrt(delta_l / rho_k)
    nonresonant: bool        # ratio not within 1e-9 of an integer
    m_floor: int             # largest integer strictly below the ratio
    resonant_m: int | None   # m with ratio = m + 1 when resonant, else None
    cubic_bound_ok: bool | None  # 2(2 + (m+1)pi) d < 3 pi (m+1)^3 b at that m

    @property
    def as_dict(self) -> dict:
        return {"ratio": self.ratio, "nonresonant": self.nonresonant,
                "m_floor": self.m_floor, "resonant_m": self.resonant_m,
                "cubic_bound_ok": self.cubic_bound_ok}


def _resonance_from_params(rho: float, delta: float, d: float, b: float,
                           tol: float = 1e-9) -> ResonanceFlags:
    ratio = math.sqrt(delta / rho)
    nearest = round(ratio)
    resonant = nearest >= 1 and abs(ratio - nearest) < tol
    m_floor = int(math.ceil(ratio)) - 1 if ratio > 0 else 0
    if float(m_floor) == ratio:   # exact integer: largest integer strictly below
        m_floor = int(ratio) - 1
    m_floor = max(m_floor, 0)
    resonant_m = nearest - 1 if resonant else None
    cubic_ok = None
    if resonant:
        mp1 = nearest
        cubic_ok = 2.0 * (2.0 + mp1 * math.pi) * d < 3.0 * math.pi * mp1 ** 3 * b
    return ResonanceFlags(ratio, not resonant, m_floor, resonant_m, cubic_ok)


def resonance_flags(k: int, l: int, coeffs: ModalCoefficients,
                    tol: float = 1e-9) -> ResonanceFlags:
    return _resonance_from_params(float(coeffs.rho[k - 1]), float(coeffs.delta[l - 1]),
                                  float(coeffs.d[l - 1, k - 1]), float(coeffs.b[k - 1]),
                                  tol)


def verdict(p: HillProblem, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
            with_criteria: bool = True) -> StabilityVerdict:
    """Full stability verdict: monodromy decision, the two sufficient
    certificates, and the frequency-ratio resonance flags."""
    _, tr = monodromy(p, rtol=rtol, atol=atol)
    half_period = 0.5 * period(p.orbit.E, p.orbit.rho, p.orbit.b)
    crit = {}
    if with_criteria:
        crit = {"zhukovskii": zhukovskii_check(p),
                "burdina": burdina_check(p, rtol=rtol, atol=atol),
                "resonance": _resonance_from_params(p.orbit.rho, p.delta, p.d,
                                                    p.orbit.b).as_dict}
    return StabilityVerdict(classify_trace(tr), tr, growth_exponent(tr, half_period), crit)


def growth_simulation(p: HillProblem, t_end: float = 200.0,
                      rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
                      n_samples: int = 4001):
    """Integrate the Hill equation from xi(0) = xi'(0) = 1 to t_end.

    Returns (max |xi|, (t, xi) series); the orbit rides along in the same
    system so the parametric coefficient is never interpolated.
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    rho, b = p.orbit.rho, p.orbit.b
    A0 = p.orbit.amplitude
    delta, d = p.delta, p.d

    def rhs(t, y):
        phi, psi, x, v = y
        q = delta + d * phi * phi
        return [psi, -(rho * phi + b * phi ** 3), v, -q * x]

    sol = solve_ivp(rhs, (0.0, t_end), [A0, 0.0, 1.0, 1.0], method="RK45",
                    rtol=rtol, atol=atol, t_eval=np.linspace(0.0, t_end, n_samples))
    if not sol.success:
        raise ToleranceError(f"growth simulation failed: {sol.message}")
    xi = sol.y[2]
    return float(np.abs(xi).max()), (sol.t, xi)


@dataclass
class ThresholdResult:
    """Outcome of one amplitude scan."""
    k: int
    l: int
    gamma: float
    grid_step: float
    width_filter: float
    a_max: float
    A_crit: float | None          # None means Exceeded(a_max)
    E_crit: float                 # energy at A_crit, or at a_max as lower bound
    scan_trace: list = field(default_factory=list)   # (A, trace, status) triples

    @property
    def exceeded(self) -> bool:
        return self.A_crit is None

    def scan_csv(self) -> str:
        lines = ["A,trace,status"]
        for A, tr, st in self.scan_trace:
            lines.append(f"{A:.17g},{tr:.17g},{st}")
        return "\n".join(lines) + "\n"

    def summary_json(self) -> str:
        rec = {"k": self.k, "l": self.l, "gamma": self.gamma}
        if self.exceeded:
            rec["A_crit"] = f"exceeded({self.a_max:g})"
            rec["E_crit_lower_bound"] = self.E_crit
        else:
            rec["A_crit"] = self.A_crit
            rec["E_crit"] = self.E_crit
        return json.dumps(rec, sort_keys=True)


def unstable_runs(A_grid, statuses) -> list[tuple[int, int]]:
    """Maximal index runs of consecutive 'unstable' grid points."""
    runs = []
    i = 0
    n = len(statuses)
    while i < n:
        if statuses[i] == "unstable":
            j = i
            while j + 1 < n and statuses[j + 1] == "unstable":
                j += 1
            runs.append((i, j))
            i = j + 1
        else:
            i += 1
    return runs


def threshold_scan(k: int, l: int, coeffs: ModalCoefficients,
                   grid_step: float = 0.01, width_filter: float = 0.2,
                   a_max: float = 20.0, rtol: float = DEFAULT_RTOL,
                   atol: float = DEFAULT_ATOL, chunk: int = 250) -> ThresholdResult:
    """Scan amplitudes for the first strong instability interval.

    Classifies every grid amplitude by monodromy trace, merges consecutive
    unstable points into intervals, and returns the infimum of the first
    interval spanning at least width_filter; a scan reaching a_max without
    such an interval reports Exceeded as a value, not an error.
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    rho = float(coeffs.rho[k - 1])
    b = float(coeffs.b[k - 1])
    delta = float(coeffs.delta[l - 1])
    d = float(coeffs.d[l - 1, k - 1])
    n = int(round(a_max / grid_step))
    A_grid = np.round(np.arange(1, n + 1) * grid_step, 12)
    traces, _ = monodromy_trace_grid(A_grid, rho, b, delta, d,
                                     rtol=rtol, atol=atol, chunk=chunk)
    statuses = [classify_trace(tr) for tr in traces]
    trace_list = [(float(A), float(tr), st)
                  for A, tr, st in zip(A_grid, traces, statuses)]
    A_crit = None
    for i, j in unstable_runs(A_grid, statuses):
        if A_grid[j] - A_grid[i] >= width_filter - 1e-9:
            A_crit = float(A_grid[i])
            break
    ref = A_crit if A_crit is not None else a_max
    E_crit = energy_of(ref, 0.0, rho, b)
    return ThresholdResult(k, l, coeffs.gamma, grid_step, width_filter, a_max,
                           A_crit, E_crit, trace_list)


@dataclass(frozen=True)
class FlutterEnergy:
    value: float
    is_lower_bound: bool   # True when every torsional threshold exceeded the cap


def flutter_energy(k: int, coeffs: ModalCoefficients,
                   results: list[ThresholdResult] | None = None,
                   **scan_kwargs) -> FlutterEnergy:
    """Least torsional-instability energy of mode k: min over l of E_l(k).

    A finite threshold always wins over an exceeded one (energy is monotone
    in amplitude, so the exceeded branch lies above its cap energy); when
    every branch exceeded, the result is a lower bound.
    """
    if results is None:
        results = [threshold_scan(k, l, coeffs, **scan_kwargs) for l in (1, 2)]
    finite = [r.E_crit for r in results if not r.exceeded]
    if finite:
        return FlutterEnergy(min(finite), False)
    return FlutterEnergy(min(r.E_crit for r in results), True)
