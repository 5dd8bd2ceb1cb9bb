"""The full 16-mode nonlinear Galerkin system and its stability probes.

Fourteen longitudinal and two torsional modes evolve under the cubic strip
force contracted through the quartic tensor.  Selection rules built into the
tensor make the torsional-zero subspace and the single-mode subspaces (modes
5..14) exactly invariant, so decoupling statements can be verified to the
last bit rather than to integrator noise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .coefficients import GalerkinTensor, ModalCoefficients
from .errors import ToleranceError
from .modes import ModeBasis
from .numerics import integrate_checked

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12


@dataclass
class CoupledState:
    phi: np.ndarray
    dphi: np.ndarray
    t: float = 0.0

    def packed(self) -> np.ndarray:
        return np.concatenate([self.phi, self.dphi])

    @classmethod
    def unpack(cls, y: np.ndarray, t: float = 0.0) -> "CoupledState":
        n = y.size // 2
        return cls(y[:n].copy(), y[n:].copy(), t)


@dataclass
class CoupledSystem:
    """Immutable right-hand side data of the 16-mode system."""
    tensor: GalerkinTensor
    eigenvalues: np.ndarray      # relabelled mu~_1..mu~_16
    gamma: float

    def __post_init__(self):
        self.linear = self.gamma * np.asarray(self.eigenvalues) + self.tensor.A

    @classmethod
    def build(cls, basis: ModeBasis, gamma: float,
              tensor: GalerkinTensor | None = None) -> "CoupledSystem":
        from .coefficients import compute_galerkin_tensor
        tensor = tensor or compute_galerkin_tensor(basis)
        return cls(tensor, basis.eigenvalues(), gamma)

    @property
    def size(self) -> int:
        return self.tensor.size

    def accelerations(self, phi: np.ndarray) -> np.ndarray:
        """phi'' = -(gamma mu~ + A) phi - cubic tensor force."""
        return -(self.linear * phi + self.tensor.force(phi))

    def rhs(self, t, y):
        n = self.size
        return np.concatenate([y[n:], self.accelerations(y[:n])])

    def rhs_batch(self, t, y, n_traj: int):
        n = self.size
        y = y.reshape(n_traj, 2 * n)
        phi = y[:, :n]
        acc = -(phi * self.linear + self.tensor.force_batch(phi))
        return np.concatenate([y[:, n:], acc], axis=1).ravel()

    def energy(self, y: np.ndarray) -> float:
        n = self.size
        phi, dphi = y[:n], y[n:]
        return (0.5 * float(dphi.dot(dphi))
                + 0.5 * float((self.linear * phi).dot(phi))
                + self.tensor.quartic_potential(phi))


def rhs(state: CoupledState, system: CoupledSystem) -> np.ndarray:
    """Modal accelerations at a state (the coupled system's right-hand side)."""
    return system.accelerations(state.phi)


def integrate(state0: CoupledState, t_end: float, system: CoupledSystem,
              rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
              drift_tol: float | None = 1e-6, n_samples: int = 3001):
    """Trajectory of the coupled system with conserved-energy monitoring.

    Relative drift of the Hamiltonian beyond drift_tol triggers tolerance
    tightening and one retry; persistent failure raises rather than returning
    a silently drifting trajectory.
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    sol = integrate_checked(system.rhs, (0.0, t_end), state0.packed(),
                            energy=system.energy, drift_tol=drift_tol,
                            rtol=rtol, atol=atol,
                            t_eval=np.linspace(0.0, t_end, n_samples))
    n = system.size
    return sol.t, sol.y[:n], sol.y[n:]


def trajectory_csv(t, phi) -> str:
    """Export 't,phi_1..phi_16' rows."""
    n = phi.shape[0]
    lines = ["t," + ",".join(f"phi_{j}" for j in range(1, n + 1))]
    for i, ti in enumerate(t):
        lines.append(f"{ti:.17g}," + ",".join(f"{phi[j, i]:.17g}" for j in range(n)))
    return "\n".join(lines) + "\n"


@dataclass
class ProbeConfig:
    """Perturbation probe of the single-mode solution (problem P_{delta,k,l})."""
    k: int                     # excited longitudinal mode, 1..14
    l: int                     # probed torsional slot, 15 or 16
    A: float                   # initial longitudinal amplitude
    delta: float = 5e-4        # torsional seed on both phi_l and phi_l'
    horizon: float = 300.0
    growth_ratio: float = 50.0

    def __post_init__(self):
        if self.l not in (15, 16):
            raise ValueError("l must be 15 or 16 (torsional slot)")
        if self.delta <= 0 or self.growth_ratio <= 1:
            raise ValueError("delta must be positive and growth_ratio above 1")


@dataclass
class ProbeResult:
    cfg: ProbeConfig
    max_ratio: float           # max_t |phi_l| / delta
    status: str                # "stable" | "unstable"
    series: tuple | None = None

    def summary_json(self) -> str:
        return json.dumps({"k": self.cfg.k, "l": self.cfg.l, "A": self.cfg.A,
                           "delta": self.cfg.delta, "max_ratio": self.max_ratio,
                           "status": self.status}, sort_keys=True)


def probe(cfg: ProbeConfig, system: CoupledSystem, rtol: float = DEFAULT_RTOL,
          atol: float = DEFAULT_ATOL, keep_series: bool = False,
          drift_tol: float | None = None, n_samples: int = 3001) -> ProbeResult:
    """Integrate P_{delta,k,l} and classify by torsional growth.

    The torsional component is declared unstable when it grows past
    growth_ratio times its seed within the horizon.
    """
    n = system.size
    y0 = np.zeros(2 * n)
    y0[cfg.k - 1] = cfg.A
    y0[cfg.l - 1] = cfg.delta
    y0[n + cfg.l - 1] = cfg.delta
    sol = integrate_checked(system.rhs, (0.0, cfg.horizon), y0,
                            energy=system.energy if drift_tol else None,
                            drift_tol=drift_tol, rtol=rtol, atol=atol,
                            t_eval=np.linspace(0.0, cfg.horizon, n_samples))
    tors = sol.y[cfg.l - 1]
    ratio = float(np.abs(tors).max() / cfg.delta)
    status = "unstable" if ratio >= cfg.growth_ratio else "stable"
    series = (sol.t, tors) if keep_series else None
    return ProbeResult(cfg, ratio, status, series)


def probe_batch(cfgs: list[ProbeConfig], system: CoupledSystem,
                rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
                n_samples: int = 2001) -> list[ProbeResult]:
    """Integrate several probes of one (k, l) pair as a stacked system.

    All probes share the adaptive step, so group amplitudes of similar size;
    classification is identical to the scalar path.
    """
    if not cfgs:
        return []
    horizon = cfgs[0].horizon
    if any(c.horizon != horizon for c in cfgs):
        raise ValueError("batched probes must share one horizon")
    n = system.size
    m = len(cfgs)
    y0 = np.zeros((m, 2 * n))
    for i, c in enumerate(cfgs):
        y0[i, c.k - 1] = c.A
        y0[i, c.l - 1] = c.delta
        y0[i, n + c.l - 1] = c.delta
    sol = solve_ivp(lambda t, y: system.rhs_batch(t, y, m), (0.0, horizon),
                    y0.ravel(), method="RK45", rtol=rtol, atol=atol,
                    t_eval=np.linspace(0.0, horizon, n_samples))
    if not sol.success:
        raise ToleranceError(f"batched probe integration failed: {sol.message}")
    out = []
    Y = sol.y.reshape(m, 2 * n, -1)
    for i, c in enumerate(cfgs):
        ratio = float(np.abs(Y[i, c.l - 1]).max() / c.delta)
        status = "unstable" if ratio >= c.growth_ratio else "stable"
        out.append(ProbeResult(c, ratio, status))
    return out


@dataclass
class CoupledThresholdResult:
    """Least amplitude at which the perturbation probe flips to unstable."""
    k: int
    l: int                      # torsional slot 15 or 16
    gamma: float
    grid_step: float
    coarse_step: float
    a_max: float
    A_crit: float | None
    probes: list = field(default_factory=list)    # (A, max_ratio, status)

    @property
    def exceeded(self) -> bool:
        return self.A_crit is None

    def summary_json(self) -> str:
        rec = {"k": self.k, "l": self.l, "gamma": self.gamma}
        rec["A_crit"] = f"exceeded({self.a_max:g})" if self.exceeded else self.A_crit
        return json.dumps(rec, sort_keys=True)


def coupled_threshold_scan(k: int, l: int, system: CoupledSystem,
                           grid_step: float = 0.01, coarse_step: float = 0.1,
                           a_max: float = 10.0, delta: float = 5e-4,
                           horizon: float = 300.0, growth_ratio: float = 50.0,
                           rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
                           batch: int = 8) -> CoupledThresholdResult:
    """Locate the probe instability threshold of mode k against slot l.

    A coarse ascending sweep finds the first unstable amplitude; the coarse
    cell below it is then refined at grid_step resolution, so the result is
    the least unstable amplitude on the fine grid.  Batches share one
    integration per group of nearby amplitudes.
    """
    if grid_step <= 0 or coarse_step < grid_step:
        raise ValueError("need grid_step > 0 and coarse_step >= grid_step")
    trace: list[tuple[float, float, str]] = []

    def run(amps: list[float]) -> list[ProbeResult]:
        cfgs = [ProbeConfig(k, l, A, delta, horizon, growth_ratio) for A in amps]
        res = probe_batch(cfgs, system, rtol=rtol, atol=atol)
        trace.extend((r.cfg.A, r.max_ratio, r.status) for r in res)
        return res

    n_coarse = int(round(a_max / coarse_step))
    coarse = np.round(np.arange(1, n_coarse + 1) * coarse_step, 12)
    first_unstable = None
    for i0 in range(0, coarse.size, batch):
        group = list(coarse[i0:i0 + batch])
        res = run(group)
        hits = [r.cfg.A for r in res if r.status == "unstable"]
        if hits:
            first_unstable = min(hits)
            break
    gamma = system.gamma
    if first_unstable is None:
        return CoupledThresholdResult(k, l, gamma, grid_step, coarse_step, a_max,
                                      None, trace)
    lo = max(first_unstable - coarse_step + grid_step, grid_step)
    fine = np.round(np.arange(lo, first_unstable - grid_step / 2, grid_step), 12)
    A_crit = first_unstable
    for i0 in range(0, fine.size, batch):
        res = run(list(fine[i0:i0 + batch]))
        hits = [r.cfg.A for r in res if r.status == "unstable"]
        if hits:
            A_crit = min(hits)
            break
    return CoupledThresholdResult(k, l, gamma, grid_step, coarse_step, a_max,
                                  float(A_crit), trace)


def nonlinear_2x2(k: int, l: int, coeffs: ModalCoefficients,
                  alpha1: float, alpha2: float, beta1: float, beta2: float,
                  ics: tuple[float, float, float, float], t_end: float,
                  rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
                  n_samples: int = 3001):
    """The two-mode validation system with cubic cross terms.

        phi'' + rho phi + b phi^3 + alpha1 xi^2 phi + alpha2 xi phi^2 = 0
        xi''  + (delta + d phi^2) xi + beta1 phi xi^2 + beta2 xi^3 = 0

    With all four extra coefficients zero this is exactly the linearized
    orbit/Hill pair; xi = xi' = 0 remains invariant for any coefficients.
    Returns (t, phi, dphi, xi, dxi).
    """
    rho = float(coeffs.rho[k - 1])
    b = float(coeffs.b[k - 1])
    delta = float(coeffs.delta[l - 1])
    d = float(coeffs.d[l - 1, k - 1])

    def f(t, y):
        phi, dphi, xi, dxi = y
        return [dphi,
                -(rho * phi + b * phi ** 3 + alpha1 * xi * xi * phi + alpha2 * xi * phi * phi),
                dxi,
                -((delta + d * phi * phi) * xi + beta1 * phi * xi * xi + beta2 * xi ** 3)]

    sol = solve_ivp(f, (0.0, t_end), list(ics), method="RK45", rtol=rtol, atol=atol,
                    t_eval=np.linspace(0.0, t_end, n_samples))
    if not sol.success:
        raise ToleranceError(f"two-mode integration failed: {sol.message}")
    return sol.t, sol.y[0], sol.y[1], sol.y[2], sol.y[3]
