"""Eigenfunction profiles, L2 normalization, and the 16-mode working basis.

Every eigenfunction separates as w(x, y) = p(y) sin(m x) / omega with a
branch-specific transverse profile p.  Longitudinal profiles are even in y,
torsional ones odd.  The hyperbolic factors are evaluated as exp-difference
ratios so profiles stay finite for arbitrarily wide plates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import adaptive_simpson
from .spectrum import Branch, Eigenpair, PlateConfig, solve_branch

QUAD_ABS_TOL = 1e-14


def _cosh_ratio(y, r, ell):
    # cosh(r y) / cosh(r ell), overflow-safe
    ay = np.abs(y)
    return np.exp(r * (ay - ell)) * (1.0 + np.exp(-2.0 * r * ay)) / (1.0 + np.exp(-2.0 * r * ell))


def _sinh_over_cosh(y, r, ell):
    # sinh(r y) / cosh(r ell)
    ay = np.abs(y)
    return np.sign(y) * np.exp(r * (ay - ell)) * (1.0 - np.exp(-2.0 * r * ay)) / (1.0 + np.exp(-2.0 * r * ell))


def _sinh_ratio(y, r, ell):
    # sinh(r y) / sinh(r ell)
    ay = np.abs(y)
    return np.sign(y) * np.exp(r * (ay - ell)) * (1.0 - np.exp(-2.0 * r * ay)) / (1.0 - np.exp(-2.0 * r * ell))


def _cosh_over_sinh(y, r, ell):
    # cosh(r y) / sinh(r ell)
    ay = np.abs(y)
    return np.exp(r * (ay - ell)) * (1.0 + np.exp(-2.0 * r * ay)) / (1.0 - np.exp(-2.0 * r * ell))


@dataclass
class ModeProfile:
    """Transverse profile p(y) of one plate eigenfunction.

    plus / minus are the squared transverse wavenumbers of the two terms
    (beta_+- = m^2 +- sqrt(lambda) for even branches, alpha_+- = sqrt(lambda)
    +- m^2 for the odd ones); omega is the normalization making
    p(y) sin(mx) / omega have unit L2 norm on the plate.
    """
    branch: Branch
    m: int
    sqrt_lam: float
    sigma: float
    ell: float

    def __post_init__(self):
        u, m2 = self.sqrt_lam, self.m ** 2
        self.c_minus = u - (1.0 - self.sigma) * m2   # multiplies the fast (plus) term
        self.c_plus = u + (1.0 - self.sigma) * m2    # multiplies the slow (minus) term
        if self.branch in (Branch.MU1, Branch.NU1):
            self.plus, self.minus = m2 + u, m2 - u
        else:
            self.plus, self.minus = u + m2, u - m2
        self.omega = math.sqrt(math.pi * adaptive_simpson(
            lambda y: self.value(y) ** 2, 0.0, self.ell, abs_tol=QUAD_ABS_TOL))

    @property
    def kind(self) -> str:
        return self.branch.kind

    def value(self, y):
        rp, rm = math.sqrt(self.plus), math.sqrt(self.minus)
        ell = self.ell
        if self.branch is Branch.MU1:
            return (self.c_minus * _cosh_ratio(y, rp, ell)
                    + self.c_plus * _cosh_ratio(y, rm, ell))
        if self.branch is Branch.MUK:
            return (self.c_minus * _cosh_ratio(y, rp, ell)
                    + self.c_plus * np.cos(rm * np.asarray(y)) / math.cos(rm * ell))
        if self.branch is Branch.NUK:
            return (self.c_minus * _sinh_ratio(y, rp, ell)
                    + self.c_plus * np.sin(rm * np.asarray(y)) / math.sin(rm * ell))
        return (self.c_minus * _sinh_ratio(y, rp, ell)
                + self.c_plus * _sinh_ratio(y, rm, ell))

    def d1(self, y):
        """dp/dy."""
        rp, rm = math.sqrt(self.plus), math.sqrt(self.minus)
        ell = self.ell
        if self.branch is Branch.MU1:
            return (self.c_minus * rp * _sinh_over_cosh(y, rp, ell)
                    + self.c_plus * rm * _sinh_over_cosh(y, rm, ell))
        if self.branch is Branch.MUK:
            return (self.c_minus * rp * _sinh_over_cosh(y, rp, ell)
                    - self.c_plus * rm * np.sin(rm * np.asarray(y)) / math.cos(rm * ell))
        if self.branch is Branch.NUK:
            return (self.c_minus * rp * _cosh_over_sinh(y, rp, ell)
                    + self.c_plus * rm * np.cos(rm * np.asarray(y)) / math.sin(rm * ell))
        return (self.c_minus * rp * _cosh_over_sinh(y, rp, ell)
                + self.c_plus * rm * _cosh_over_sinh(y, rm, ell))

    def d2(self, y):
        """d^2 p / dy^2: hyperbolic terms carry +r^2, trigonometric ones -r^2."""
        rp, rm = math.sqrt(self.plus), math.sqrt(self.minus)
        ell = self.ell
        if self.branch is Branch.MU1:
            return (self.c_minus * self.plus * _cosh_ratio(y, rp, ell)
                    + self.c_plus * self.minus * _cosh_ratio(y, rm, ell))
        if self.branch is Branch.MUK:
            return (self.c_minus * self.plus * _cosh_ratio(y, rp, ell)
                    - self.c_plus * self.minus * np.cos(rm * np.asarray(y)) / math.cos(rm * ell))
        if self.branch is Branch.NUK:
            return (self.c_minus * self.plus * _sinh_ratio(y, rp, ell)
                    - self.c_plus * self.minus * np.sin(rm * np.asarray(y)) / math.sin(rm * ell))
        return (self.c_minus * self.plus * _sinh_ratio(y, rp, ell)
                + self.c_plus * self.minus * _sinh_ratio(y, rm, ell))

    def normalized(self, y):
        return self.value(y) / self.omega

    def sup_norm(self) -> float:
        """max over the plate of |p(y) sin(mx)| / omega (attained at sin = 1)."""
        ys = np.linspace(0.0, self.ell, 4097)
        vals = np.abs(self.value(ys))
        i = int(np.argmax(vals))
        lo = ys[max(i - 1, 0)]
        hi = ys[min(i + 1, ys.size - 1)]
        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        x1, x2 = b - invphi * (b - a), a + invphi * (b - a)
        f1, f2 = abs(self.value(x1)), abs(self.value(x2))
        for _ in range(80):
            if f1 < f2:
                a, x1, f1 = x1, x2, f2
                x2 = a + invphi * (b - a)
                f2 = abs(self.value(x2))
            else:
                b, x2, f2 = x2, x1, f1
                x1 = b - invphi * (b - a)
                f1 = abs(self.value(x1))
            if b - a < 1e-14 * self.ell:
                break
        return max(f1, f2, vals[i]) / self.omega


def eval_profile(p: ModeProfile, y) -> float:
    """Value of the (unnormalized) transverse profile at y, |y| <= ell."""
    return p.value(y)


def profile_for(eig: Eigenpair, cfg: PlateConfig) -> ModeProfile:
    return ModeProfile(eig.branch, eig.m, eig.sqrt_lam, cfg.poisson, cfg.half_width)


@dataclass
class ModeBasis:
    """The relabelled 16-mode working basis.

    Indices 1..n_long are the longitudinal modes (profile v_k, wavenumber k),
    indices n_long+1..n_long+n_tors the torsional ones (theta_l, wavenumber l).
    All modes are L2-normalized on the plate.
    """
    cfg: PlateConfig
    longitudinal: list[ModeProfile]
    torsional: list[ModeProfile]
    mu: np.ndarray        # eigenvalues mu_{k,1} of the longitudinal modes
    nu: np.ndarray        # eigenvalues nu_{l,2} of the torsional modes

    @classmethod
    def build(cls, cfg: PlateConfig | None = None, n_longitudinal: int = 14,
              n_torsional: int = 2) -> "ModeBasis":
        cfg = cfg or PlateConfig()
        longs, mus = [], []
        for m in range(1, n_longitudinal + 1):
            eig = solve_branch(Branch.MU1, m, 1, cfg)
            longs.append(profile_for(eig, cfg))
            mus.append(eig.lam)
        tors, nus = [], []
        for m in range(1, n_torsional + 1):
            eig = solve_branch(Branch.NUK, m, 2, cfg)
            tors.append(profile_for(eig, cfg))
            nus.append(eig.lam)
        return cls(cfg, longs, tors, np.array(mus), np.array(nus))

    @property
    def n_long(self) -> int:
        return len(self.longitudinal)

    @property
    def size(self) -> int:
        return len(self.longitudinal) + len(self.torsional)

    def profile(self, idx: int) -> ModeProfile:
        """Profile of relabelled mode idx (1-based)."""
        if 1 <= idx <= self.n_long:
            return self.longitudinal[idx - 1]
        if idx <= self.size:
            return self.torsional[idx - self.n_long - 1]
        raise IndexError(f"mode index {idx} outside 1..{self.size}")

    def x_wavenumber(self, idx: int) -> int:
        return self.profile(idx).m

    def is_torsional(self, idx: int) -> bool:
        return idx > self.n_long

    def eigenvalue(self, idx: int) -> float:
        """Relabelled eigenvalue mu~_idx."""
        if idx <= self.n_long:
            return float(self.mu[idx - 1])
        return float(self.nu[idx - self.n_long - 1])

    def eigenvalues(self) -> np.ndarray:
        return np.concatenate([self.mu, self.nu])


def sup_norm_mode(m_index: int, basis: ModeBasis) -> float:
    """L-infinity norm of the L2-normalized relabelled mode m_index."""
    return basis.profile(m_index).sup_norm()


def rayleigh_quotient(p: ModeProfile) -> float:
    """H^2_* quadratic form of the normalized mode divided by its L2 norm.

    For w = p(y) sin(mx)/omega both factors reduce to 1-D quadratures; the
    result must reproduce the eigenvalue lambda.
    """
    m2 = p.m ** 2
    sig = p.sigma

    def qform(y):
        v, v1, v2 = p.value(y), p.d1(y), p.d2(y)
        return (v2 - m2 * v) ** 2 + 2.0 * (1.0 - sig) * m2 * (v1 ** 2 + v * v2)

    num = adaptive_simpson(qform, 0.0, p.ell, abs_tol=QUAD_ABS_TOL)
    den = adaptive_simpson(lambda y: p.value(y) ** 2, 0.0, p.ell, abs_tol=QUAD_ABS_TOL)
    return num / den


def weak_form_residual(p: ModeProfile, g: Callable, g1: Callable, g2: Callable) -> float:
    """Normalized weak-form residual of the eigenvalue equation.

    Tests the mode w = p(y) sin(mx)/omega against v = g(y) sin(mx) where g is
    any smooth function (g1, g2 its derivatives); test fields with a different
    x-wavenumber integrate to zero exactly and carry no information.  Returns
    |Q(w, v) - lambda (w, v)| / (lambda ||w|| ||v||).
    """
    m2 = p.m ** 2
    sig = p.sigma
    lam = p.sqrt_lam ** 2

    def integrand(y):
        v, v1, v2 = p.value(y), p.d1(y), p.d2(y)
        return ((v2 - m2 * v) * (g2(y) - m2 * g(y))
                + (1.0 - sig) * m2 * (2.0 * v1 * g1(y) + v * g2(y) + v2 * g(y))
                - lam * v * g(y))

    resid = adaptive_simpson(integrand, 0.0, p.ell, abs_tol=QUAD_ABS_TOL)
    gnorm = math.sqrt(adaptive_simpson(lambda y: g(y) ** 2, 0.0, p.ell,
                                       abs_tol=QUAD_ABS_TOL))
    wnorm = math.sqrt(adaptive_simpson(lambda y: p.value(y) ** 2, 0.0, p.ell,
                                       abs_tol=QUAD_ABS_TOL))
    return abs(resid) / (lam * wnorm * gnorm)


def l2_inner_product(basis: ModeBasis, i: int, j: int) -> float:
    """L2(plate) inner product of two normalized basis modes.

    Separates into x and y factors: distinct wavenumbers are exactly
    orthogonal, mixed parity vanishes by symmetry, so only the same-(m,
    parity) combination needs quadrature.
    """
    pi_, pj = basis.profile(i), basis.profile(j)
    if pi_.m != pj.m:
        return 0.0
    if basis.is_torsional(i) != basis.is_torsional(j):
        return 0.0
    val = adaptive_simpson(lambda y: pi_.value(y) * pj.value(y), 0.0, basis.cfg.half_width,
                           abs_tol=QUAD_ABS_TOL)
    return math.pi * val / (pi_.omega * pj.omega)
