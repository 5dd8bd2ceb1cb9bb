"""Eigenvalues of the hinged-free rectangular plate.

The plate occupies (0, pi) x (-ell, ell) with hinged short edges and free long
edges.  Eigenvalues of the biharmonic operator under these boundary conditions
split into four branches per longitudinal wavenumber m, each the root set of
an explicit transcendental equation in lambda.  This module finds those roots
by bracketed bisection/secant iteration and enumerates the ordered spectrum.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

from .errors import NoRootError
from .numerics import bracketed_root, find_bracket


@dataclass(frozen=True)
class PlateConfig:
    """Geometry and material of the nondimensional plate.

    half_width   half-width ell of the plate cross-section (length is pi)
    poisson      Poisson ratio sigma, must lie in (0, 1/2)
    strip_width  width epsilon of each lateral hanger strip
    strip_inner  derived inner edge ell - epsilon of the strips
    """
    half_width: float = math.pi / 150
    poisson: float = 0.2
    strip_width: float = math.pi / 1500
    strip_inner: float = field(init=False)

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if not 0.0 < self.poisson < 0.5:
            raise ValueError(f"poisson ratio must lie in (0, 1/2), got {self.poisson}")
        if not 0.0 < self.strip_width < self.half_width:
            raise ValueError(
                f"strip_width must lie in (0, half_width), got {self.strip_width}")
        object.__setattr__(self, "strip_inner", self.half_width - self.strip_width)


class Branch(enum.Enum):
    MU1 = "mu1"    # even in y, lambda in ((1-sigma)^2 m^4, m^4)
    MUK = "muk"    # even in y, lambda > m^4, k >= 2
    NU1 = "nu1"    # odd in y, lambda < m^4 (exists only for large ell*m)
    NUK = "nuk"    # odd in y, lambda > m^4, k >= 2

    @property
    def parity(self) -> str:
        return "even" if self in (Branch.MU1, Branch.MUK) else "odd"

    @property
    def kind(self) -> str:
        return "longitudinal" if self in (Branch.MU1, Branch.MUK) else "torsional"


@dataclass(frozen=True)
class Eigenpair:
    """A labelled plate eigenvalue."""
    branch: Branch
    m: int          # longitudinal wavenumber
    k: int          # transverse index (1 for MU1/NU1)
    lam: float      # the eigenvalue lambda

    @property
    def sqrt_lam(self) -> float:
        return math.sqrt(self.lam)

    @property
    def parity(self) -> str:
        return self.branch.parity

    @property
    def kind(self) -> str:
        return self.branch.kind

    @property
    def label(self) -> str:
        sym = "mu" if self.branch in (Branch.MU1, Branch.MUK) else "nu"
        return f"{sym}_{{{self.m},{self.k}}}"


def residual_mu1(lam: float, m: int, cfg: PlateConfig) -> float:
    """LHS - RHS of the MU1 characteristic equation at the eigenvalue lambda.

    Defined for lambda strictly inside ((1-sigma)^2 m^4, m^4); outside, the
    square roots turn imaginary.  Positive near the left endpoint, negative
    near the right, so a sign change brackets the unique root.
    """
    lo, hi = (1.0 - cfg.poisson) ** 2 * m ** 4, float(m ** 4)
    if not lo < lam < hi:
        raise ValueError(f"lambda={lam} outside the open interval ({lo}, {hi})")
    return _resid_mu1_u(math.sqrt(lam), m, cfg.poisson, cfg.half_width)


def _resid_mu1_u(u, m, sigma, ell):
    # u = sqrt(lambda) in ((1-sigma) m^2, m^2)
    a = math.sqrt(m * m - u)
    b = math.sqrt(m * m + u)
    return (a * (u + (1 - sigma) * m * m) ** 2 * math.tanh(ell * a)
            - b * (u - (1 - sigma) * m * m) ** 2 * math.tanh(ell * b))


def _resid_nu1_u(u, m, sigma, ell):
    # u = sqrt(lambda) in ((1-sigma) m^2, m^2)
    a = math.sqrt(m * m - u)
    b = math.sqrt(m * m + u)
    return (a * (u + (1 - sigma) * m * m) ** 2 * math.tanh(ell * b)
            - b * (u - (1 - sigma) * m * m) ** 2 * math.tanh(ell * a))


def _resid_muk_s(s, m, sigma, ell):
    # s = sqrt(sqrt(lambda) - m^2) > 0; tan pole structure in ell*s
    u = m * m + s * s
    b = math.sqrt(u + m * m)
    return (s * (u + (1 - sigma) * m * m) ** 2 * math.tan(ell * s)
            + b * (u - (1 - sigma) * m * m) ** 2 * math.tanh(ell * b))


def _resid_nuk_s(s, m, sigma, ell):
    u = m * m + s * s
    b = math.sqrt(u + m * m)
    return (s * (u + (1 - sigma) * m * m) ** 2 * math.tanh(ell * b)
            - b * (u - (1 - sigma) * m * m) ** 2 * math.tan(ell * s))


def nu1_exists(m: int, cfg: PlateConfig) -> bool:
    """Existence condition for the odd below-m^4 eigenvalue nu_{m,1}."""
    c = cfg.half_width * m * math.sqrt(2.0)
    return c / math.tanh(c) > ((2.0 - cfg.poisson) / cfg.poisson) ** 2


_REL_TOL = 1e-12   # relative tolerance on lambda for all branch roots


def solve_branch(branch: Branch, m: int, k: int, cfg: PlateConfig) -> Eigenpair:
    """Solve one branch equation for the (m, k) eigenvalue.

    For MUK/NUK the k-th eigenvalue (k >= 2) is the (k-1)-th root above m^4;
    roots are isolated between consecutive singularities of tan(ell*s) with
    s = sqrt(sqrt(lambda) - m^2), exactly one per bracket, verified by sign
    change.  Raises NoRootError when NU1's existence condition fails and
    BracketError when an expected sign change is absent.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    sigma, ell = cfg.poisson, cfg.half_width
    if branch is Branch.MU1:
        if k != 1:
            raise ValueError("MU1 has k=1 only")
        lo = (1 - sigma) * m * m * (1 + 1e-14) + 1e-300
        hi = m * m * (1 - 1e-14)
        u = bracketed_root(lambda x: _resid_mu1_u(x, m, sigma, ell), lo, hi,
                           rel_tol=0.5 * _REL_TOL)
        return Eigenpair(branch, m, 1, u * u)
    if branch is Branch.NU1:
        if k != 1:
            raise ValueError("NU1 has k=1 only")
        if not nu1_exists(m, cfg):
            raise NoRootError(
                f"nu_{{{m},1}} does not exist: ell*m*sqrt(2)*coth(...) <= ((2-sigma)/sigma)^2")
        lo = (1 - sigma) * m * m * (1 + 1e-12)
        hi = m * m * (1 - 1e-12)
        a, b = find_bracket(lambda x: _resid_nu1_u(x, m, sigma, ell), lo, hi, n_probe=64)
        u = bracketed_root(lambda x: _resid_nu1_u(x, m, sigma, ell), a, b,
                           rel_tol=0.5 * _REL_TOL)
        return Eigenpair(branch, m, 1, u * u)
    if k < 2:
        raise ValueError(f"{branch} requires k >= 2")
    # bracket index between consecutive tan singularities s_j = (j - 1/2) pi / ell
    j = k - 1 if branch is Branch.MUK else k - 2
    resid = _resid_muk_s if branch is Branch.MUK else _resid_nuk_s
    pad = 1e-9 * (j + 1) * math.pi / ell
    s_lo = max((j - 0.5) * math.pi / ell, 0.0) + pad
    s_hi = (j + 0.5) * math.pi / ell - pad
    a, b = find_bracket(lambda x: resid(x, m, sigma, ell), s_lo, s_hi, n_probe=64)
    s = bracketed_root(lambda x: resid(x, m, sigma, ell), a, b, rel_tol=0.25 * _REL_TOL)
    u = m * m + s * s
    return Eigenpair(branch, m, k, u * u)


def exceptional_eigenvalue_check(cfg: PlateConfig, m_max: int) -> None:
    """Warn if the measure-zero extra eigenvalue condition holds at an integer.

    The condition tanh(sqrt(2) s ell) = (sigma/(2-sigma))^2 sqrt(2) s ell at
    integer s signals one additional eigenvalue outside the four branches; it
    is flagged, never solved.
    """
    c = (cfg.poisson / (2.0 - cfg.poisson)) ** 2
    for s in range(1, m_max + 1):
        x = math.sqrt(2.0) * s * cfg.half_width
        if abs(math.tanh(x) - c * x) < 1e-12:
            warnings.warn(
                f"exceptional plate eigenvalue condition met at integer s={s}; "
                "an extra eigenvalue outside branches (i)-(iv) exists and is not enumerated",
                RuntimeWarning, stacklevel=3)


def enumerate_spectrum(n: int, cfg: PlateConfig | None = None) -> list[Eigenpair]:
    """The n smallest eigenvalues over all branches, sorted ascending.

    Scans m = 1..M and grows M until (1-sigma)^2 (M+1)^4 exceeds the current
    n-th smallest candidate (MU1 eigenvalues are the smallest per m, so no
    eigenvalue of a larger m can enter the sorted prefix).  Transverse indices
    k >= 2 are included while the analytic lower edge of their bracket stays
    below the cutoff.  The branch pattern is discovered, never assumed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cfg = cfg or PlateConfig()
    sigma, ell = cfg.poisson, cfg.half_width
    M = max(2, n)
    while True:
        # MU1 roots are the smallest eigenvalue per m: they fix the cutoff first
        cands: list[Eigenpair] = [solve_branch(Branch.MU1, m, 1, cfg)
                                  for m in range(1, M + 1)]
        cands.sort(key=lambda e: e.lam)

        def cutoff():
            return cands[n - 1].lam if len(cands) >= n else math.inf

        for m in range(1, M + 1):
            if nu1_exists(m, cfg) and m ** 4 <= cutoff():
                cands.append(solve_branch(Branch.NU1, m, 1, cfg))
                cands.sort(key=lambda e: e.lam)
            for branch in (Branch.MUK, Branch.NUK):
                k = 2
                while True:
                    j = k - 1 if branch is Branch.MUK else k - 2
                    s_lo = max((j - 0.5) * math.pi / ell, 0.0)
                    if (m * m + s_lo * s_lo) ** 2 > cutoff():
                        break
                    cands.append(solve_branch(branch, m, k, cfg))
                    cands.sort(key=lambda e: e.lam)
                    k += 1
        if len(cands) >= n and (1 - sigma) ** 2 * (M + 1) ** 4 > cands[n - 1].lam:
            exceptional_eigenvalue_check(cfg, M)
            return cands[:n]
        M += max(2, M // 2)
