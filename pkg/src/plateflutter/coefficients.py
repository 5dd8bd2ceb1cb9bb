"""Interaction coefficients of the hanger-strip nonlinearity.

The restoring force acts only on the two thin lateral strips, so every
coefficient is a strip integral of products of normalized profiles times an
exact x-integral of sine products.  The scalar set (a_k, b_k, abar_l, d_lk)
drives the decoupled single-mode analysis; the quartic tensor B drives the
full 16-mode system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations

import numpy as np

from .modes import ModeBasis
from .numerics import adaptive_simpson
from .spectrum import PlateConfig

QUAD_ABS_TOL = 1e-14
TENSOR_DROP_TOL = 1e-15


def strip_integral(f, cfg: PlateConfig) -> float:
    """Integral over the one-sided strip [ell - eps, ell]."""
    return adaptive_simpson(f, cfg.strip_inner, cfg.half_width, abs_tol=QUAD_ABS_TOL)


def compute_ak_bk(basis: ModeBasis, cfg: PlateConfig | None = None):
    """Linear and cubic strip coefficients of the longitudinal modes.

    a_k is the fraction of the mode's L2 mass carried by the strips (always
    below 1); b_k the matching quartic coefficient.
    """
    cfg = cfg or basis.cfg
    a = np.empty(basis.n_long)
    b = np.empty(basis.n_long)
    for i, p in enumerate(basis.longitudinal):
        om2 = p.omega ** 2
        a[i] = math.pi / om2 * strip_integral(lambda y: p.value(y) ** 2, cfg)
        b[i] = 3.0 * math.pi / (4.0 * om2 ** 2) * strip_integral(lambda y: p.value(y) ** 4, cfg)
    return a, b


def compute_abar_dlk(basis: ModeBasis, cfg: PlateConfig | None = None):
    """Torsional strip fractions abar_l and the cross coefficients d_{l,k}.

    The quartic cross term carries 9pi/4 on the diagonal l == k (the x-factor
    is a fourth power of one sine) and 3pi/2 off it.
    """
    cfg = cfg or basis.cfg
    n_tors, n_long = len(basis.torsional), basis.n_long
    abar = np.empty(n_tors)
    d = np.empty((n_tors, n_long))
    for li, th in enumerate(basis.torsional):
        omb2 = th.omega ** 2
        abar[li] = math.pi / omb2 * strip_integral(lambda y: th.value(y) ** 2, cfg)
        for ki, p in enumerate(basis.longitudinal):
            cross = strip_integral(lambda y: p.value(y) ** 2 * th.value(y) ** 2, cfg)
            factor = 9.0 * math.pi / 4.0 if (li + 1) == (ki + 1) else 3.0 * math.pi / 2.0
            d[li, ki] = factor * cross / (p.omega ** 2 * omb2)
    return abar, d


@dataclass
class ModalCoefficients:
    """All scalars of the decoupled mode analysis at stiffness gamma."""
    gamma: float
    mu: np.ndarray       # mu_{k,1}, k = 1..14
    nu: np.ndarray       # nu_{l,2}, l = 1..2
    a: np.ndarray
    b: np.ndarray
    a_bar: np.ndarray
    d: np.ndarray        # shape (2, 14)

    def __post_init__(self):
        if np.any(self.a <= 0) or np.any(self.a >= 1):
            raise ValueError("a_k must lie in (0, 1)")
        if np.any(self.a_bar <= 0) or np.any(self.a_bar >= 1):
            raise ValueError("abar_l must lie in (0, 1)")
        if np.any(self.b <= 0) or np.any(self.d <= 0):
            raise ValueError("b_k and d_{l,k} must be positive")

    @property
    def rho(self) -> np.ndarray:
        """Linear stiffness gamma*mu_{k,1} + a_k of each longitudinal mode."""
        return self.gamma * self.mu + self.a

    @property
    def delta(self) -> np.ndarray:
        """Linear stiffness gamma*nu_{l,2} + abar_l of each torsional mode."""
        return self.gamma * self.nu + self.a_bar

    @classmethod
    def from_basis(cls, basis: ModeBasis, gamma: float) -> "ModalCoefficients":
        a, b = compute_ak_bk(basis)
        abar, d = compute_abar_dlk(basis)
        return cls(gamma, basis.mu.copy(), basis.nu.copy(), a, b, abar, d)

    def to_csv(self) -> str:
        lines = ["k,a_k,b_k,d_1k,d_2k"]
        for i in range(self.a.size):
            lines.append(f"{i + 1},{self.a[i]:.17g},{self.b[i]:.17g},"
                         f"{self.d[0, i]:.17g},{self.d[1, i]:.17g}")
        return "\n".join(lines) + "\n"


def sine_quartic_integral(m1: int, m2: int, m3: int, m4: int) -> float:
    """Exact value of integral_0^pi sin(m1 x) sin(m2 x) sin(m3 x) sin(m4 x) dx.

    Product-to-sum expansion into eight cosines; each contributes pi/8 times
    its sign exactly when its frequency combination vanishes.  Nonzero iff
    some signed combination +-m1 +-m2 +-m3 +-m4 equals zero.
    """
    total = 0
    for s, sign in ((m1 - m2 - m3 + m4, 1), (m1 - m2 + m3 - m4, 1),
                    (m1 - m2 - m3 - m4, -1), (m1 - m2 + m3 + m4, -1),
                    (m1 + m2 - m3 + m4, -1), (m1 + m2 + m3 - m4, -1),
                    (m1 + m2 - m3 - m4, 1), (m1 + m2 + m3 + m4, 1)):
        if s == 0:
            total += sign
    return total * math.pi / 8.0


@dataclass
class GalerkinTensor:
    """Strip overlaps A_k and the sparse quartic tensor of the coupled system.

    entries maps a canonical quadruple (j1 >= j2 >= j3, k), 1-based, to the
    coefficient B with the multinomial multiplicity 1/3/6 folded in.  dense
    holds the fully symmetric raw integrals R[a,b,c,e] (no multiplicities) so
    that the cubic force is a plain tensor contraction.
    """
    size: int
    A: np.ndarray
    entries: dict[tuple[int, int, int, int], float]
    dense: np.ndarray = field(repr=False)

    def force(self, phi: np.ndarray) -> np.ndarray:
        """Cubic force: force_k = sum_{a,b,c} R[k,a,b,c] phi_a phi_b phi_c."""
        t = np.tensordot(self.dense, phi, axes=([3], [0]))
        t = np.tensordot(t, phi, axes=([2], [0]))
        return t.dot(phi)

    def force_batch(self, phi: np.ndarray) -> np.ndarray:
        """Vectorized force for phi of shape (n, size)."""
        return np.einsum("kabc,na,nb,nc->nk", self.dense, phi, phi, phi, optimize=True)

    def quartic_potential(self, phi: np.ndarray) -> float:
        """(1/4) integral of Upsilon * (sum phi_j w_j)^4, via the tensor."""
        return 0.25 * float(phi.dot(self.force(phi)))

    def to_text(self) -> str:
        """One line per entry 'j1 j2 j3 k value', sorted lexicographically."""
        lines = [f"{j1} {j2} {j3} {k} {v:.17g}"
                 for (j1, j2, j3, k), v in sorted(self.entries.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, size: int = 16, A: np.ndarray | None = None) -> "GalerkinTensor":
        entries: dict[tuple[int, int, int, int], float] = {}
        for line in text.strip().splitlines():
            parts = line.split()
            j1, j2, j3, k = (int(p) for p in parts[:4])
            entries[(j1, j2, j3, k)] = float(parts[4])
        dense = _dense_from_entries(entries, size)
        return cls(size, A if A is not None else np.zeros(size), entries, dense)


def _multiplicity(j1: int, j2: int, j3: int) -> int:
    if j1 == j2 == j3:
        return 1
    if j1 == j2 or j2 == j3:
        return 3
    return 6


def _dense_from_entries(entries, size):
    # entries sharing one index multiset carry the same raw integral up to the
    # multiplicity division; take one canonical representative per multiset so
    # the dense tensor is bit-reproducible regardless of dict order
    reps: dict[tuple[int, ...], tuple[tuple[int, int, int, int], float]] = {}
    for key, v in entries.items():
        mset = tuple(sorted(key))
        if mset not in reps or key < reps[mset][0]:
            reps[mset] = (key, v)
    dense = np.zeros((size,) * 4)
    for (j1, j2, j3, k), v in reps.values():
        raw = v / _multiplicity(j1, j2, j3)
        for p in set(permutations((j1 - 1, j2 - 1, j3 - 1, k - 1))):
            dense[p] = raw
    return dense


def compute_galerkin_tensor(basis: ModeBasis, cfg: PlateConfig | None = None) -> GalerkinTensor:
    """Build A_k and all nonzero B entries for the relabelled basis.

    The x-factor is the exact sine quartic integral; the y-factor is a strip
    quadrature doubled by parity.  Entries whose x-factor vanishes or whose
    torsional count is odd are exact zeros and never stored, which is what
    makes the invariant subspaces of the coupled system exact.
    """
    cfg = cfg or basis.cfg
    n = basis.size
    profiles = [basis.profile(i + 1) for i in range(n)]
    wave = [p.m for p in profiles]
    tors = [basis.is_torsional(i + 1) for i in range(n)]

    A = np.empty(n)
    for i, p in enumerate(profiles):
        A[i] = 2.0 * (math.pi / 2.0) * strip_integral(
            lambda y: p.value(y) ** 2, cfg) / p.omega ** 2

    entries: dict[tuple[int, int, int, int], float] = {}
    ycache: dict[tuple[int, ...], float] = {}
    for combo in combinations_with_replacement(range(n), 4):
        if sum(tors[i] for i in combo) % 2:
            continue
        # one canonical quadruple yields entries for every choice of k slot
        for k in set(combo):
            rest = list(combo)
            rest.remove(k)
            j1, j2, j3 = sorted(rest, reverse=True)
            x = sine_quartic_integral(wave[j1], wave[j2], wave[j3], wave[k])
            if x == 0.0:
                continue
            key = combo
            if key not in ycache:
                ps = [profiles[i] for i in combo]
                ycache[key] = 2.0 * strip_integral(
                    lambda y: ps[0].normalized(y) * ps[1].normalized(y)
                    * ps[2].normalized(y) * ps[3].normalized(y), cfg)
            val = _multiplicity(j1, j2, j3) * x * ycache[key]
            if abs(val) >= TENSOR_DROP_TOL:
                entries[(j1 + 1, j2 + 1, j3 + 1, k + 1)] = val
    dense = _dense_from_entries(entries, n)
    return GalerkinTensor(n, A, entries, dense)


def influences(kset: tuple[int, ...] | list[int], j: int, tensor: GalerkinTensor) -> bool:
    """Whether the modes in kset jointly influence mode j.

    One mode k acts through B_{kkkj}; a pair k1 > k2 through B_{k1k1k2j} or
    B_{k1k2k2j}; a distinct triple k1 > k2 > k3 through B_{k1k2k3j}.
    """
    ks = sorted(set(kset), reverse=True)
    if j in ks:
        raise ValueError("j must not belong to kset")
    if len(ks) == 1:
        k = ks[0]
        return (k, k, k, j) in tensor.entries
    if len(ks) == 2:
        k1, k2 = ks
        return (k1, k1, k2, j) in tensor.entries or (k1, k2, k2, j) in tensor.entries
    if len(ks) == 3:
        return tuple(ks) + (j,) in tensor.entries
    raise ValueError("kset must hold 1..3 distinct modes")


def influence_closure(seed: set[int] | list[int], tensor: GalerkinTensor,
                      pool: range | None = None) -> set[int]:
    """Smallest mode set containing seed and closed under influence.

    Iterates single, pair, and triple influences from the active set until no
    new mode is reached; pool restricts which target modes are considered.
    """
    active = set(seed)
    pool = pool if pool is not None else range(1, tensor.size + 1)
    changed = True
    while changed:
        changed = False
        for j in pool:
            if j in active:
                continue
            hit = any(influences((k,), j, tensor) for k in active)
            if not hit:
                hit = any(influences(pair, j, tensor)
                          for pair in combinations(sorted(active), 2))
            if not hit:
                hit = any(influences(trip, j, tensor)
                          for trip in combinations(sorted(active), 3))
            if hit:
                active.add(j)
                changed = True
    return active
