"""Exact evolution of two coupled modes with equal photon loss, plus the
closed-form entanglement and purity expressions for that system.

Propagation strategy: rotate to the coupler's normal modes (a balanced mode
mixer in mode space), where the Hamiltonian splits into two free modes at
frequencies omega -+ J and the equal-rate loss channels keep their product
form; apply the exact single-mode photon-loss kernel to each rotated mode;
rotate back.  Pure loss never raises photon number, so for inputs supported
on the capacity region n_a + n_b <= cutoff the grid evolution matches the
untruncated dynamics to machine precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NumericalError, TruncationError, ValidationError
from .fock import MeasureValue, TwoModeDensityMatrix, entropy_bits
from .lossless import CouplerParams, _require_capacity_support, _sector_eigensystem

TRACE_DEFICIT_LIMIT = 1e-10


@dataclass(frozen=True)
class DampedParams:
    """Coupler parameters plus one photon-loss rate shared by both modes."""

    omega: float
    J: float
    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.omega):
            raise ValidationError(f"omega must be finite, got {self.omega}")
        if not (math.isfinite(self.J) and self.J > 0.0):
            raise ValidationError(f"J must be finite and > 0, got {self.J}")
        if not (math.isfinite(self.gamma) and self.gamma >= 0.0):
            raise ValidationError(f"gamma must be finite and >= 0, got {self.gamma}")

    def coupler(self) -> CouplerParams:
        return CouplerParams(self.omega, self.J)


@dataclass(frozen=True)
class BogoliubovParams:
    """Squeezing content of the two damped normal modes (branch 1: omega - J,
    branch 2: omega + J) together with their complex frequencies."""

    mu1: float
    nu1: float
    mu2: float
    nu2: float
    r1: float
    r2: float
    omega1: complex
    omega2: complex
    omega3: complex
    omega4: complex


def bogoliubov_params(p: DampedParams) -> BogoliubovParams:
    """nu_k = gamma / sqrt(2 gamma^2 + (omega -+ J)^2) with the 0/0 limit set
    to 0, mu_k = sqrt(1 + nu_k^2) so mu^2 - nu^2 = 1 exactly, r_k = asinh(nu_k).
    The four complex frequencies are -+ sqrt(gamma^2 + (omega -+ J)^2)/2 - i gamma/2.
    """
    branch = []
    for detun in (p.omega - p.J, p.omega + p.J):
        denom = math.sqrt(2.0 * p.gamma ** 2 + detun ** 2)
        nu = 0.0 if denom == 0.0 else p.gamma / denom
        branch.append((math.sqrt(1.0 + nu * nu), nu, math.asinh(nu)))
    (mu1, nu1, r1), (mu2, nu2, r2) = branch
    half1 = 0.5 * math.sqrt(p.gamma ** 2 + (p.omega - p.J) ** 2)
    half2 = 0.5 * math.sqrt(p.gamma ** 2 + (p.omega + p.J) ** 2)
    shift = -0.5j * p.gamma
    return BogoliubovParams(mu1, nu1, mu2, nu2, r1, r2,
                            -half1 + shift, half1 + shift,
                            -half2 + shift, half2 + shift)


def _su11_factorization(eta_plus: complex, eta_3: complex, eta_minus: complex):
    """Coefficients of the normally ordered form of exp(eta_+ K_+ + eta_3 K_3
    + eta_- K_-) for su(1,1) generators.

    Returns (gamma_plus, g3_root, gamma_minus, phi) with gamma_3 = g3_root**2;
    the root is what the number-basis kernel consumes, and computing it
    directly sidesteps any square-root branch choice.
    """
    phi = cmath.sqrt(eta_3 * eta_3 / 4.0 - eta_plus * eta_minus)
    if abs(phi) < 1e-6:
        p2 = phi * phi
        sinh_ratio = 1.0 + p2 / 6.0 + p2 * p2 / 120.0
    else:
        sinh_ratio = cmath.sinh(phi) / phi
    denom = 2.0 * cmath.cosh(phi) - eta_3 * sinh_ratio
    if denom == 0.0:
        raise NumericalError("ordered-form denominator vanished")
    g3_root = 2.0 / denom
    return (eta_plus * sinh_ratio * g3_root, g3_root,
            eta_minus * sinh_ratio * g3_root, phi)


@dataclass(frozen=True)
class DisentangleParams:
    """Generator weights eta and the resulting ordered-product coefficients."""

    eta_plus: complex
    eta_3: complex
    eta_minus: complex
    phi: complex
    gamma_plus: complex
    gamma_3: complex
    gamma_minus: complex


def disentangle_params(p: DampedParams, t: float) -> DisentangleParams:
    """Ordered-product coefficients for the generator weights eta_- = gamma t,
    eta_3 = -2 (gamma + i J) t, eta_+ = -gamma t.

    These weights satisfy the boundary identities (all coefficients trivial at
    t = 0; |gamma_3| = 1 and gamma_+- = 0 at gamma = 0) but inject energy into
    the vacuum when gamma > 0, so the propagator uses the pure-loss weights
    from loss_channel_factors instead.
    """
    if not (math.isfinite(t) and t >= 0.0):
        raise ValidationError(f"t must be finite and >= 0, got {t}")
    eta_minus = complex(p.gamma * t)
    eta_3 = -2.0 * (p.gamma + 1j * p.J) * t
    eta_plus = complex(-p.gamma * t)
    g_plus, g3_root, g_minus, phi = _su11_factorization(eta_plus, eta_3, eta_minus)
    return DisentangleParams(eta_plus, eta_3, eta_minus, phi,
                             g_plus, g3_root * g3_root, g_minus)


def loss_channel_factors(gamma: float, t: float) -> tuple[complex, complex, complex]:
    """(gamma_plus, sqrt(gamma_3), gamma_minus) for one mode with pure photon
    loss at rate gamma: analytically (0, e^{-gamma t}, 1 - e^{-2 gamma t})."""
    g_plus, g3_root, g_minus, _ = _su11_factorization(
        0.0, -2.0 * gamma * t, 2.0 * gamma * t)
    return g_plus, g3_root, g_minus


@lru_cache(maxsize=None)
def _sector_rotation(total: int) -> np.ndarray:
    # exp(-(pi/4)(a^dag b - b^dag a)) restricted to one total-photon sector;
    # the phase gauge diag(i^n) turns the antisymmetric generator into the
    # symmetric coupling matrix, whose eigensystem is already cached.
    lam, vec = _sector_eigensystem(total)
    phase = np.array([1j ** n for n in range(total + 1)])
    core = (vec * np.exp(-0.25j * math.pi * lam)) @ vec.T
    u = phase.conj()[:, None] * core * phase[None, :]
    u.setflags(write=False)
    return u


def mode_rotation(cutoff: int) -> np.ndarray:
    """Grid unitary of the balanced mode mixer taking a^dag b + b^dag a to
    n_b - n_a.  Corner sectors (total photon number above the cutoff) are left
    on the identity; capacity-supported states never reach them."""
    d = cutoff + 1
    out = np.eye(d * d, dtype=complex)
    for total in range(cutoff + 1):
        u = _sector_rotation(total)
        idx = [na * d + (total - na) for na in range(total + 1)]
        out[np.ix_(idx, idx)] = u
    return out


def _branch_kernel(dim: int, freq: float, gamma: float, t: float,
                   g_plus: complex, g3_root: complex, g_minus: complex) -> np.ndarray:
    """Single-mode channel on number-basis matrix units, as a (dim^2, dim^2)
    matrix over row-major vectorized operators.

    Entries connect source (M, M') to target (m, m') on the same coherence
    diagonal m - m' = M - M'.  The free phase e^{-i freq t (m - m')} and the
    scalar e^{gamma t} from normal-ordering the loss generator are folded in.
    """
    kern = np.zeros((dim * dim, dim * dim), dtype=complex)
    scale = cmath.exp(gamma * t)
    for m in range(dim):
        for mp in range(dim):
            phase = scale * cmath.exp(-1j * freq * t * (m - mp))
            row = m * dim + mp
            for big in range(dim):
                bigp = big - (m - mp)
                if bigp < 0 or bigp >= dim:
                    continue
                acc = 0.0j
                for q in range(max(0, big - m), min(big, bigp) + 1):
                    p = m - big + q
                    coeff = math.sqrt(math.comb(big, q) * math.comb(bigp, q)
                                      * math.comb(m, p) * math.comb(mp, p))
                    acc += (coeff * g_minus ** q
                            * g3_root ** (big + bigp - 2 * q + 1) * g_plus ** p)
                kern[row, big * dim + bigp] = phase * acc
    return kern


def _apply_mode_kernels(sigma: np.ndarray, kern_a: np.ndarray,
                        kern_b: np.ndarray) -> np.ndarray:
    """Apply independent single-mode kernels to the two slots of a grid
    operator sigma[(ma, mb), (ma', mb')]."""
    d2 = sigma.shape[0]
    d = int(round(math.sqrt(d2)))
    four = sigma.reshape(d, d, d, d)                    # [ma, mb, ma', mb']
    paired = four.transpose(0, 2, 1, 3).reshape(d * d, d * d)
    paired = kern_a @ paired @ kern_b.T
    return paired.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d2, d2)


def evolve_damped_exact(rho: TwoModeDensityMatrix, p: DampedParams,
                        t: float) -> TwoModeDensityMatrix:
    """Propagate rho for a time t >= 0 under the coupler Hamiltonian with
    equal photon loss on both modes.  No time stepping is involved; cost is
    set by the grid size only."""
    if not (math.isfinite(t) and t >= 0.0):
        raise ValidationError(f"t must be finite and >= 0, got {t}")
    d = rho.cutoff + 1
    diag = np.real(np.diagonal(rho.entries)).reshape(d, d)
    _require_capacity_support(diag, rho.cutoff, "density-matrix diagonal")
    u = mode_rotation(rho.cutoff)
    sigma = u @ rho.entries @ u.conj().T
    g_plus, g3_root, g_minus = loss_channel_factors(p.gamma, t)
    kern_a = _branch_kernel(d, p.omega - p.J, p.gamma, t, g_plus, g3_root, g_minus)
    kern_b = _branch_kernel(d, p.omega + p.J, p.gamma, t, g_plus, g3_root, g_minus)
    sigma_t = _apply_mode_kernels(sigma, kern_a, kern_b)
    rho_t = u.conj().T @ sigma_t @ u
    trace = float(np.trace(rho_t).real)
    deficit = abs(trace - 1.0)
    if deficit > TRACE_DEFICIT_LIMIT:
        raise TruncationError(
            f"probability {deficit:.3e} left the grid; raise the cutoff above "
            f"{rho.cutoff}", tail_estimate=deficit)
    rho_t = rho_t / trace
    rho_t = 0.5 * (rho_t + rho_t.conj().T)
    return TwoModeDensityMatrix(rho.cutoff, rho_t)


def _theta(p: DampedParams, t: float) -> complex:
    return complex(math.sqrt(2.0) * p.gamma, p.J) * t


def _damped_diagonal(total: int, p: DampedParams, t: float) -> np.ndarray:
    th = _theta(p, t)
    sh2 = abs(cmath.sinh(th)) ** 2
    ch2 = abs(cmath.cosh(th)) ** 2
    norm = (sh2 + ch2) ** total
    return np.array([math.comb(total, n) * sh2 ** n * ch2 ** (total - n) / norm
                     for n in range(total + 1)])


def damped_pt_spectrum(total: int, p: DampedParams, t: float) -> np.ndarray:
    """Closed-form partial-transpose spectrum (descending) for the damped
    coupler driven by the |0, N> input, renormalized to unit trace.  At
    gamma = 0 this coincides with the lossless spectrum as a multiset."""
    th = _theta(p, t)
    sh, ch = abs(cmath.sinh(th)), abs(cmath.cosh(th))
    norm = (sh * sh + ch * ch) ** total
    vals = list(_damped_diagonal(total, p, t))
    for n in range(total + 1):
        for m in range(n + 1, total + 1):
            mag = (math.factorial(total)
                   / math.sqrt(math.factorial(total - n) * math.factorial(total - m)
                               * math.factorial(n) * math.factorial(m))
                   * sh ** (n + m) * ch ** (2 * total - n - m)) / norm
            vals.extend((mag, -mag))
    return np.sort(np.asarray(vals))[::-1]


def damped_entropy(total: int, p: DampedParams, t: float) -> MeasureValue:
    """Entropy (bits) of the normalized diagonal family; reduces to the
    lossless entropy at gamma = 0 and to 0 at t = 0."""
    return MeasureValue("entropy", entropy_bits(_damped_diagonal(total, p, t)))


_PURITY_VARIANTS = ("as-printed", "rate-times-t")


def purity_closed(p: DampedParams, t: float, variant: str = "as-printed") -> MeasureValue:
    """Closed-form purity of the damped pair, exactly 1 at t = 0 or gamma = 0.

    The two variants differ in the mixing term of the denominator:
    "as-printed" uses gamma + i J t, "rate-times-t" uses (gamma + i J) t.
    The real part is clamped into [0, 1].
    """
    if variant not in _PURITY_VARIANTS:
        raise ValidationError(f"variant must be one of {_PURITY_VARIANTS}, got {variant!r}")
    if not (math.isfinite(t) and t >= 0.0):
        raise ValidationError(f"t must be finite and >= 0, got {t}")
    if t == 0.0 or p.gamma == 0.0:
        return MeasureValue("purity", 1.0)
    th = _theta(p, t)
    if variant == "as-printed":
        mix = complex(p.gamma, p.J * t)
    else:
        mix = complex(p.gamma, p.J) * t
    expo = -4.0 * p.gamma * t * cmath.sinh(th) / (th * cmath.cosh(th) + mix * cmath.sinh(th))
    val = cmath.exp(expo).real
    return MeasureValue("purity", min(max(val, 0.0), 1.0))
