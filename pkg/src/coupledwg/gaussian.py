"""Continuous-variable treatment: 4x4 covariance matrices for squeezed and
thermal inputs under the damped coupler, symplectic spectra, and the
log-negativity computed from the partially transposed invariants.

Quadrature ordering is (x_a, p_a, x_b, p_b) with the vacuum at identity/2, so
physical states have symplectic eigenvalues >= 1/2.  Time enters only through
the loss factor e^{-2 gamma t}; the free phase of the coupled evolution is a
local rotation and is dropped, so at gamma = 0 every curve here is flat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .damped import DampedParams, bogoliubov_params
from .errors import NumericalError, ValidationError
from .fock import MeasureValue, TwoModePureState, state_from_amplitudes

_J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
PHYSICAL_TOL = 1e-9
DISCRIMINANT_FLOOR = -1e-10


@dataclass(frozen=True)
class GaussianState:
    """A 4x4 real symmetric covariance matrix; symmetry is enforced here,
    physicality by the constructors below."""

    covariance: np.ndarray

    def __post_init__(self):
        cov = np.array(self.covariance, dtype=float)
        if cov.shape != (4, 4):
            raise ValidationError(f"covariance must be 4x4, got {cov.shape}")
        if not np.all(np.isfinite(cov)):
            raise ValidationError("covariance has non-finite entries")
        if np.max(np.abs(cov - cov.T)) > 1e-10:
            raise ValidationError("covariance is not symmetric")
        cov = 0.5 * (cov + cov.T)
        cov.setflags(write=False)
        object.__setattr__(self, "covariance", cov)


def _as_covariance(state) -> np.ndarray:
    if isinstance(state, GaussianState):
        return state.covariance
    cov = np.asarray(state, dtype=float)
    if cov.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 covariance, got shape {cov.shape}")
    return cov


def _blocks(cov: np.ndarray):
    return cov[:2, :2], cov[2:, 2:], cov[:2, 2:]


def symplectic_eigenvalues(state, partial_transposed: bool = False) -> tuple:
    """(nu_minus, nu_plus) from the quadratic invariant; the partial-transpose
    branch flips the sign of the cross-block determinant."""
    cov = _as_covariance(state)
    alpha, beta, cross = _blocks(cov)
    det_a = float(np.linalg.det(alpha))
    det_b = float(np.linalg.det(beta))
    det_c = float(np.linalg.det(cross))
    det_v = float(np.linalg.det(cov))
    delta = det_a + det_b + (-2.0 * det_c if partial_transposed else 2.0 * det_c)
    disc = delta * delta - 4.0 * det_v
    scale = max(1.0, delta * delta, abs(det_v))
    if disc < DISCRIMINANT_FLOOR * scale:
        raise NumericalError(f"symplectic discriminant {disc:.3e} is negative")
    root = math.sqrt(max(disc, 0.0))
    lo = 0.5 * (delta - root)
    hi = 0.5 * (delta + root)
    if lo < -1e-10 * max(1.0, abs(delta)):
        raise NumericalError(f"negative squared symplectic eigenvalue {lo:.3e}")
    return math.sqrt(max(lo, 0.0)), math.sqrt(hi)


def is_physical(state, tol: float = PHYSICAL_TOL) -> bool:
    """Uncertainty-principle check: smallest normal-branch symplectic
    eigenvalue at least 1/2 (up to tol).  A matrix whose invariants do not
    even yield real symplectic eigenvalues is reported as unphysical rather
    than as an error."""
    try:
        nu_minus, _ = symplectic_eigenvalues(state)
    except NumericalError:
        return False
    return nu_minus >= 0.5 - tol


def log_negativity_gaussian(state) -> MeasureValue:
    """max(0, -log2(2 nu_minus~)) with nu_minus~ the smaller partially
    transposed symplectic eigenvalue."""
    nu_minus, _ = symplectic_eigenvalues(state, partial_transposed=True)
    if nu_minus <= 0.0:
        raise NumericalError("partially transposed eigenvalue collapsed to zero")
    return MeasureValue("log_negativity", max(0.0, -math.log2(2.0 * nu_minus)))


def simon_separable(state, band: float = 1e-12) -> bool:
    """Determinant-based separability test for two-mode Gaussian states; for
    these states it is exact, so it must agree with log_negativity == 0."""
    cov = _as_covariance(state)
    alpha, beta, cross = _blocks(cov)
    det_a = float(np.linalg.det(alpha))
    det_b = float(np.linalg.det(beta))
    det_c = float(np.linalg.det(cross))
    mixed = float(np.trace(alpha @ _J2 @ cross @ _J2 @ beta @ _J2 @ cross.T @ _J2))
    lhs = det_a * det_b + (0.25 - abs(det_c)) ** 2 - mixed
    rhs = 0.25 * (det_a + det_b)
    return lhs >= rhs - band


def tmsv_covariance(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum with squeezing r (x-correlations negative,
    p-correlations positive)."""
    if not math.isfinite(r):
        raise ValidationError(f"r must be finite, got {r}")
    ch, sh = math.cosh(2.0 * r), math.sinh(2.0 * r)
    return 0.5 * np.array([[ch, 0.0, -sh, 0.0],
                           [0.0, ch, 0.0, sh],
                           [-sh, 0.0, ch, 0.0],
                           [0.0, sh, 0.0, ch]])


def vacuum_covariance() -> np.ndarray:
    return 0.5 * np.eye(4)


def squeezing_parameters(p: DampedParams) -> tuple:
    """(r1, r2) of the damped normal modes; a diagnostic for how much
    squeezing the dissipative branches sustain."""
    bp = bogoliubov_params(p)
    return bp.r1, bp.r2


def vacuum_evolved_covariance(p: DampedParams, t: float, r1: float, r2: float) -> np.ndarray:
    """Covariance of an input squeezed along both normal-mode branches after
    time t of loss: the squeezed part decays as e^{-2 gamma t} while vacuum
    noise flows back in, so the matrix tends to the vacuum."""
    for name, val in (("t", t), ("r1", r1), ("r2", r2)):
        if not math.isfinite(val):
            raise ValidationError(f"{name} must be finite, got {val}")
    if t < 0.0:
        raise ValidationError(f"t must be >= 0, got {t}")
    decay = math.exp(-2.0 * p.gamma * t)
    press = decay * (math.cosh(2.0 * r1) + math.cosh(2.0 * r2)) + 2.0 * (1.0 - decay)
    shear = decay * (math.sinh(2.0 * r1) + math.sinh(2.0 * r2))
    return 0.25 * np.array([[press, 0.0, -shear, 0.0],
                            [0.0, press, 0.0, shear],
                            [-shear, 0.0, press, 0.0],
                            [0.0, shear, 0.0, press]])


def thermal_evolved_covariance(p: DampedParams, t: float, n1: float, n2: float,
                               r1: float, r2: float) -> np.ndarray:
    """Same evolution with thermal occupations n1, n2 seeding the two
    branches.  At n1 = n2 = 0 this is vacuum_evolved_covariance exactly; at
    gamma = 0 with equal occupations and squeezings it is (1 + n) times the
    squeezed-vacuum covariance, so the log-negativity loses log2(1 + n)."""
    for name, val in (("n1", n1), ("n2", n2)):
        if not (math.isfinite(val) and val >= 0.0):
            raise ValidationError(f"{name} must be finite and >= 0, got {val}")
    decay = math.exp(-2.0 * p.gamma * t)
    c = decay * (n1 * math.cosh(r1) ** 2 + n2 * math.sinh(r1) ** 2)
    d = decay * (n1 * math.sinh(r2) ** 2 + n2 * math.cosh(r2) ** 2)
    e = decay * 0.5 * (n1 + n2) * math.sinh(2.0 * r1)
    f = decay * 0.5 * (n1 + n2) * math.sinh(2.0 * r2)
    extra = 0.5 * np.array([[c, 0.0, -e, 0.0],
                            [0.0, c, 0.0, f],
                            [-e, 0.0, d, 0.0],
                            [0.0, f, 0.0, d]])
    return vacuum_evolved_covariance(p, t, r1, r2) + extra


def vacuum_evolved_state(p: DampedParams, t: float, r1: float, r2: float) -> GaussianState:
    state = GaussianState(vacuum_evolved_covariance(p, t, r1, r2))
    if not is_physical(state):
        raise ValidationError("evolved covariance violates the uncertainty bound")
    return state


def thermal_evolved_state(p: DampedParams, t: float, n1: float, n2: float,
                          r1: float, r2: float) -> GaussianState:
    state = GaussianState(thermal_evolved_covariance(p, t, n1, n2, r1, r2))
    if not is_physical(state):
        raise ValidationError("evolved covariance violates the uncertainty bound")
    return state


def two_mode_squeezed_state(r: float, cutoff: int) -> TwoModePureState:
    """Number-basis twin of tmsv_covariance for cross-checking the two
    pictures: amplitudes tanh(r)^n on the diagonal, normalized on the grid."""
    if not math.isfinite(r):
        raise ValidationError(f"r must be finite, got {r}")
    lam = math.tanh(r)
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for n in range(cutoff + 1):
        amps[n, n] = lam ** n
    return state_from_amplitudes(amps, cutoff)
