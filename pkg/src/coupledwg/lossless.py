"""Lossless dynamics of two linearly coupled modes.

The Hamiltonian omega*(n_a + n_b) + J*(a+ b + b+ a) conserves total photon
number, so evolution block-diagonalizes over sectors of fixed N.  Each sector
is an (N+1)x(N+1) real tridiagonal matrix whose eigensystem is computed once
and cached; time evolution is then exact to machine precision for any t.

Closed-form results for a single-mode Fock input |0, N> are provided alongside
(coefficients, partial-transpose spectrum, entanglement entropy) so the
numerical propagator can be checked against them and vice versa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, ValidationError
from .fock import (
    MeasureValue,
    TwoModeDensityMatrix,
    TwoModePureState,
    _total_photon_grid,
    entropy_bits,
    noon_state,
    pure_log_negativity,
)


@dataclass(frozen=True)
class CouplerParams:
    """Mode frequency omega and coupling strength J (both in the same units)."""

    omega: float
    J: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and math.isfinite(self.J)):
            raise ValidationError("omega and J must be finite")
        if self.J <= 0.0:
            raise ValidationError(f"J must be positive, got {self.J}")


@dataclass(frozen=True)
class Su2RotationParam:
    """Group parameters of the coupler rotation at angle Jt.

    alpha is the antisymmetric generator weight i*Jt; xi = alpha tan|alpha|/|alpha|
    is the equivalent ladder-ordered parameter, with |xi| = tan(Jt).  Note that
    su2_coefficients uses the conjugate phase (-i)^n, which is the choice
    consistent with exp(-i H t) evolution; the sign cannot affect any measure.
    """

    alpha: complex
    xi: complex


def su2_rotation_param(jt: float) -> Su2RotationParam:
    alpha = 1j * jt
    xi = 0j if jt == 0 else alpha * math.tan(abs(jt)) / abs(jt)
    return Su2RotationParam(alpha=alpha, xi=xi)


def sector_coupling_matrix(total: int) -> np.ndarray:
    """Matrix of a+ b + b+ a on the sector span{|n, total-n>}, n = 0..total."""
    if total < 0:
        raise ValidationError("total photon number must be non-negative")
    mat = np.zeros((total + 1, total + 1))
    n = np.arange(total)
    off = np.sqrt((n + 1.0) * (total - n))
    mat[n + 1, n] = off
    mat[n, n + 1] = off
    return mat


@lru_cache(maxsize=None)
def _sector_eigensystem(total: int) -> tuple[np.ndarray, np.ndarray]:
    lam, vec = np.linalg.eigh(sector_coupling_matrix(total))
    lam.setflags(write=False)
    vec.setflags(write=False)
    return lam, vec


def _sector_unitary(total: int, params: CouplerParams, t: float) -> np.ndarray:
    lam, vec = _sector_eigensystem(total)
    phases = np.exp(-1j * params.J * t * lam)
    return np.exp(-1j * params.omega * total * t) * ((vec * phases) @ vec.T)


def _require_capacity_support(values: np.ndarray, cutoff: int, what: str):
    corner = _total_photon_grid(cutoff) > cutoff
    if np.any(values[corner] != 0):
        raise CapacityError(
            f"{what} has support on grid points with n_a + n_b > {cutoff}; "
            "photon-conserving evolution would be truncated there"
        )


def evolve_lossless(state: TwoModePureState, params: CouplerParams,
                    t: float) -> TwoModePureState:
    """Propagate a pure state for time t; exact within each photon sector.

    Raises CapacityError if the input occupies grid points with total photon
    number above the cutoff, where the sector does not fit on the grid.
    """
    cutoff = state.cutoff
    amps = state.amplitudes
    _require_capacity_support(amps, cutoff, "input state")
    out = np.zeros_like(amps)
    for total in range(cutoff + 1):
        na = np.arange(total + 1)
        vec = amps[na, total - na]
        if not np.any(vec):
            continue
        out[na, total - na] = _sector_unitary(total, params, t) @ vec
    return TwoModePureState(cutoff, out)


def lossless_unitary(cutoff: int, params: CouplerParams, t: float) -> np.ndarray:
    """Full-grid propagator, block unitary over photon sectors.

    Grid points with n_a + n_b > cutoff cannot host their full sector and are
    left untouched (identity blocks); keep support inside the capacity region.
    """
    d = cutoff + 1
    u = np.eye(d * d, dtype=complex)
    for total in range(cutoff + 1):
        na = np.arange(total + 1)
        flat = na * d + (total - na)
        u[np.ix_(flat, flat)] = _sector_unitary(total, params, t)
    return u


def evolve_lossless_dm(rho: TwoModeDensityMatrix, params: CouplerParams,
                       t: float) -> TwoModeDensityMatrix:
    """Conjugate a density matrix with the sector propagator."""
    diag = rho.entries.diagonal().real.reshape(rho.cutoff + 1, rho.cutoff + 1)
    _require_capacity_support(diag, rho.cutoff, "input density matrix")
    u = lossless_unitary(rho.cutoff, params, t)
    return TwoModeDensityMatrix(rho.cutoff, u @ rho.entries @ u.conj().T)


# ------------------------------------------------------------- closed forms


def su2_coefficients(total: int, jt: float) -> np.ndarray:
    """Amplitudes of exp(-iHt)|0, N> at omega = 0.

    Entry n is the amplitude on |n, N-n>:
    (-i)^n sin(Jt)^n cos(Jt)^(N-n) sqrt(binom(N, n)).
    """
    if total < 0:
        raise ValidationError("total photon number must be non-negative")
    n = np.arange(total + 1)
    binom = np.array([math.comb(total, int(k)) for k in n], dtype=float)
    s, c = math.sin(jt), math.cos(jt)
    return (-1j) ** n * s ** n * c ** (total - n) * np.sqrt(binom)


def _binomial_weights(total: int, jt: float) -> np.ndarray:
    n = np.arange(total + 1)
    binom = np.array([math.comb(total, int(k)) for k in n], dtype=float)
    s2, c2 = math.sin(jt) ** 2, math.cos(jt) ** 2
    return binom * s2 ** n * c2 ** (total - n)


def pt_spectrum_closed(total: int, jt: float) -> np.ndarray:
    """All (N+1)^2 partial-transpose eigenvalues of the evolved |0, N> state.

    The weights binom(N,n) sin^2n cos^2(N-n) appear once each on the diagonal;
    every unordered pair contributes +-sqrt(w_n w_m).  Returned in descending
    order for deterministic serialization.
    """
    weights = _binomial_weights(total, jt)
    mags = np.sqrt(weights)
    vals = list(weights)
    for n in range(total + 1):
        for m in range(n + 1, total + 1):
            pair = mags[n] * mags[m]
            vals.extend((pair, -pair))
    return np.sort(np.asarray(vals))[::-1]


def entropy_closed(total: int, jt: float) -> MeasureValue:
    """Entanglement entropy (bits) of the evolved |0, N> state: the Shannon
    entropy of the binomial photon distribution with p = sin^2(Jt)."""
    return MeasureValue("entropy", entropy_bits(_binomial_weights(total, jt)))


def log_negativity_closed(total: int, jt: float) -> MeasureValue:
    """Log-negativity of the evolved |0, N> state from the closed spectrum."""
    evals = pt_spectrum_closed(total, jt)
    neg = float(-evals[evals < 0.0].sum())
    return MeasureValue("log_negativity", math.log2(1.0 + 2.0 * neg))


def noon_log_negativity(total: int, jt: float) -> MeasureValue:
    """Log-negativity of an evolved N00N state (J = 1, so time is Jt)."""
    state = noon_state(total, cutoff=total)
    evolved = evolve_lossless(state, CouplerParams(0.0, 1.0), jt)
    return pure_log_negativity(evolved)
