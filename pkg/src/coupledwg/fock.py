"""Truncated two-mode Fock space with entanglement and mixedness measures.

States live on the dense product grid |n_a, n_b> with 0 <= n_a, n_b <= cutoff,
ordered lexicographically in (n_a, n_b).  Constructors for named states enforce
n_a + n_b <= cutoff so that photon-conserving (and photon-losing) dynamics stay
exact on the grid.  All logarithms are base 2: entropies and logarithmic
negativities are reported in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CapacityError, NumericalError, ValidationError

NORM_TOL = 1e-12
HERM_TOL = 1e-12
TRACE_TOL = 1e-10
EIG_FLOOR = -1e-9  # eigenvalues above this are treated as rounding noise

_MEASURE_KINDS = ("entropy", "log_negativity", "negativity", "purity")


class FockIndex(NamedTuple):
    """Occupation pair (n_a, n_b) labelling one basis vector."""

    n_a: int
    n_b: int


@dataclass(frozen=True)
class StateSpec:
    """Descriptor for a constructible input state.

    kind is one of "fock", "noon", "thermal", "tmsv"; params carries the
    occupation numbers (fock, thermal), the photon number (noon) or the
    squeezing strength (tmsv).
    """

    kind: str
    params: tuple[float, ...]

    def photons_needed(self) -> int:
        """Smallest cutoff that can host this state exactly."""
        if self.kind == "fock":
            return int(self.params[0] + self.params[1])
        if self.kind == "noon":
            return int(self.params[0])
        return 0


@dataclass(frozen=True)
class MeasureValue:
    """A named scalar measure so callers cannot mix up units/conventions."""

    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in _MEASURE_KINDS:
            raise ValidationError(f"unknown measure kind {self.kind!r}")
        v = float(self.value)
        if self.kind in ("entropy", "log_negativity", "negativity"):
            if v < -1e-9:
                raise ValidationError(f"{self.kind} must be >= 0, got {v}")
            v = max(v, 0.0)
        elif self.kind == "purity":
            if not (-1e-9 < v <= 1.0 + 1e-9):
                raise ValidationError(f"purity must lie in (0, 1], got {v}")
            v = min(max(v, 0.0), 1.0)
        object.__setattr__(self, "value", v)

    def __float__(self) -> float:
        return self.value


def basis_indices(cutoff: int) -> list[FockIndex]:
    """All grid points (n_a, n_b), lexicographic; flat index = n_a*(cutoff+1)+n_b."""
    d = cutoff + 1
    return [FockIndex(na, nb) for na in range(d) for nb in range(d)]


def _total_photon_grid(cutoff: int) -> np.ndarray:
    d = cutoff + 1
    na = np.arange(d)
    return na[:, None] + na[None, :]


@dataclass(frozen=True)
class TwoModePureState:
    """Normalized two-mode pure state; amplitudes[n_a, n_b] on the grid."""

    cutoff: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.cutoff < 0:
            raise ValidationError("cutoff must be non-negative")
        d = self.cutoff + 1
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (d, d):
            raise ValidationError(f"amplitudes must have shape {(d, d)}, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"state norm deviates from 1 by {abs(norm - 1.0):.3e}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** 2

    def flat(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)


@dataclass(frozen=True)
class TwoModeDensityMatrix:
    """Validated density matrix on the two-mode grid (Hermitian, unit trace, PSD)."""

    cutoff: int
    entries: np.ndarray

    def __post_init__(self):
        d = self.cutoff + 1
        ent = np.array(self.entries, dtype=complex)
        if ent.shape != (d * d, d * d):
            raise ValidationError(f"entries must have shape {(d*d, d*d)}, got {ent.shape}")
        herm = np.abs(ent - ent.conj().T).max()
        if herm > HERM_TOL:
            raise ValidationError(f"Hermiticity violated by {herm:.3e}")
        tr = ent.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace deviates from 1 by {abs(tr - 1.0):.3e}")
        evals = _eigvalsh(ent)
        if evals.min() < EIG_FLOOR:
            raise ValidationError(f"matrix has eigenvalue {evals.min():.3e} below {EIG_FLOOR}")
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** 2

    @classmethod
    def from_pure(cls, state: TwoModePureState) -> "TwoModeDensityMatrix":
        psi = state.flat()
        return cls(state.cutoff, np.outer(psi, psi.conj()))


def _eigvalsh(mat: np.ndarray) -> np.ndarray:
    """Hermitian eigenvalues with a real fast path and failure diagnostics."""
    try:
        if np.abs(mat.imag).max() < 1e-14:
            return np.linalg.eigvalsh(mat.real)
        return np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails
        raise NumericalError(
            f"eigensolver failed on {mat.shape} matrix "
            f"(norm {np.linalg.norm(mat):.3e}, "
            f"herm residual {np.abs(mat - mat.conj().T).max():.3e}): {exc}"
        ) from exc


def make_pure_state(spec: StateSpec, cutoff: int) -> TwoModePureState:
    """Build a named pure state on the grid.

    Supported kinds: fock (one basis vector) and noon ((|N,0> + |0,N>)/sqrt(2)).
    Raises CapacityError when the requested photon content exceeds the cutoff.
    """
    if not isinstance(spec, StateSpec):
        raise ValidationError("make_pure_state expects a StateSpec")
    d = cutoff + 1
    if spec.kind == "fock":
        na, nb = int(spec.params[0]), int(spec.params[1])
        if na < 0 or nb < 0:
            raise ValidationError("photon numbers must be non-negative")
        if na + nb > cutoff:
            raise CapacityError(f"fock({na},{nb}) needs cutoff >= {na + nb}, got {cutoff}")
        amps = np.zeros((d, d), dtype=complex)
        amps[na, nb] = 1.0
        return TwoModePureState(cutoff, amps)
    if spec.kind == "noon":
        n = int(spec.params[0])
        if n < 1:
            raise ValidationError("noon photon number must be >= 1")
        if n > cutoff:
            raise CapacityError(f"noon({n}) needs cutoff >= {n}, got {cutoff}")
        amps = np.zeros((d, d), dtype=complex)
        amps[n, 0] = amps[0, n] = 1.0 / math.sqrt(2.0)
        return TwoModePureState(cutoff, amps)
    raise ValidationError(f"cannot build a pure state from kind {spec.kind!r}")


def fock_state(n_a: int, n_b: int, cutoff: int) -> TwoModePureState:
    return make_pure_state(StateSpec("fock", (n_a, n_b)), cutoff)


def noon_state(n: int, cutoff: int) -> TwoModePureState:
    return make_pure_state(StateSpec("noon", (n,)), cutoff)


def state_from_amplitudes(amps: dict[tuple[int, int], complex] | np.ndarray,
                          cutoff: int) -> TwoModePureState:
    """Raw constructor (normalizes); unlike make_pure_state it allows support
    anywhere on the grid, e.g. for truncated squeezed states."""
    d = cutoff + 1
    grid = np.zeros((d, d), dtype=complex)
    if isinstance(amps, dict):
        for (na, nb), v in amps.items():
            grid[na, nb] = v
    else:
        grid[...] = amps
    norm = np.linalg.norm(grid)
    if norm == 0:
        raise ValidationError("cannot normalize the zero vector")
    return TwoModePureState(cutoff, grid / norm)


def _as_entries(rho) -> tuple[np.ndarray, int]:
    if isinstance(rho, TwoModeDensityMatrix):
        return rho.entries, rho.cutoff + 1
    mat = np.asarray(rho, dtype=complex)
    d = math.isqrt(mat.shape[0])
    if d * d != mat.shape[0] or mat.shape[0] != mat.shape[1]:
        raise ValidationError(f"matrix of shape {mat.shape} is not a two-mode grid operator")
    return mat, d


def partial_transpose(rho) -> np.ndarray:
    """Transpose the second mode: <n_a, m_b|out|m_a, n_b> = <n_a, n_b|rho|m_a, m_b>.

    Accepts a TwoModeDensityMatrix or a plain grid matrix (so applying it twice
    returns the original matrix exactly).
    """
    ent, d = _as_entries(rho)
    four = ent.reshape(d, d, d, d)  # [n_a, n_b, m_a, m_b]
    return np.ascontiguousarray(four.transpose(0, 3, 2, 1)).reshape(d * d, d * d)


def negativity(rho) -> float:
    """Sum of |negative eigenvalues| of the partially transposed matrix."""
    evals = _eigvalsh(partial_transpose(rho))
    return float(-evals[evals < 0.0].sum())


def log_negativity(rho) -> MeasureValue:
    """log2(1 + 2 * negativity); zero exactly for PPT states."""
    return MeasureValue("log_negativity", math.log2(1.0 + 2.0 * negativity(rho)))


def pure_log_negativity(state: TwoModePureState) -> MeasureValue:
    """Pure-state shortcut log2((sum of Schmidt coefficients)^2); used to
    cross-check the partial-transpose route."""
    s = np.linalg.svd(state.amplitudes, compute_uv=False)
    return MeasureValue("log_negativity", 2.0 * math.log2(float(s.sum())))


def reduced_state(rho, keep: str = "a") -> np.ndarray:
    """Partial trace down to one mode; returns a (cutoff+1)^2-free dxd matrix."""
    ent, d = _as_entries(rho)
    four = ent.reshape(d, d, d, d)
    if keep == "a":
        return np.einsum("aibi->ab", four)
    if keep == "b":
        return np.einsum("iaib->ab", four)
    raise ValidationError(f"keep must be 'a' or 'b', got {keep!r}")


def _clamped_probabilities(evals: np.ndarray) -> np.ndarray:
    if evals.min() < EIG_FLOOR:
        raise ValidationError(f"eigenvalue {evals.min():.3e} below tolerance floor {EIG_FLOOR}")
    return np.clip(evals, 0.0, 1.0)


def entropy_bits(probabilities: Iterable[float]) -> float:
    """Shannon entropy (base 2) of a set of non-negative weights; 0 log 0 = 0."""
    p = np.asarray(list(probabilities), dtype=float)
    p = p[p > 0.0]
    if p.size == 0:
        return 0.0
    return float(-(p * np.log2(p)).sum())


def von_neumann_entropy(sigma: np.ndarray) -> MeasureValue:
    """Entropy in bits of a single-mode density matrix."""
    evals = _clamped_probabilities(_eigvalsh(np.asarray(sigma, dtype=complex)))
    return MeasureValue("entropy", entropy_bits(evals))


def purity(rho) -> MeasureValue:
    """Tr(rho^2) as a real number in (0, 1]."""
    ent, _ = _as_entries(rho)
    val = float(np.trace(ent @ ent).real)
    return MeasureValue("purity", val)
