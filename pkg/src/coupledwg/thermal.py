"""Entanglement measures for number-truncated thermal inputs at a lossless coupler.

The construction keeps a single total-photon sector N and attaches geometric
(Bose-Einstein) weights nbar^n/(nbar+1)^(n+1) to the coupler's closed-form
partial-transpose spectrum.  The weighted spectrum does not sum to one: the
default "as-printed" variant evaluates it as it stands (this is what the
reference curves show), while "normalized" rescales the diagonal family to a
probability vector first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .fock import MeasureValue, entropy_bits

_VARIANTS = ("as-printed", "normalized")


@dataclass(frozen=True)
class ThermalOccupation:
    """Mean photon numbers of the two input modes."""

    nbar_a: float
    nbar_b: float

    def __post_init__(self):
        for label, value in (("nbar_a", self.nbar_a), ("nbar_b", self.nbar_b)):
            if not math.isfinite(value) or value < 0.0:
                raise ValidationError(f"{label} must be finite and >= 0, got {value}")


def thermal_weight(nbar: float, n: int) -> float:
    """Geometric occupation weight nbar^n / (nbar+1)^(n+1); sums to 1 over n."""
    if nbar < 0.0:
        raise ValidationError(f"nbar must be >= 0, got {nbar}")
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    return nbar ** n / (nbar + 1.0) ** (n + 1)


def _lossless_diagonal(total: int, jt: float) -> np.ndarray:
    n = np.arange(total + 1)
    binom = np.array([math.comb(total, int(k)) for k in n], dtype=float)
    s2, c2 = math.sin(jt) ** 2, math.cos(jt) ** 2
    return binom * s2 ** n * c2 ** (total - n)


def _pair_magnitude(total: int, n: int, m: int, jt: float) -> float:
    s, c = math.sin(jt), math.cos(jt)
    return (math.factorial(total)
            / math.sqrt(math.factorial(total - n) * math.factorial(total - m)
                        * math.factorial(n) * math.factorial(m))
            * s ** (n + m) * c ** (2 * total - n - m))


def _check_variant(variant: str):
    if variant not in _VARIANTS:
        raise ValidationError(f"variant must be one of {_VARIANTS}, got {variant!r}")


def thermal_diagonal_family(total: int, jt: float, occ: ThermalOccupation,
                            variant: str = "as-printed") -> np.ndarray:
    """Diagonal partial-transpose family: squared mode-a weight times the
    lossless binomial family.  The normalized variant rescales to unit sum."""
    _check_variant(variant)
    weights = np.array([thermal_weight(occ.nbar_a, n) ** 2
                        for n in range(total + 1)])
    fam = weights * _lossless_diagonal(total, jt)
    if variant == "normalized":
        tot = fam.sum()
        if tot <= 0.0:
            raise ValidationError("cannot normalize an all-zero spectrum")
        fam = fam / tot
    return fam


def thermal_pt_spectrum(total: int, jt: float, occ: ThermalOccupation,
                        variant: str = "as-printed") -> np.ndarray:
    """All (N+1)^2 partial-transpose eigenvalues with thermal weights attached.

    Ordered index pairs (n, m), n != m, carry weight_a(n) * weight_b(m) times
    the lossless pair magnitude, signed + for n < m and - for n > m; for equal
    occupations this is the usual +- pair family.  Descending order.
    """
    _check_variant(variant)
    diag = thermal_diagonal_family(total, jt, occ, variant="as-printed")
    vals = list(diag)
    for n in range(total + 1):
        for m in range(total + 1):
            if n == m:
                continue
            mag = (thermal_weight(occ.nbar_a, n) * thermal_weight(occ.nbar_b, m)
                   * abs(_pair_magnitude(total, n, m, jt)))
            vals.append(mag if n < m else -mag)
    spectrum = np.asarray(vals)
    if variant == "normalized":
        tot = diag.sum()
        if tot <= 0.0:
            raise ValidationError("cannot normalize an all-zero spectrum")
        spectrum = spectrum / tot
    return np.sort(spectrum)[::-1]


def thermal_entropy(total: int, jt: float, occ: ThermalOccupation,
                    variant: str = "as-printed") -> MeasureValue:
    """Entropy (bits) of the thermal diagonal family; uses occ.nbar_a, matching
    the closed forms this reproduces.  With "as-printed" the family is used
    unnormalized, so the value tends to 0 as nbar grows."""
    fam = thermal_diagonal_family(total, jt, occ, variant)
    return MeasureValue("entropy", entropy_bits(fam))
