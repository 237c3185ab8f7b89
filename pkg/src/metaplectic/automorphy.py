"""Holomorphic square-root automorphy factors on both half-planes.

The section is pinned constructively: the lifted generators [S,1] and [T,1]
carry the principal branches sqrt(z) and 1.  The factor of any other
determinant-one matrix is built by decomposing it into a generator word,
composing the per-generator factors through the pair product, and correcting
by the exact cover sign of the lifted word, so that ``phi_upper(gamma, .)``
is the factor attached to [gamma, +1].
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

from .cover import Mat2, Word, TOKEN_MATS, reflection_sign, word_decompose, word_lift
from .errors import DomainError

AXIS_TOLERANCE = 1e-12


def require_off_axis(z) -> complex:
    z = complex(z)
    if abs(z.imag) <= AXIS_TOLERANCE:
        raise DomainError(f"point {z} is on (or within {AXIS_TOLERANCE} of) the real axis")
    return z


def require_upper(z) -> complex:
    z = require_off_axis(z)
    if z.imag < 0:
        raise DomainError(f"point {z} is not in the upper half-plane")
    return z


def require_lower(z) -> complex:
    z = require_off_axis(z)
    if z.imag > 0:
        raise DomainError(f"point {z} is not in the lower half-plane")
    return z


def principal_sqrt(w) -> complex:
    """Square root with argument in (-pi, pi]; negative reals map to i*sqrt|w|."""
    w = complex(w)
    if w == 0:
        raise DomainError("principal_sqrt needs a nonzero argument")
    if w.imag == 0.0:
        # normalise -0.0 so the cut is closed at theta = pi
        w = complex(w.real, 0.0)
    return cmath.sqrt(w)


@dataclass(frozen=True)
class Phase4:
    """Exact fourth root of unity i**e, e mod 4."""

    e: int

    def __post_init__(self):
        object.__setattr__(self, "e", self.e % 4)

    def __mul__(self, other: "Phase4") -> "Phase4":
        return Phase4(self.e + other.e)

    def __pow__(self, n: int) -> "Phase4":
        return Phase4(self.e * n)

    @property
    def value(self) -> complex:
        return (complex(1, 0), complex(0, 1), complex(-1, 0), complex(0, -1))[self.e]

    @classmethod
    def from_sign(cls, s: int) -> "Phase4":
        if s == 1:
            return cls(0)
        if s == -1:
            return cls(2)
        raise DomainError(f"sign must be +1 or -1, got {s!r}")


def _mobius(m: Mat2, z: complex) -> complex:
    return (m.a * z + m.b) / (m.c * z + m.d)


# factor carried by each lifted generator token in the pair realisation
_TOKEN_FACTORS = {
    "S": lambda z: principal_sqrt(z),
    "S^-1": lambda z: 1 / principal_sqrt(-1 / z),
    "T": lambda z: 1 + 0j,
    "T^-1": lambda z: 1 + 0j,
}


def word_factor(word: Word, z: complex) -> complex:
    """Pair-product factor of a determinant-one generator word at ``z``."""
    fac = 1 + 0j
    w = z
    for tok in reversed(word):
        if tok == "R":
            raise DomainError("word_factor is defined for determinant +1 words only")
        fac = _TOKEN_FACTORS[tok](w) * fac
        w = _mobius(TOKEN_MATS[tok], w)
    return fac


@lru_cache(maxsize=None)
def _word_data(gamma: Mat2) -> tuple[Word, int]:
    word = word_decompose(gamma)
    lift = word_lift(word)
    assert lift.gamma == gamma
    return word, lift.eps


def phi_upper(gamma: Mat2, z) -> complex:
    """Automorphy factor of [gamma, +1] on the upper half-plane; squares to c*z + d."""
    if gamma.det() != 1:
        raise DomainError("phi_upper needs a determinant +1 matrix")
    z = require_upper(z)
    word, eps = _word_data(gamma)
    return eps * word_factor(word, z)


def phi_lower(gamma: Mat2, z) -> complex:
    """Automorphy factor of [gamma, +1] on the lower half-plane."""
    if gamma.det() != 1:
        raise DomainError("phi_lower needs a determinant +1 matrix")
    z = require_lower(z)
    return reflection_sign(gamma) * phi_upper(gamma.reflect_conjugate(), -z)


def branch_profile(gamma: Mat2, points, tol: float = 1e-9) -> int:
    """Compare phi_upper against the raw principal branch of sqrt(c*z + d).

    Returns the constant sign phi/sqrt over the sampled points, or raises if
    the ratio is not a constant sign (it must be, by holomorphy).
    """
    sign = 0
    for z in points:
        z = require_upper(z)
        ratio = phi_upper(gamma, z) / principal_sqrt(gamma.c * z + gamma.d)
        snapped = 1 if abs(ratio - 1) < abs(ratio + 1) else -1
        if abs(ratio - snapped) > tol:
            raise DomainError(f"phi/sqrt ratio {ratio} at {z} is not a sign for {gamma}")
        if sign == 0:
            sign = snapped
        elif sign != snapped:
            raise DomainError(f"phi/sqrt sign flips across points for {gamma}")
    return sign
