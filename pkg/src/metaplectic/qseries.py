"""Concrete evaluators: Eisenstein series, the eta product, truncated
triangular products, and the two-component eta extension.

Series and products are truncated so the dropped tail is below a configured
tolerance; evaluators refuse points too close to the real axis rather than
degrade silently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .automorphy import phi_upper, require_off_axis, require_upper
from .cover import IDENT, Mat2, MetaElt, S_MAT
from .errors import DomainError, ResourceLimitError
from .reps import Rep, VVForm, character_of, extend_form, induce_form
from .slash import HoloFn, Weight, cpow_int, mobius

ZETA_4 = math.pi ** 4 / 90
ZETA_6 = math.pi ** 6 / 945

# 2 / zeta(1-k) for k = 4, 6
_EIS_COEFF = {4: 240, 6: -504}
_EIS_ZETA = {4: ZETA_4, 6: ZETA_6}


@dataclass(frozen=True)
class QSeriesConfig:
    """Truncation control for the q-products and q-sums."""

    tail_tolerance: float = 1e-17
    max_terms: int = 10 ** 6
    min_im: float = 0.05
    reduce: bool = True

    def __post_init__(self):
        if self.tail_tolerance <= 0 or self.max_terms <= 0:
            raise DomainError("tail_tolerance and max_terms must be positive")


DEFAULT_CONFIG = QSeriesConfig()


def _require_workable(z, cfg: QSeriesConfig) -> complex:
    z = require_upper(z)
    if z.imag < cfg.min_im:
        raise DomainError(
            f"point {z} is closer than {cfg.min_im} to the real axis; "
            "pass a config with a smaller min_im to evaluate here")
    return z


def _truncation_index(im: float, cfg: QSeriesConfig, extra_log: float = 0.0) -> int:
    n = math.ceil((math.log(1 / cfg.tail_tolerance) + extra_log) / (2 * math.pi * im))
    n = max(n, 1)
    if n > cfg.max_terms:
        raise ResourceLimitError(
            f"truncation needs {n} terms at Im z = {im:.3e}, above the cap {cfg.max_terms}")
    return n


def reduce_to_fundamental(z, max_steps: int = 500) -> tuple[Mat2, complex]:
    """Exact determinant-one matrix g with g.z in the standard fundamental domain.

    The matrix is tracked in integers and the moving point is recomputed from
    the original z at every step, so the pair (g, g.z) is reproducible.
    """
    z = require_upper(z)
    g = IDENT
    for _ in range(max_steps):
        w = mobius(g, z)
        shift = -round(w.real)
        if shift:
            g = Mat2(1, shift, 0, 1) * g
            w = w + shift
        if abs(w) < 0.999999:
            g = S_MAT * g
        else:
            return g, w
    raise ResourceLimitError(f"fundamental-domain reduction did not terminate at {z}")


def eta(z, cfg: QSeriesConfig = DEFAULT_CONFIG) -> complex:
    """Weight-1/2 eta product on the upper half-plane.

    With ``cfg.reduce``, arguments below the fundamental domain are moved up
    by an exact integer matrix and the value is carried back through the
    multiplier (a snapped 24th root of unity) and the square-root automorphy
    factor; the raw product is only ever summed at well-separated points.
    """
    z = _require_workable(z, cfg)
    if cfg.reduce and z.imag < 0.25:
        g, w0 = reduce_to_fundamental(z)
        mult = _eta_raw_character(cfg).evaluate(MetaElt(g, 1))[0, 0]
        return _eta_series(w0, cfg) / (mult * phi_upper(g, z))
    return _eta_series(z, cfg)


def _eta_series(z: complex, cfg: QSeriesConfig) -> complex:
    n = _truncation_index(z.imag, cfg)
    ns = np.arange(1, n + 1)
    factors = 1.0 - np.exp((2j * np.pi * z) * ns)
    return cmath.exp(1j * cmath.pi * z / 12) * complex(np.prod(factors))


def eisenstein(k: int, z, cfg: QSeriesConfig = DEFAULT_CONFIG) -> complex:
    """Weight-k Eisenstein series in full lattice-sum normalisation, k in {4, 6}.

    Evaluated as 2 zeta(k) (1 + (2/zeta(1-k)) sum_n sigma_{k-1}(n) q^n), with
    the divisor sum folded into the equivalent Lambert form
    sum_d d^{k-1} q^d / (1 - q^d).  With ``cfg.reduce`` the argument is first
    moved to the fundamental domain by an exact integer matrix and the series
    value is carried back through the weight-k cocycle, which keeps the
    evaluation well-conditioned near the real axis.
    """
    if k not in _EIS_COEFF:
        raise DomainError(f"supported Eisenstein weights are {sorted(_EIS_COEFF)}, got {k}")
    z = _require_workable(z, cfg)
    if cfg.reduce:
        g, w0 = reduce_to_fundamental(z)
        return _eisenstein_series(k, w0, cfg) * cpow_int(g.c * z + g.d, -k)
    return _eisenstein_series(k, z, cfg)


def _eisenstein_series(k: int, z: complex, cfg: QSeriesConfig) -> complex:
    base = _truncation_index(z.imag, cfg)
    n = _truncation_index(z.imag, cfg, extra_log=(k - 1) * max(math.log(base), 1.0))
    ds = np.arange(1, n + 1)
    qd = np.exp((2j * np.pi * z) * ds)
    lam = (ds.astype(float) ** (k - 1)) * qd / (1.0 - qd)
    return 2 * _EIS_ZETA[k] * (1 + _EIS_COEFF[k] * complex(lam.sum()))


def lattice_sum(k: int, z, m_cutoff: int) -> complex:
    """Doubly-truncated lattice sum over |m|,|n| <= cutoff, (0,0) excluded.

    Cross-check oracle only; needs even k >= 4 for absolute convergence.
    Rows are combined symmetrically in m so the sum is exactly invariant
    under z -> -z (the terms pair off bitwise).
    """
    if k % 2 != 0 or k < 4:
        raise DomainError(f"lattice sum needs even k >= 4, got {k}")
    if m_cutoff < 1:
        raise DomainError("cutoff must be at least 1")
    z = require_off_axis(z)
    ms = np.arange(-m_cutoff, m_cutoff + 1)
    ns = np.arange(-m_cutoff, m_cutoff + 1)
    w = ms[:, None] * z + ns[None, :]
    w[m_cutoff, m_cutoff] = 1.0  # placeholder at (0, 0); zeroed below
    power = w * w
    for _ in range(k // 2 - 1):
        power = power * (w * w)
    terms = 1.0 / power
    terms[m_cutoff, m_cutoff] = 0.0  # (m, n) = (0, 0)
    rows = terms.sum(axis=1)
    total = complex(rows[m_cutoff])
    for j in range(1, m_cutoff + 1):
        total += complex(rows[m_cutoff + j] + rows[m_cutoff - j])
    return total


def even_extension(f_upper) -> HoloFn:
    """Extend a scalar upper-half-plane evaluator by f(z) = f(-z)."""
    up = lambda z: np.array([f_upper(z)], dtype=complex)
    lo = lambda z: np.array([f_upper(-z)], dtype=complex)
    return HoloFn(1, up, lo)


def triangular_product(n_factors: int, z) -> complex:
    """The finite product prod_{n<=N} (e^{-pi i n z} - e^{pi i n z}); entire in z."""
    if n_factors < 0:
        raise DomainError("the number of factors must be nonnegative")
    z = complex(z)
    out = 1 + 0j
    for n in range(1, n_factors + 1):
        arg = 1j * cmath.pi * n * z
        out *= cmath.exp(-arg) - cmath.exp(arg)
    return out


def triangular_product_factored(n_factors: int, z) -> complex:
    """Same product in the pulled-out form e^{-pi i z N(N+1)/2} prod (1 - e^{2 pi i n z})."""
    if n_factors < 0:
        raise DomainError("the number of factors must be nonnegative")
    z = complex(z)
    out = cmath.exp(-1j * cmath.pi * z * n_factors * (n_factors + 1) / 2)
    for n in range(1, n_factors + 1):
        out *= 1 - cmath.exp(2j * cmath.pi * n * z)
    return out


# ---------------------------------------------------------------------------
# form objects

def eta_fn(cfg: QSeriesConfig = DEFAULT_CONFIG) -> HoloFn:
    """Eta as an upper-half-plane-only function object."""
    return HoloFn(1, lambda z: np.array([eta(z, cfg)], dtype=complex), None)


@lru_cache(maxsize=None)
def _eta_raw_character(cfg: QSeriesConfig) -> Rep:
    # character used inside the reduction path; extracted from the raw
    # product at a well-separated point, so there is no self-reference
    raw = QSeriesConfig(cfg.tail_tolerance, cfg.max_terms, cfg.min_im, reduce=False)
    return character_of(eta_fn(raw), Weight(1), z0=0.1 + 1.3j, order=24)


@lru_cache(maxsize=None)
def eta_character(cfg: QSeriesConfig = DEFAULT_CONFIG, z0: complex = 0.1 + 1.3j) -> Rep:
    """The 24th-root-of-unity character of eta, extracted numerically at z0."""
    return character_of(eta_fn(cfg), Weight(1), z0=z0, order=24)


def eta_form(cfg: QSeriesConfig = DEFAULT_CONFIG) -> VVForm:
    return VVForm(eta_fn(cfg), Weight(1), eta_character(cfg))


def eta_hat_form(cfg: QSeriesConfig = DEFAULT_CONFIG) -> VVForm:
    """The two-component extension of eta to the double half-plane: Ind(eta, 0)."""
    f = eta_form(cfg)
    g = VVForm.zero(Weight(1), f.rep.r_twist())
    return induce_form(f, g)


def eta_hat(z, cfg: QSeriesConfig = DEFAULT_CONFIG) -> np.ndarray:
    """(eta(z), 0) above the axis and (0, i eta(-z)) below it."""
    z = require_off_axis(z)
    if z.imag > 0:
        return np.array([eta(z, cfg), 0.0], dtype=complex)
    return np.array([0.0, 1j * eta(-z, cfg)], dtype=complex)


def eisenstein_form(k: int, cfg: QSeriesConfig = DEFAULT_CONFIG) -> VVForm:
    """Even extension of E_k as a GL-cover form with trivial representation."""
    upper = HoloFn(1, lambda z: np.array([eisenstein(k, z, cfg)], dtype=complex), None)
    return extend_form(upper, Weight(2 * k), Rep.trivial("GL"))
