import cmath

import numpy as np
import pytest

from metaplectic.automorphy import principal_sqrt
from metaplectic.cover import IDENT, LIFT_R, LIFT_S, LIFT_T
from metaplectic.errors import DomainError, ResourceLimitError
from metaplectic.qseries import (
    QSeriesConfig,
    eisenstein,
    eisenstein_form,
    eta,
    eta_hat,
    eta_hat_form,
    even_extension,
    lattice_sum,
    reduce_to_fundamental,
    triangular_product,
    triangular_product_factored,
)
from metaplectic.sampling import full_grid, lower_grid, upper_grid
from metaplectic.slash import holomorphy_residual, mobius

# frozen from 60-digit evaluations of the same q-product with tail < 1e-30
ETA_AT_I = 0.7682254223260566590025941795761806445179
ETA_AT_2I = 0.5923827813324158852903633744919953727615


def test_config_validation():
    with pytest.raises(DomainError):
        QSeriesConfig(tail_tolerance=0.0)
    with pytest.raises(DomainError):
        QSeriesConfig(max_terms=0)


def test_near_axis_refusal():
    with pytest.raises(DomainError):
        eta(0.5 + 0.01j)  # default min_im = 0.05
    loose = QSeriesConfig(min_im=1e-3)
    assert eta(0.5 + 0.01j, loose) != 0


def test_max_terms_cap():
    tight = QSeriesConfig(max_terms=10, min_im=1e-6, reduce=False)
    with pytest.raises(ResourceLimitError):
        eta(0.3 + 0.001j, tight)


def test_eta_frozen_values(raw_cfg):
    assert abs(eta(1j, raw_cfg) - ETA_AT_I) < 1e-12
    assert abs(eta(2j, raw_cfg) - ETA_AT_2I) < 1e-12
    # determinism: same value bit for bit
    assert eta(0.3 + 0.7j, raw_cfg) == eta(0.3 + 0.7j, raw_cfg)


def test_eta_shift_law(raw_cfg):
    phase = cmath.exp(1j * cmath.pi / 12)
    for z in upper_grid():
        assert abs(eta(z + 1, raw_cfg) - phase * eta(z, raw_cfg)) < 1e-12


def test_eta_inversion_law(raw_cfg):
    for z in upper_grid():
        assert abs(eta(-1 / z, raw_cfg) - principal_sqrt(-1j * z) * eta(z, raw_cfg)) < 1e-10


def test_eta_reduction_matches_raw(qcfg, raw_cfg):
    for z in (0.04 + 0.012j, -0.7 + 0.06j, 1.3 + 0.2j, 0.4 + 0.09j):
        a, b = eta(z, qcfg), eta(z, raw_cfg)
        assert abs(a - b) / abs(b) < 1e-10


def test_reduce_to_fundamental():
    g, w = reduce_to_fundamental(0.4 + 0.012j)
    assert g.det() == 1
    assert abs(mobius(g, 0.4 + 0.012j) - w) < 1e-14
    assert w.imag > 0.5 and abs(w.real) <= 0.5 + 1e-9
    g0, w0 = reduce_to_fundamental(0.1 + 2j)
    assert g0 == IDENT and w0 == 0.1 + 2j


def test_eisenstein_validation():
    with pytest.raises(DomainError):
        eisenstein(5, 1j)
    with pytest.raises(DomainError):
        eisenstein(8, 1j)


def test_eisenstein_periodicity(qcfg):
    for k in (4, 6):
        for z in upper_grid()[:6]:
            a, b = eisenstein(k, z + 1, qcfg), eisenstein(k, z, qcfg)
            assert abs(a - b) / abs(b) < 1e-12


def test_eisenstein_inversion_law(raw_cfg):
    for k in (4, 6):
        for z in upper_grid():
            lhs = eisenstein(k, -1 / z, raw_cfg)
            rhs = z ** k * eisenstein(k, z, raw_cfg)
            assert abs(lhs - rhs) / abs(rhs) < 1e-12


def test_lattice_hand_sum():
    assert lattice_sum(4, 1j, 1) == 3.0


def test_lattice_symmetry_exact():
    for z in (2j, 0.4 + 0.8j, -0.7 + 0.3j):
        assert lattice_sum(4, z, 50) == lattice_sum(4, -z, 50)


def test_lattice_cutoff_drift():
    assert abs(lattice_sum(4, 2j, 200) - lattice_sum(4, 2j, 400)) < 1e-6


def test_lattice_matches_series(qcfg):
    for z in (2j, 1 + 2j):
        series = eisenstein(4, z, qcfg)
        trunc = lattice_sum(4, z, 200)
        assert abs(series - trunc) / abs(series) < 1e-6


def test_lattice_validation():
    with pytest.raises(DomainError):
        lattice_sum(3, 1j, 10)
    with pytest.raises(DomainError):
        lattice_sum(2, 1j, 10)
    with pytest.raises(DomainError):
        lattice_sum(4, 1j, 0)


def test_even_extension():
    const = even_extension(lambda z: 1.0)
    for z in full_grid()[:6]:
        assert const.at(z)[0] == 1.0
    square = even_extension(lambda z: z * z)
    for z in upper_grid()[:4]:
        assert square.at(-z)[0] == square.at(z)[0]  # exact by construction


def test_triangular_product_basics():
    assert triangular_product(0, 0.3 + 0.8j) == 1
    assert triangular_product(0, 1.7) == 1  # entire: real axis allowed
    z = 0.4 + 0.8j
    one = triangular_product(1, z)
    assert abs(one - (cmath.exp(-1j * cmath.pi * z) - cmath.exp(1j * cmath.pi * z))) == 0
    with pytest.raises(DomainError):
        triangular_product(-1, z)


def test_triangular_parity_exact():
    points = upper_grid()[:3] + lower_grid()[:3]
    for n in range(13):
        sign = (-1) ** n
        for z in points:
            direct = triangular_product(n, z)
            assert triangular_product(n, -z) == sign * direct  # bitwise mirror


def test_triangular_factored_form_agrees():
    for n in range(13):
        for z in upper_grid()[:4]:
            a = triangular_product(n, z)
            b = triangular_product_factored(n, z)
            assert abs(a - b) / max(1.0, abs(a)) < 1e-12


def test_eta_hat_values(qcfg):
    for z in upper_grid()[:5]:
        up = eta_hat(z, qcfg)
        assert up[1] == 0
        assert up[0] == pytest.approx(eta(z, qcfg))
        low = eta_hat(-z, qcfg)
        assert low[0] == 0
        assert low[1] == pytest.approx(1j * eta(z, qcfg))


def test_eta_hat_reflection_identity(qcfg):
    flip = np.array([[0, -1j], [1j, 0]])
    for z in full_grid():
        assert eta_hat(-z, qcfg) == pytest.approx(flip @ eta_hat(z, qcfg), abs=1e-10)


def test_eta_hat_matches_induced_form(qcfg):
    hat = eta_hat_form(qcfg)
    for z in full_grid()[::3]:
        assert eta_hat(z, qcfg) == pytest.approx(hat.at(z), abs=1e-12)


def test_eisenstein_forms_are_gl_modular(qcfg):
    for k, tol in ((4, 1e-9), (6, 1e-9)):
        form = eisenstein_form(k, qcfg)
        assert form.residual((LIFT_S, LIFT_T, LIFT_R), full_grid()[::2]) < tol


def test_holomorphy_probes(qcfg):
    probes = [z for z in upper_grid() if z.imag >= 0.8][:4]
    for z in probes:
        assert holomorphy_residual(lambda w: np.array([eta(w, qcfg)]), z) < 1e-6
        assert holomorphy_residual(lambda w: np.array([eisenstein(4, w, qcfg)]), z) < 1e-6
        assert holomorphy_residual(lambda w: eta_hat(w, qcfg), z.conjugate()) < 1e-6
