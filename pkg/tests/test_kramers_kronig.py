"""Transform of tabulated absorption data to the imaginary axis.

Oracles: the Lorentz oscillator has the analytic pair
eps''(w) = f wp^2 g w / ((w0^2-w^2)^2 + g^2 w^2)  <->
eps(i xi) = 1 + f wp^2 / (w0^2 + xi^2 + g xi), and the Drude metal its
closed imaginary-axis form.  scipy integrates the same piecewise-linear
absorption model independently to check the closed-form interval sums.
"""

import numpy as np
import pytest
from scipy.integrate import quad as scipy_quad

from casimir import (DIVERGENT, DomainError, HighTail, IngestionError,
                     LowTail, Tabulated, TabulatedAbsorption, kramers_kronig)
from casimir.materials import _kk_value


def lorentz_eps_imag(w, f, wp, w0, g):
    return f * wp ** 2 * g * w / ((w0 ** 2 - w ** 2) ** 2 + (g * w) ** 2)


def lorentz_eps_imaginary_axis(xi, f, wp, w0, g):
    return 1.0 + f * wp ** 2 / (w0 ** 2 + xi ** 2 + g * xi)


F, WP, W0, G = 0.8, 6e15, 4e15, 2e14


def lorentz_table(n=3000):
    w = np.geomspace(W0 * 1e-3, W0 * 1e3, n)
    return TabulatedAbsorption(w, lorentz_eps_imag(w, F, WP, W0, G),
                               LowTail("linear"), HighTail("power", 3.0))


def test_lorentzian_pair_over_four_decades():
    table = lorentz_table()
    xi = np.geomspace(W0 * 1e-2, W0 * 1e2, 41)
    est = kramers_kronig(table, xi, tol=1e-4)
    expected = lorentz_eps_imaginary_axis(xi, F, WP, W0, G)
    assert np.max(np.abs(est.value - expected) / expected) < 1e-4
    assert est.warning is None


def test_drude_sampled_table_at_plasma_frequency():
    wp, g = 1e16, 1e14
    w = np.geomspace(g * 1e-3, wp * 1e3, 2800)
    table = TabulatedAbsorption(w, wp ** 2 * g / (w * (w ** 2 + g ** 2)))
    est = kramers_kronig(table, wp, tol=1e-3)
    expected = 1.0 + wp ** 2 / (wp * (wp + g))
    assert est.value == pytest.approx(expected, rel=1e-3)


def test_vacuum_table_is_exactly_one():
    table = TabulatedAbsorption([1e14, 5e14, 1e15], [0.0, 0.0, 0.0])
    est = kramers_kronig(table, 3e14)
    assert est.value == 1.0
    assert est.error_estimate == 0.0


def test_closed_forms_match_scipy_on_piecewise_linear_model():
    table = lorentz_table(60)
    w = table.omega
    s = table.eps_imag

    def eps2_interp(x):
        return np.interp(x, w, s)

    for xi in (W0 * 0.03, W0, W0 * 40.0):
        pieces = [scipy_quad(lambda x: x * eps2_interp(x) / (x * x + xi * xi),
                             w[i], w[i + 1], epsabs=1e-300, epsrel=1e-12)[0]
                  for i in range(len(w) - 1)]
        ref = sum(pieces)
        # strip the analytic tails from the full transform to isolate the core
        from casimir.materials import _kk_sampled
        mine = _kk_sampled(table, np.array([xi]))[0]
        assert mine == pytest.approx(ref, rel=1e-9)


def test_error_estimate_flags_coarse_tables():
    coarse = TabulatedAbsorption(np.geomspace(W0 * 1e-2, W0 * 1e2, 15),
                                 lorentz_eps_imag(
                                     np.geomspace(W0 * 1e-2, W0 * 1e2, 15),
                                     F, WP, W0, G))
    est = kramers_kronig(coarse, W0, tol=1e-8)
    assert est.warning is not None
    assert "tolerance" in est.warning


def test_transform_requires_positive_xi():
    table = lorentz_table(100)
    with pytest.raises(DomainError):
        kramers_kronig(table, 0.0)
    with pytest.raises(DomainError):
        kramers_kronig(table, -1e15)


def test_table_validation():
    with pytest.raises(IngestionError):
        TabulatedAbsorption([1e15], [0.1])                      # too few
    with pytest.raises(IngestionError):
        TabulatedAbsorption([1e15, 1e15], [0.1, 0.1])           # not increasing
    with pytest.raises(IngestionError):
        TabulatedAbsorption([1e14, 1e15], [0.1, -0.1])          # negative
    with pytest.raises(IngestionError):
        TabulatedAbsorption([0.0, 1e15], [0.1, 0.1])            # omega <= 0
    with pytest.raises(IngestionError):
        TabulatedAbsorption([1e14, 1e15], [0.1, np.inf])        # non-finite


def test_divergent_tail_rejected():
    with pytest.raises(IngestionError):
        HighTail("power", 0.5)
    with pytest.raises(IngestionError):
        HighTail("exponential")
    with pytest.raises(IngestionError):
        LowTail("quadratic")


def test_generic_power_tail_agrees_with_closed_form_at_p3():
    w = np.geomspace(1e14, 1e16, 500)
    s = (1e15 / w) ** 2
    xi = np.geomspace(3e13, 3e17, 17)
    t3 = TabulatedAbsorption(w, s, high_tail=HighTail("power", 3.0))
    # p passing through the generic quadrature path, arbitrarily close to 3
    tg = TabulatedAbsorption(w, s, high_tail=HighTail("power", 3.0000001))
    v3 = _kk_value(t3, xi)
    vg = _kk_value(tg, xi)
    assert np.max(np.abs(v3 - vg) / (v3 - 1.0)) < 1e-5


def test_tabulated_model_zero_frequency():
    table_const = TabulatedAbsorption([1e14, 1e15], [0.5, 0.1])  # default constant tail
    assert Tabulated(table_const).eps(0.0) is DIVERGENT
    table_lin = TabulatedAbsorption([1e14, 1e15], [0.5, 0.1], LowTail("linear"))
    eps0 = Tabulated(table_lin).eps(0.0)
    assert np.isfinite(eps0) and eps0 > 1.0
    # static limit bounds every positive frequency value
    assert eps0 > Tabulated(table_lin).eps(1e13)


def test_tabulated_model_matches_transform():
    table = lorentz_table(800)
    model = Tabulated(table)
    xi = np.geomspace(W0 * 1e-2, W0 * 1e2, 7)
    est = kramers_kronig(table, xi)
    assert np.allclose(model.eps(xi), est.value, rtol=1e-14)
    assert model.mu(1e15) == 1.0
    with pytest.raises(DomainError):
        model.eps(np.array([0.0, 1e15]))
