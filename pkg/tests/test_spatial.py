import numpy as np
import pytest

from kinetic1d.errors import DomainError
from kinetic1d.models import Burgers, NavierStokes
from kinetic1d.spatial import (
    DirichletMaxwellian,
    Grid1D,
    Periodic,
    WaveField,
    dx1,
    dx2,
    dx4,
    fill_ghosts,
)
from kinetic1d.stability import fourier_symbol

OPS = {1: dx1, 2: dx2, 4: dx4}


def dirichlet_grid(n=21, length=2.0, x0=-1.0):
    return Grid1D(n, length, DirichletMaxwellian([0.0], [0.0]), x0)


def field_with_exact_ghosts(f, grid, sign):
    x = grid.x
    dx = grid.dx
    return WaveField(
        f(x), sign, ghost_left=f(x[0] - dx * np.array([2, 1])), ghost_right=f(x[-1] + dx * np.array([1, 2]))
    )


def test_grid_conventions():
    g = Grid1D(5, 1.0)
    np.testing.assert_allclose(g.x, [0.1, 0.3, 0.5, 0.7, 0.9])
    d = Grid1D(5, 1.0, DirichletMaxwellian([1.0], [1.0]))
    np.testing.assert_allclose(d.x, [0, 0.25, 0.5, 0.75, 1.0])
    with pytest.raises(DomainError):
        Grid1D(4, 1.0, DirichletMaxwellian([1.0], [1.0]))
    with pytest.raises(DomainError):
        Grid1D(10, 0.0)


@pytest.mark.parametrize("order", [1, 2, 4])
@pytest.mark.parametrize("sign", [1, -1])
def test_constants_are_annihilated(order, sign):
    g = Grid1D(16, 1.0, Periodic())
    out = OPS[order](WaveField(np.full(16, 3.7), sign), g).values
    assert np.max(np.abs(out)) <= 1e-14


@pytest.mark.parametrize("sign", [1, -1])
def test_dx1_exact_on_linears(sign):
    g = dirichlet_grid()
    out = dx1(field_with_exact_ghosts(lambda x: x, g, sign), g).values
    np.testing.assert_allclose(out, 1.0, atol=1e-12)


@pytest.mark.parametrize("sign", [1, -1])
def test_dx2_exact_on_quadratics(sign):
    g = dirichlet_grid()
    out = dx2(field_with_exact_ghosts(lambda x: x * x, g, sign), g).values
    np.testing.assert_allclose(out, 2 * g.x, atol=1e-12)


def test_dx4_exact_on_cubics():
    g = dirichlet_grid()
    out = dx4(field_with_exact_ghosts(lambda x: x**3, g, 1), g).values
    np.testing.assert_allclose(out, 3 * g.x**2, atol=1e-11)


def _error(op, n, sign):
    g = Grid1D(n, 1.0)
    x = g.x
    out = op(WaveField(np.sin(2 * np.pi * x), sign), g).values
    return np.max(np.abs(out - 2 * np.pi * np.cos(2 * np.pi * x)))


@pytest.mark.parametrize("order,minimum", [(1, 0.95), (2, 1.95), (4, 3.9)])
@pytest.mark.parametrize("sign", [1, -1])
def test_observed_orders(order, minimum, sign):
    ns = [32, 64, 128, 256]
    errs = [_error(OPS[order], n, sign) for n in ns]
    slopes = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(slopes >= minimum)


def test_dx1_richardson_slope():
    e1, e2 = _error(dx1, 64, 1), _error(dx1, 128, 1)
    assert np.log2(e1 / e2) == pytest.approx(1.0, abs=0.1)


def test_dx4_richardson_slope():
    e1, e2 = _error(dx4, 64, 1), _error(dx4, 128, 1)
    assert np.log2(e1 / e2) == pytest.approx(4.0, abs=0.2)


@pytest.mark.parametrize("order", [1, 2, 4])
def test_fourier_symbol_matches_stencil(order):
    n = 64
    g = Grid1D(n, 1.0)
    j = np.arange(n)
    for k in range(1, n // 2):
        theta = 2 * np.pi * k / n
        mode = np.exp(1j * theta * j)
        re = OPS[order](WaveField(mode.real, 1), g).values
        im = OPS[order](WaveField(mode.imag, 1), g).values
        measured = (re + 1j * im) * g.dx / mode
        np.testing.assert_allclose(measured, fourier_symbol(order, theta), atol=1e-13)


def test_dx2_symbol_closed_form():
    theta = np.linspace(0, 2 * np.pi, 50, endpoint=False)
    expected = np.exp(1j * theta) / 3 + 0.5 - np.exp(-1j * theta) + np.exp(-2j * theta) / 6
    np.testing.assert_allclose(fourier_symbol(2, theta), expected, atol=1e-15)


@pytest.mark.parametrize("order", [1, 2, 4])
@pytest.mark.parametrize("sign", [1, -1])
def test_periodic_telescoping(order, sign):
    g = Grid1D(50, 1.0)
    vals = np.random.default_rng(8).normal(size=50)
    out = OPS[order](WaveField(vals, sign), g).values
    assert abs(np.sum(out) * g.dx) <= 1e-12


def test_dx4_antisymmetry():
    g = Grid1D(40, 1.0)
    vals = np.random.default_rng(9).normal(size=40)
    fwd = dx4(WaveField(vals, 1), g).values
    rev = dx4(WaveField(vals[::-1], 1), g).values
    # Reversing a periodic cell-centred grid maps point i to n-1-i.
    np.testing.assert_allclose(rev, -fwd[::-1], atol=1e-12)


def test_periodic_ghosts_wrap():
    g = Grid1D(8, 1.0)
    F = np.arange(2 * 8, dtype=float).reshape(2, 1, 8)
    ext = fill_ghosts(F, g, Burgers(0.0), 1.0)
    assert ext.shape == (2, 1, 12)
    assert ext[0, 0, 1] == F[0, 0, 7]
    assert ext[0, 0, 10] == F[0, 0, 0]


def test_dirichlet_ghosts_hold_maxwellian():
    g = Grid1D(10, 1.0, DirichletMaxwellian([0.2], [-0.2]))
    ext = fill_ghosts(np.zeros((2, 1, 10)), g, Burgers(0.0), 2.0)
    np.testing.assert_allclose(ext[:, 0, 0], [0.095, 0.105])
    np.testing.assert_allclose(ext[:, 0, 1], [0.095, 0.105])
    np.testing.assert_allclose(ext[:, 0, -1], [-0.105, -0.095])


def test_dirichlet_inadmissible_boundary():
    g = Grid1D(10, 1.0, DirichletMaxwellian([-1.0, 0.0, 1.0], [1.0, 0.0, 2.5]))
    with pytest.raises(DomainError):
        fill_ghosts(np.zeros((2, 3, 10)), g, NavierStokes(1.4), 5.0)
