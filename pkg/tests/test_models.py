import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kinetic1d.errors import DomainError, UnsupportedError
from kinetic1d.models import Advection, Burgers, Diffusion, NavierStokes

G = 1.4
SQ = np.sqrt(G)


def ns_state(rho, vel, P, gamma=G):
    return NavierStokes(gamma).primitive_to_conserved(rho, vel, P)


def random_ns_states(rng, n):
    return ns_state(rng.uniform(0.1, 5, n), rng.uniform(-5, 5, n), rng.uniform(0.1, 5, n))


def fd_jacobian(spec, u, h=1e-6):
    p = len(u)
    J = np.zeros((p, p))
    for k in range(p):
        step = h * max(1.0, abs(u[k]))
        e = np.zeros(p)
        e[k] = step
        J[:, k] = (spec.flux(u + e) - spec.flux(u - e)) / (2 * step)
    return J


def test_scalar_fluxes():
    assert Diffusion(0.1).flux([7.3])[0] == 0.0
    assert Burgers(0.0).flux([2.0])[0] == 2.0
    assert Advection(0.0, 10.0).flux([3.0])[0] == 30.0


def test_ns_flux_mass_component():
    u = ns_state(1.0, 2 * SQ, 1.0)
    assert NavierStokes(G).flux(u)[0] == pytest.approx(2 * SQ)
    assert 2 * SQ == pytest.approx(2.3664, abs=1e-4)


def test_scalar_jacobians():
    assert Advection(0.0, 10.0).jacobian([4.0])[0, 0] == 10.0
    assert Burgers(0.0).jacobian([0.5])[0, 0] == 0.5
    assert Diffusion(1.0).jacobian([3.0])[0, 0] == 0.0


def test_ns_jacobian_at_rest_has_acoustic_spectrum():
    spec = NavierStokes(G)
    u = np.array([1.0, 0.0, 1.0 / (G - 1)])
    ev = np.sort(np.linalg.eigvals(spec.jacobian(u)).real)
    np.testing.assert_allclose(ev, [-SQ, 0.0, SQ], atol=1e-12)
    np.testing.assert_allclose(spec.jacobian(u), fd_jacobian(spec, u), atol=1e-6)


def test_ns_jacobian_matches_finite_differences():
    spec = NavierStokes(G)
    rng = np.random.default_rng(0)
    U = random_ns_states(rng, 50)
    for u in U.T:
        J = spec.jacobian(u)
        Jfd = fd_jacobian(spec, u)
        assert np.max(np.abs(J - Jfd)) <= 1e-6 * max(1.0, np.max(np.abs(J)))


def test_diffusion_matrix_values():
    assert Burgers(0.01).diffusion_matrix([1.0])[0, 0] == 0.01
    D = NavierStokes(G, 0.0).diffusion_matrix(ns_state(1.0, 1.0, 1.0))
    assert np.all(D == 0)


def test_ns_diffusion_eigenvalues():
    rng = np.random.default_rng(1)
    mu, pr = 0.3, 0.71
    spec = NavierStokes(G, mu, pr)
    U = random_ns_states(rng, 40)
    for u in U.T:
        nu = mu / u[0]
        ev = np.sort(np.linalg.eigvals(spec.diffusion_matrix(u)).real)
        np.testing.assert_allclose(ev, np.sort([0.0, 4 * nu / 3, G * nu / pr]), atol=1e-10)


def test_pressure():
    spec = NavierStokes(G)
    assert spec.pressure([1.0, 0.0, 2.5]) == pytest.approx(1.0)
    assert spec.pressure([1.0, 2 * SQ, 2.5 + 1.4 * 2]) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        spec.pressure([1.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        spec.flux([-1.0, 0.0, 1.0])


def test_pressure_unsupported_for_scalars():
    with pytest.raises(UnsupportedError):
        Burgers(0.1).pressure([1.0])
    with pytest.raises(UnsupportedError):
        Diffusion(0.1).entropy([1.0])


def test_entropy():
    spec = NavierStokes(G)
    assert spec.entropy(ns_state(1.0, 0.0, 1.0)) == pytest.approx(0.0, abs=1e-14)
    assert spec.entropy(ns_state(1.0, 0.3, np.exp(0.4))) == pytest.approx(1.0)
    assert spec.entropy(ns_state(8 / 3, 0.0, 4.5)) > 0


def test_spectral_bounds():
    assert Advection(0.0, 10.0).spectral_bound([1.0]) == 10.0
    assert Burgers(0.0).spectral_bound([-1.5]) == 1.5
    assert NavierStokes(G).spectral_bound([1.0, 2 * SQ, 2.5 + 2.8]) == pytest.approx(3 * SQ)


def test_spectral_bound_dominates_jacobian_spectrum():
    spec = NavierStokes(G, 0.1)
    rng = np.random.default_rng(2)
    U = random_ns_states(rng, 1000)
    radius = np.max(np.abs(np.linalg.eigvals(spec.jacobian(U))), axis=-1)
    assert np.all(spec.spectral_bound(U) >= radius * (1 - 1e-12))


def test_parameter_validation():
    with pytest.raises(DomainError):
        Diffusion(-1.0)
    with pytest.raises(DomainError):
        NavierStokes(1.0)
    with pytest.raises(DomainError):
        NavierStokes(1.4, -0.1)
    with pytest.raises(DomainError):
        NavierStokes(1.4, 0.1, 0.0)


def test_vectorised_shapes():
    spec = NavierStokes(G, 0.01)
    U = random_ns_states(np.random.default_rng(3), 7)
    assert spec.flux(U).shape == (3, 7)
    assert spec.jacobian(U).shape == (7, 3, 3)
    assert spec.diffusion_matrix(U).shape == (7, 3, 3)
    assert Burgers(0.1).jacobian(np.ones((1, 5))).shape == (5, 1, 1)


@settings(max_examples=60, deadline=None)
@given(
    rho=st.floats(0.05, 10), vel=st.floats(-10, 10), P=st.floats(0.05, 10), gamma=st.floats(1.05, 1.7)
)
def test_flux_is_jacobian_times_state(rho, vel, P, gamma):
    # The Euler flux is homogeneous of degree one.
    spec = NavierStokes(gamma)
    u = ns_state(rho, vel, P, gamma)
    np.testing.assert_allclose(spec.jacobian(u) @ u, spec.flux(u), rtol=1e-10, atol=1e-10)
