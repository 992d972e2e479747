"""Target convection-diffusion models.

Every model describes a system ``u_t + f(u)_x = (D(u) u_x)_x`` for a state of
``p`` conserved components. States are numpy arrays whose *leading* axis holds
the components, so a single state has shape ``(p,)`` and a grid of states has
shape ``(p, n)`` (any trailing batch shape is accepted). Matrix-valued
quantities are returned with the ``(p, p)`` block on the trailing axes, i.e.
with shape ``batch + (p, p)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedError

# Floor below which density / internal energy are treated as vacuum.
ADMISSIBILITY_FLOOR = 1e-12


def _as_state(u, p):
    u = np.asarray(u, dtype=float)
    if u.ndim == 0 or u.shape[0] != p:
        raise DomainError(f"expected a state with {p} leading components, got shape {u.shape}")
    return u


def _first_bad_index(mask):
    idx = np.argwhere(mask)
    return tuple(int(i) for i in idx[0]) if len(idx) else ()


class ProblemSpec:
    """Common interface of the target PDEs."""

    p: int = 1
    name: str = "problem"

    def check_admissible(self, u):
        u = _as_state(u, self.p)
        if not np.all(np.isfinite(u)):
            raise DomainError(f"non-finite state at index {_first_bad_index(~np.isfinite(u))}")
        return u

    def flux(self, u):
        raise NotImplementedError

    def jacobian(self, u):
        raise NotImplementedError

    def diffusion_matrix(self, u):
        raise NotImplementedError

    def spectral_bound(self, u):
        raise NotImplementedError

    def pressure(self, u):
        raise UnsupportedError(f"{self.name} has no equation of state")

    def entropy(self, u):
        raise UnsupportedError(f"{self.name} has no thermodynamic entropy")

    @property
    def inviscid(self) -> bool:
        """True when the diffusion matrix vanishes identically."""
        raise NotImplementedError


@dataclass(frozen=True)
class _ScalarModel(ProblemSpec):
    alpha: float = 0.0

    p = 1

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError(f"diffusion coefficient must be non-negative, got {self.alpha}")

    def _flux_derivative(self, u):
        raise NotImplementedError

    def jacobian(self, u):
        u = self.check_admissible(u)
        return self._flux_derivative(u[0])[..., None, None]

    def diffusion_matrix(self, u):
        u = self.check_admissible(u)
        return np.full(u.shape[1:] + (1, 1), float(self.alpha))

    def spectral_bound(self, u):
        u = self.check_admissible(u)
        return np.abs(self._flux_derivative(u[0]))

    @property
    def inviscid(self):
        return self.alpha == 0.0


@dataclass(frozen=True)
class Diffusion(_ScalarModel):
    """Pure diffusion, ``f(u) = 0``."""

    name = "diffusion"

    def flux(self, u):
        u = self.check_admissible(u)
        return np.zeros_like(u)

    def _flux_derivative(self, u0):
        return np.zeros_like(u0)


@dataclass(frozen=True)
class Advection(_ScalarModel):
    """Linear advection-diffusion, ``f(u) = c u``."""

    c: float = 1.0
    name = "advection"

    def flux(self, u):
        u = self.check_admissible(u)
        return self.c * u

    def _flux_derivative(self, u0):
        return np.full_like(u0, float(self.c))


@dataclass(frozen=True)
class Burgers(_ScalarModel):
    """Viscous Burgers, ``f(u) = u^2 / 2``."""

    name = "burgers"

    def flux(self, u):
        u = self.check_admissible(u)
        return 0.5 * u * u

    def _flux_derivative(self, u0):
        return np.array(u0, dtype=float, copy=True)


@dataclass(frozen=True)
class NavierStokes(ProblemSpec):
    """1D compressible Navier-Stokes for an ideal gas.

    The state is ``(rho, j, E)``: density, momentum and total energy.
    ``mu`` is the constant dynamic viscosity and ``pr`` the Prandtl number.
    """

    gamma: float = 1.4
    mu: float = 0.0
    pr: float = 0.71

    p = 3
    name = "navier-stokes"

    def __post_init__(self):
        if not self.gamma > 1:
            raise DomainError(f"gamma must exceed 1, got {self.gamma}")
        if self.mu < 0:
            raise DomainError(f"viscosity must be non-negative, got {self.mu}")
        if not self.pr > 0:
            raise DomainError(f"Prandtl number must be positive, got {self.pr}")

    @property
    def inviscid(self):
        return self.mu == 0.0

    def check_admissible(self, u):
        u = super().check_admissible(u)
        rho, j, E = u
        bad = ~(rho > ADMISSIBILITY_FLOOR)
        if np.any(bad):
            raise DomainError(f"non-positive density at index {_first_bad_index(bad)}")
        eint = E - 0.5 * j * j / rho
        bad = ~(eint > ADMISSIBILITY_FLOOR)
        if np.any(bad):
            raise DomainError(f"non-positive internal energy at index {_first_bad_index(bad)}")
        return u

    def pressure(self, u):
        rho, j, E = self.check_admissible(u)
        return (self.gamma - 1.0) * (E - 0.5 * j * j / rho)

    def sound_speed(self, u):
        u = self.check_admissible(u)
        return np.sqrt(self.gamma * self.pressure(u) / u[0])

    def entropy(self, u):
        u = self.check_admissible(u)
        return np.log(self.pressure(u) / u[0] ** self.gamma) / (self.gamma - 1.0)

    def flux(self, u):
        rho, j, E = u = self.check_admissible(u)
        P = self.pressure(u)
        vel = j / rho
        return np.stack([j, j * vel + P, (E + P) * vel])

    def jacobian(self, u):
        rho, j, E = self.check_admissible(u)
        g = self.gamma
        vel = j / rho
        e = E / rho
        J = np.zeros(rho.shape + (3, 3))
        J[..., 0, 1] = 1.0
        J[..., 1, 0] = 0.5 * (g - 3.0) * vel * vel
        J[..., 1, 1] = (3.0 - g) * vel
        J[..., 1, 2] = g - 1.0
        J[..., 2, 0] = (g - 1.0) * vel**3 - g * vel * e
        J[..., 2, 1] = g * e - 1.5 * (g - 1.0) * vel * vel
        J[..., 2, 2] = g * vel
        return J

    def diffusion_matrix(self, u):
        rho, j, E = self.check_admissible(u)
        nu = self.mu / rho
        vel = j / rho
        k = self.gamma / self.pr
        D = np.zeros(rho.shape + (3, 3))
        D[..., 1, 0] = -4.0 / 3.0 * vel
        D[..., 1, 1] = 4.0 / 3.0
        D[..., 2, 0] = -4.0 / 3.0 * vel * vel + k * (vel * vel - E / rho)
        D[..., 2, 1] = 4.0 / 3.0 * vel - k * vel
        D[..., 2, 2] = k
        return nu[..., None, None] * D

    def spectral_bound(self, u):
        u = self.check_admissible(u)
        return np.abs(u[1] / u[0]) + self.sound_speed(u)

    def primitive_to_conserved(self, rho, vel, P):
        """Build ``(rho, j, E)`` from density, velocity and pressure."""
        rho = np.asarray(rho, dtype=float)
        vel = np.asarray(vel, dtype=float)
        P = np.asarray(P, dtype=float)
        return np.stack(np.broadcast_arrays(rho, rho * vel, P / (self.gamma - 1.0) + 0.5 * rho * vel * vel))
