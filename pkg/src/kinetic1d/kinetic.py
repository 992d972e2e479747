"""Two-wave kinetic closure.

Populations are stored as arrays of shape ``(2, p, *batch)``: index 0 is the
wave travelling at ``-a`` and index 1 the wave travelling at ``+a``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, NumericalError, SubcharacteristicError
from .linalg import batched_solve
from .models import ProblemSpec

K_WAVES = 2


@dataclass(frozen=True)
class WaveModel:
    """Kinetic velocities ``-a`` and ``+a``.

    When ``ratio`` is set the model is adaptive: ``a`` is recomputed from the
    solution as ``ratio`` times the largest characteristic speed.
    """

    a: float
    ratio: float | None = None

    def __post_init__(self):
        if not (np.isfinite(self.a) and self.a > 0):
            raise DomainError(f"kinetic speed must be positive, got {self.a}")
        if self.ratio is not None and not self.ratio > 1:
            raise DomainError(f"wave speed ratio must exceed 1, got {self.ratio}")

    @property
    def adaptive(self) -> bool:
        return self.ratio is not None

    @property
    def velocities(self):
        return np.array([-self.a, self.a])

    def with_speed(self, a: float) -> "WaveModel":
        return replace(self, a=float(a))


def maxwellian(spec: ProblemSpec, u, a: float):
    """Equilibrium populations ``(M1, M2)`` stacked on a new leading axis."""
    if not a > 0:
        raise DomainError(f"kinetic speed must be positive, got {a}")
    u = spec.check_admissible(u)
    fa = spec.flux(u) / a
    return np.stack([0.5 * (u - fa), 0.5 * (u + fa)])


def project(F, a: float = 1.0):
    """Return the conserved moment ``F1 + F2`` and flux moment ``a (F2 - F1)``."""
    F = np.asarray(F, dtype=float)
    return F[0] + F[1], a * (F[1] - F[0])


def check_subcharacteristic(spec: ProblemSpec, u, a: float):
    """Raise if ``a`` does not strictly exceed the characteristic speed anywhere."""
    bound = np.asarray(spec.spectral_bound(u))
    bad = ~(bound < a)
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        raise SubcharacteristicError(
            f"kinetic speed a={a:g} does not exceed characteristic speed {float(bound[idx]):g} at index {idx}"
        )
    return bound


def relaxation_matrix(spec: ProblemSpec, u, a: float):
    """Relaxation-time matrix ``T = D(u) (a^2 I - f'(u)^2)^{-1}``.

    Returned with shape ``batch + (p, p)``.
    """
    u = spec.check_admissible(u)
    check_subcharacteristic(spec, u, a)
    D = spec.diffusion_matrix(u)
    J = spec.jacobian(u)
    if spec.p == 1:
        return D / (a * a - J * J)
    X = a * a * np.eye(spec.p) - J @ J
    batch = X.shape[:-2]
    Xt = np.swapaxes(X, -1, -2).reshape(-1, spec.p, spec.p)
    Dt = np.swapaxes(D, -1, -2).reshape(-1, spec.p, spec.p)
    try:
        # T X = D  <=>  X^T T^T = D^T
        Tt = batched_solve(Xt, Dt)
    except NumericalError as exc:
        raise SubcharacteristicError("a^2 I - f'(u)^2 is singular") from exc
    return np.swapaxes(Tt.reshape(batch + (spec.p, spec.p)), -1, -2)


def knudsen(spec: ProblemSpec, a: float, ell: float, rho_c: float = 1.0) -> float:
    """Knudsen number of a case with characteristic length ``ell``."""
    if not (a > 0 and ell > 0 and rho_c > 0):
        raise DomainError("knudsen requires positive a, ell and rho_c")
    if hasattr(spec, "mu"):
        return spec.mu / (a * ell * rho_c)
    return spec.alpha / (a * ell)


def update_wave_speed(model: WaveModel, spec: ProblemSpec, u) -> float:
    """Kinetic speed to use for the next step given the grid states ``u``."""
    if not model.adaptive:
        return model.a
    u = np.asarray(u, dtype=float)
    if u.size == 0 or u.ndim < 2 or u.shape[1] == 0:
        raise DomainError("cannot update the wave speed from an empty grid")
    bound = float(np.max(spec.spectral_bound(u)))
    if bound <= 0:
        # Nothing travels: keep the current speed rather than collapse to zero.
        return model.a
    return model.ratio * bound


def remap(F, a_old: float, a_new: float):
    """Re-express populations for a new kinetic speed keeping both moments."""
    if a_new == a_old:
        return F
    u, v = project(F, a_old)
    va = v / a_new
    return np.stack([0.5 * (u - va), 0.5 * (u + va)])
