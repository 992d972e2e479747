"""Uniform grid, upwind-biased derivative stencils and ghost closures.

All stencils work on arrays extended by ``GHOSTS`` layers on each side of the
last axis and return values at the ``n`` interior points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .kinetic import maxwellian
from .models import ProblemSpec

GHOSTS = 2


@dataclass(frozen=True)
class Periodic:
    """Wraparound closure."""


@dataclass(frozen=True)
class DirichletMaxwellian:
    """Ghost layers frozen at the Maxwellians of two boundary states."""

    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "left", np.atleast_1d(np.asarray(self.left, dtype=float)))
        object.__setattr__(self, "right", np.atleast_1d(np.asarray(self.right, dtype=float)))


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of ``n`` points on ``[x0, x0 + length]``.

    Periodic grids use cell centres ``x0 + (i + 1/2) dx`` with ``dx = length / n``;
    Dirichlet grids include both end points, ``dx = length / (n - 1)``.
    """

    n: int
    length: float = 1.0
    boundary: Periodic | DirichletMaxwellian = field(default_factory=Periodic)
    x0: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 5:
            raise DomainError(f"a grid needs at least 5 points, got {self.n}")
        if not self.length > 0:
            raise DomainError(f"grid length must be positive, got {self.length}")

    @property
    def periodic(self) -> bool:
        return isinstance(self.boundary, Periodic)

    @property
    def dx(self) -> float:
        return self.length / (self.n if self.periodic else self.n - 1)

    @property
    def x(self) -> np.ndarray:
        i = np.arange(self.n, dtype=float)
        if self.periodic:
            return self.x0 + (i + 0.5) * self.dx
        return self.x0 + i * self.dx


@dataclass
class WaveField:
    """One scalar component of one population on a grid.

    ``ghost_left``/``ghost_right`` hold the two outer values used on
    non-periodic grids (outermost first on the left, innermost first on the
    right); they default to copies of the end values.
    """

    values: np.ndarray
    advect_sign: int = 1
    ghost_left: np.ndarray | None = None
    ghost_right: np.ndarray | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(self.values)):
            raise DomainError("wave field has non-finite entries")
        if self.advect_sign not in (1, -1):
            raise DomainError(f"advect_sign must be +1 or -1, got {self.advect_sign}")

    def extended(self, grid: Grid1D) -> np.ndarray:
        v = self.values
        if grid.periodic:
            return np.concatenate([v[-GHOSTS:], v, v[:GHOSTS]])
        left = np.full(GHOSTS, v[0]) if self.ghost_left is None else np.asarray(self.ghost_left, dtype=float)
        right = np.full(GHOSTS, v[-1]) if self.ghost_right is None else np.asarray(self.ghost_right, dtype=float)
        return np.concatenate([left, v, right])


def _shift(ext, k):
    """Values at offset ``k`` from each interior point of an extended array."""
    n = ext.shape[-1] - 2 * GHOSTS
    return ext[..., GHOSTS + k : GHOSTS + k + n]


def stencil1(ext, sign, dx):
    if sign >= 0:
        return (_shift(ext, 0) - _shift(ext, -1)) / dx
    return (_shift(ext, 1) - _shift(ext, 0)) / dx


def stencil2(ext, sign, dx):
    if sign >= 0:
        return (_shift(ext, 1) / 3 + _shift(ext, 0) / 2 - _shift(ext, -1) + _shift(ext, -2) / 6) / dx
    return (-_shift(ext, -1) / 3 - _shift(ext, 0) / 2 + _shift(ext, 1) - _shift(ext, 2) / 6) / dx


def stencil4(ext, sign, dx):
    return ((_shift(ext, -2) - _shift(ext, 2)) / 12 + 2.0 / 3.0 * (_shift(ext, 1) - _shift(ext, -1))) / dx


STENCILS = {1: stencil1, 2: stencil2, 4: stencil4}


def _apply(stencil, fld: WaveField, grid: Grid1D) -> WaveField:
    out = stencil(fld.extended(grid), fld.advect_sign, grid.dx)
    return WaveField(out, fld.advect_sign)


def dx1(fld: WaveField, grid: Grid1D) -> WaveField:
    """First-order upwind derivative."""
    return _apply(stencil1, fld, grid)


def dx2(fld: WaveField, grid: Grid1D) -> WaveField:
    """Four-point upwind-biased derivative."""
    return _apply(stencil2, fld, grid)


def dx4(fld: WaveField, grid: Grid1D) -> WaveField:
    """Fourth-order central derivative."""
    return _apply(stencil4, fld, grid)


def fill_ghosts(F, grid: Grid1D, spec: ProblemSpec, a: float):
    """Extend populations of shape ``(2, p, n)`` by the ghost layers."""
    F = np.asarray(F, dtype=float)
    if grid.periodic:
        return np.concatenate([F[..., -GHOSTS:], F, F[..., :GHOSTS]], axis=-1)
    ml = maxwellian(spec, grid.boundary.left, a)[..., None]
    mr = maxwellian(spec, grid.boundary.right, a)[..., None]
    shape = F.shape[:-1] + (GHOSTS,)
    return np.concatenate([np.broadcast_to(ml, shape), F, np.broadcast_to(mr, shape)], axis=-1)


def transport(F, grid: Grid1D, spec: ProblemSpec, a: float, space_order: int):
    """The transport term ``Lambda delta_x F`` for populations ``(2, p, n)``."""
    stencil = STENCILS[space_order]
    ext = fill_ghosts(F, grid, spec, a)
    return np.stack([-a * stencil(ext[0], -1, grid.dx), a * stencil(ext[1], 1, grid.dx)])
