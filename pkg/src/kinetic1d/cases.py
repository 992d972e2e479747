"""Case descriptions and the registry of verification experiments."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from math import sqrt
from typing import Callable

import numpy as np

from .errors import ConfigError, KineticError
from .exact import (
    acoustic_exact,
    acoustic_mode,
    advection_diffusion_exact,
    burgers_fourier_exact,
    burgers_tanh_exact,
    gaussian_diffusion_exact,
    rankine_hugoniot,
    shock_width,
    viscous_shock_profile,
)
from .kinetic import WaveModel, knudsen
from .models import Advection, Burgers, Diffusion, NavierStokes, ProblemSpec
from .spatial import DirichletMaxwellian, Grid1D, Periodic
from .timeint import DeCConfig

KINDS = ("diffusion", "advection", "burgers-shock", "burgers-sine", "ns-acoustic", "ns-shock")


@dataclass(frozen=True)
class CaseConfig:
    """Flat description of one experiment.

    Unset scheme fields fall back to the defaults of the chosen order; exactly
    one of ``a`` (constant kinetic speed) and ``ratio`` (adaptive) applies,
    ``ratio`` winning when both are given.
    """

    kind: str = "diffusion"
    n: int = 100
    order: int = 4
    M: int | None = None
    cfl: float | None = None
    space: int | None = None
    a: float | None = None
    ratio: float | None = None
    t_end: float = 0.1
    # model
    alpha: float = 0.01
    c: float = 10.0
    gamma: float = 1.4
    mu: float = 0.001
    pr: float = 0.71
    # initial data
    delta: float = 0.1
    amplitude: float = 0.01
    Ma: float = 2.0
    k: float = 2 * np.pi
    # Knudsen reporting
    ell: float | None = None
    rho_c: float = 1.0
    snapshots: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown case kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.n < 5:
            raise ConfigError(f"n must be at least 5, got {self.n}")
        if self.t_end < 0:
            raise ConfigError("t_end must be non-negative")
        if self.a is None and self.ratio is None:
            raise ConfigError("either a or ratio must be given")
        if self.order not in (1, 2, 4, 6):
            raise ConfigError(f"unsupported order {self.order}")
        if self.alpha < 0 or self.mu < 0:
            raise ConfigError("diffusion coefficients must be non-negative")

    def with_overrides(self, **kw) -> "CaseConfig":
        names = {f.name for f in fields(self)}
        bad = set(kw) - names
        if bad:
            raise ConfigError(f"unknown case keys: {', '.join(sorted(bad))}")
        return replace(self, **kw)


@dataclass
class Problem:
    """Everything the solver needs, built from a :class:`CaseConfig`."""

    case: CaseConfig
    spec: ProblemSpec
    grid: Grid1D
    u0: np.ndarray
    wave: WaveModel
    scheme: DeCConfig
    exact: Callable | None
    ell: float
    # Component compared with the exact solution (density for Navier-Stokes).
    error_component: int = 0
    # Subtracted from both fields before measuring relative errors, so that
    # small perturbations of a uniform state are measured against their size.
    baseline: float = 0.0

    def knudsen(self, a: float) -> float:
        return knudsen(self.spec, a, self.ell, self.case.rho_c)


# Templates mirroring the published experiments.
TEMPLATES = {
    "diffusion": CaseConfig("diffusion", n=100, order=4, a=1.0, t_end=0.1, alpha=0.01),
    "advection": CaseConfig("advection", n=100, order=4, a=12.0, t_end=0.005, alpha=0.01, c=10.0),
    "burgers-shock": CaseConfig("burgers-shock", n=300, order=4, ratio=10.0, t_end=8.0, alpha=0.001, delta=0.01),
    "burgers-sine": CaseConfig("burgers-sine", n=100, order=4, ratio=10.0, t_end=0.5, alpha=0.01, ell=0.12),
    "ns-acoustic": CaseConfig("ns-acoustic", n=80, order=4, ratio=10.0, t_end=0.005, mu=0.001, pr=0.71),
    "ns-shock": CaseConfig("ns-shock", n=2501, order=4, ratio=10.0, t_end=0.06, mu=0.001, pr=0.75, Ma=2.0),
}


def template(kind: str, **overrides) -> CaseConfig:
    if kind not in TEMPLATES:
        raise ConfigError(f"unknown case kind {kind!r}; expected one of {', '.join(KINDS)}")
    return TEMPLATES[kind].with_overrides(**overrides)


def _scheme(case: CaseConfig) -> DeCConfig:
    return DeCConfig.for_order(case.order, M=case.M, cfl_lambda=case.cfl, space_order=case.space)


def _wave(case: CaseConfig, a_guess: float) -> WaveModel:
    if case.ratio is not None:
        return WaveModel(a_guess, case.ratio)
    return WaveModel(case.a)


def shock_domain(case: CaseConfig):
    """Grid spacing ``delta/10`` over ``[-125 delta, 125 delta]`` unless ``n`` says otherwise."""
    delta = shock_width(case.Ma, case.mu)
    return delta, -0.5 * (case.n - 1) * delta / 10, (case.n - 1) * delta / 10


def build(case: CaseConfig) -> Problem:
    """Assemble model, grid, initial field, wave model, scheme and exact solution."""
    try:
        return _build(case)
    except KineticError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def _build(case: CaseConfig) -> Problem:
    scheme = _scheme(case)
    kind = case.kind
    if kind in ("diffusion", "advection"):
        spec = Diffusion(case.alpha) if kind == "diffusion" else Advection(case.alpha, case.c)
        grid = Grid1D(case.n, 1.0, Periodic())
        x = grid.x
        u0 = gaussian_diffusion_exact(x, 0.0, case.alpha, case.delta, case.amplitude)[None]
        if kind == "diffusion":
            exact = lambda t: gaussian_diffusion_exact(x, t, case.alpha, case.delta, case.amplitude)[None]
        else:
            exact = lambda t: advection_diffusion_exact(x, t, case.c, case.alpha, case.delta, case.amplitude)[None]
        ell = case.delta if case.ell is None else case.ell
        return Problem(case, spec, grid, u0, _wave(case, 1.0), scheme, exact, ell)

    if kind == "burgers-shock":
        spec = Burgers(case.alpha)
        ul = 2.0 * case.alpha / case.delta
        grid = Grid1D(case.n, 1.0, DirichletMaxwellian([ul], [-ul]))
        x = grid.x
        u0 = (-ul * np.tanh((x - 0.5) * 10.0 / case.delta))[None]
        exact = lambda t: burgers_tanh_exact(x, case.alpha, case.delta)[None]
        ell = case.delta if case.ell is None else case.ell
        return Problem(case, spec, grid, u0, _wave(case, 1.0), scheme, exact, ell)

    if kind == "burgers-sine":
        spec = Burgers(case.alpha)
        grid = Grid1D(case.n, 1.0, Periodic())
        x = grid.x
        u0 = (0.5 + np.sin(2 * np.pi * x))[None]

        def exact(t):
            if t == 0:
                return u0.copy()
            return burgers_fourier_exact(x, t, case.alpha)[None]

        ell = 0.12 if case.ell is None else case.ell
        return Problem(case, spec, grid, u0, _wave(case, 1.0), scheme, exact, ell)

    spec = NavierStokes(case.gamma, case.mu, case.pr)
    if kind == "ns-acoustic":
        grid = Grid1D(case.n, 1.0, Periodic())
        x = grid.x
        base = spec.primitive_to_conserved(1.0, 2.0 * sqrt(case.gamma), 1.0)
        mode = acoustic_mode(spec, base, case.k, 1e-5)
        u0 = acoustic_exact(mode, base, x, 0.0)
        exact = lambda t: acoustic_exact(mode, base, x, t)
        ell = 1.0 / case.k if case.ell is None else case.ell
        return Problem(case, spec, grid, u0, _wave(case, 1.0), scheme, exact, ell, 0, float(base[0]))

    # ns-shock
    left, right, _ = rankine_hugoniot(case.Ma, case.gamma)
    delta, x0, length = shock_domain(case)
    grid = Grid1D(case.n, length, DirichletMaxwellian(left, right), x0)
    x = grid.x
    prim_l = np.array([1.0, case.Ma * sqrt(case.gamma), 1.0])
    rho_r = right[0]
    prim_r = np.array([rho_r, right[1] / rho_r, float(spec.pressure(right))])
    blend = np.tanh(x / (2.0 * delta))
    prim = 0.5 * (prim_l + prim_r)[:, None] + 0.5 * (prim_r - prim_l)[:, None] * blend
    u0 = spec.primitive_to_conserved(*prim)

    def exact(t):
        rho, vel, P, _ = viscous_shock_profile(x, case.Ma, case.gamma, case.mu)
        return spec.primitive_to_conserved(rho, vel, P)

    ell = delta if case.ell is None else case.ell
    return Problem(case, spec, grid, u0, _wave(case, 1.0), scheme, exact, ell)
