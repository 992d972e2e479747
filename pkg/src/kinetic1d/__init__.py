"""Kinetic BGK relaxation solver for 1D convection-diffusion systems.

The package approximates scalar diffusion, advection-diffusion, viscous
Burgers and compressible Navier-Stokes with a two-wave kinetic model whose
collision matrix reproduces the target diffusion, integrated in time by
deferred correction over Lobatto IIIC tableaux.
"""

from .errors import (
    ConfigError,
    DomainError,
    KineticError,
    NumericalError,
    SubcharacteristicError,
    UnsupportedError,
)
from .kinetic import WaveModel, knudsen, maxwellian, project, relaxation_matrix, update_wave_speed
from .models import Advection, Burgers, Diffusion, NavierStokes
from .spatial import DirichletMaxwellian, Grid1D, Periodic
from .timeint import DeCConfig, SolverState, dec_step, lobatto_iiic, step_imex1

__all__ = [
    "Advection",
    "Burgers",
    "ConfigError",
    "DeCConfig",
    "Diffusion",
    "DirichletMaxwellian",
    "DomainError",
    "Grid1D",
    "KineticError",
    "NavierStokes",
    "NumericalError",
    "Periodic",
    "SolverState",
    "SubcharacteristicError",
    "UnsupportedError",
    "WaveModel",
    "dec_step",
    "knudsen",
    "lobatto_iiic",
    "maxwellian",
    "project",
    "relaxation_matrix",
    "step_imex1",
    "update_wave_speed",
]
