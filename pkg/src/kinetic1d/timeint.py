"""Time integration: first-order IMEX and deferred correction over Lobatto IIIC.

Every scheme is written as a sequence of iterations on sub-node populations
``F_j``. Each iteration advances the macroscopic states explicitly, evaluates
the Maxwellians ``M_j`` and relaxation matrices ``T_j`` there, and then solves
the point-local system

    (blockdiag(T_j) + dt A (x) I_p) G = B - M,       F_j = M_j + T_j G_j,

where ``B_j = F_0 - dt sum_k A_jk Lambda delta_x F_k``. Only ``T`` appears, so
the solve stays well posed when ``T`` vanishes or is singular.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import sqrt

import numpy as np

from .errors import DomainError, UnsupportedError
from .linalg import collision_update
from .kinetic import WaveModel, check_subcharacteristic, maxwellian, project, remap, update_wave_speed
from .models import ProblemSpec
from .spatial import Grid1D, transport


@dataclass(frozen=True)
class ButcherTableau:
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    order: int

    def __post_init__(self):
        for name in ("A", "b", "c"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        s = len(self.b)
        if self.A.shape != (s, s) or self.c.shape != (s,):
            raise DomainError("inconsistent tableau shapes")
        if not np.allclose(self.A.sum(axis=1), self.c, rtol=0, atol=1e-14):
            raise DomainError("tableau row sums must equal the nodes")

    @property
    def s(self) -> int:
        return len(self.b)


def implicit_euler() -> ButcherTableau:
    return ButcherTableau([[1.0]], [1.0], [1.0], 1)


def lobatto_iiic(order: int) -> ButcherTableau:
    """Lobatto IIIC tableau of order 2, 4 or 6."""
    if order == 2:
        A = [[0.5, -0.5], [0.5, 0.5]]
        c = [0.0, 1.0]
    elif order == 4:
        A = [
            [1 / 6, -1 / 3, 1 / 6],
            [1 / 6, 5 / 12, -1 / 12],
            [1 / 6, 2 / 3, 1 / 6],
        ]
        c = [0.0, 0.5, 1.0]
    elif order == 6:
        r5 = sqrt(5.0)
        A = [
            [1 / 12, -r5 / 12, r5 / 12, -1 / 12],
            [1 / 12, 1 / 4, (10 - 7 * r5) / 60, r5 / 60],
            [1 / 12, (10 + 7 * r5) / 60, 1 / 4, -r5 / 60],
            [1 / 12, 5 / 12, 5 / 12, 1 / 12],
        ]
        c = [0.0, 0.5 - r5 / 10, 0.5 + r5 / 10, 1.0]
    else:
        raise UnsupportedError(f"no Lobatto IIIC tableau of order {order}")
    A = np.array(A)
    return ButcherTableau(A, A[-1].copy(), c, order)


# Default CFL number and spatial operator for each time order.
DEFAULT_CFL = {1: 1.0, 2: 0.8, 4: 2.0, 6: 0.1}
DEFAULT_SPACE = {1: 1, 2: 2, 4: 4, 6: 4}


@dataclass(frozen=True)
class DeCConfig:
    """Scheme choice: tableau, iteration count, CFL number and stencil.

    ``relax=False`` skips the collision phase, leaving the linear transport
    iteration whose amplification factors the stability module analyses.
    """

    tableau: ButcherTableau
    M: int
    cfl_lambda: float
    space_order: int
    relax: bool = True

    def __post_init__(self):
        if self.M < 1:
            raise DomainError(f"iteration count must be at least 1, got {self.M}")
        if not self.cfl_lambda > 0:
            raise DomainError(f"CFL number must be positive, got {self.cfl_lambda}")
        if self.space_order not in (1, 2, 4):
            raise UnsupportedError(f"no spatial operator of order {self.space_order}")

    @classmethod
    def for_order(cls, order: int, M: int | None = None, cfl_lambda: float | None = None, space_order: int | None = None):
        """Default scheme of a given time order (order 1 is the IMEX step)."""
        if order not in DEFAULT_CFL:
            raise UnsupportedError(f"no scheme of order {order}")
        tab = implicit_euler() if order == 1 else lobatto_iiic(order)
        return cls(
            tab,
            (1 if order == 1 else order) if M is None else M,
            DEFAULT_CFL[order] if cfl_lambda is None else cfl_lambda,
            DEFAULT_SPACE[order] if space_order is None else space_order,
        )


@dataclass
class SolverState:
    F: np.ndarray
    t: float
    a: float


@dataclass
class Trajectory:
    """Final state plus the snapshots recorded on the way."""

    final: SolverState
    snapshots: list = field(default_factory=list)
    steps: int = 0


def dec_sweep(F0, Fh, grid: Grid1D, spec: ProblemSpec, a: float, config: DeCConfig, dt: float):
    """One deferred-correction iteration mapping sub-node populations ``Fh`` (s, 2, p, n)."""
    A = config.tableau.A
    s = A.shape[0]
    p, n = F0.shape[1], F0.shape[2]
    L = np.stack([transport(Fh[k], grid, spec, a, config.space_order) for k in range(s)])
    B = F0[None] - dt * np.tensordot(A, L, axes=(1, 0))
    if not config.relax:
        return B
    U = B[:, 0] + B[:, 1]  # (s, p, n)
    Uflat = np.transpose(U, (1, 0, 2)).reshape(p, s * n)
    Mflat = maxwellian(spec, Uflat, a)
    M = np.transpose(Mflat.reshape(2, p, s, n), (2, 0, 1, 3))
    if spec.inviscid:
        # T = 0: populations relax onto the Maxwellian.
        return M
    J = spec.jacobian(Uflat).reshape(s, n, p, p)
    D = spec.diffusion_matrix(Uflat).reshape(s, n, p, p)
    return collision_update(J, D, B - M, M, A, dt, a)


def dec_step(state: SolverState, grid: Grid1D, spec: ProblemSpec, config: DeCConfig, dt: float) -> SolverState:
    """Advance by ``dt`` with ``config.M`` deferred-correction iterations."""
    if not dt > 0:
        raise DomainError(f"time step must be positive, got {dt}")
    F0 = state.F
    if config.relax:
        # Sub-node states may overshoot within a step; the condition is
        # enforced on the time-level state that ``a`` was chosen for.
        check_subcharacteristic(spec, project(F0)[0], state.a)
    s = config.tableau.s
    Fh = np.broadcast_to(F0, (s,) + F0.shape)
    for _ in range(config.M):
        Fh = dec_sweep(F0, Fh, grid, spec, state.a, config, dt)
    return SolverState(np.array(Fh[-1]), state.t + dt, state.a)


def step_imex1(state: SolverState, grid: Grid1D, spec: ProblemSpec, dt: float) -> SolverState:
    """First-order step: explicit upwind transport, then implicit relaxation."""
    return dec_step(state, grid, spec, DeCConfig(implicit_euler(), 1, 1.0, 1), dt)


def initial_state(spec: ProblemSpec, u0, wave: WaveModel) -> SolverState:
    """Equilibrium populations for the initial macroscopic field."""
    a = update_wave_speed(wave, spec, u0)
    check_subcharacteristic(spec, u0, a)
    return SolverState(maxwellian(spec, u0, a), 0.0, a)


def advance(
    state: SolverState,
    grid: Grid1D,
    spec: ProblemSpec,
    wave: WaveModel,
    config: DeCConfig,
    t_end: float,
    snapshot_times=(),
    callback=None,
) -> Trajectory:
    """Integrate to ``t_end`` with ``dt = lambda dx / a``, clipping the last step.

    ``snapshot_times`` are hit exactly by clipping steps; ``callback(state)``
    is called after every step.
    """
    if t_end < state.t:
        raise DomainError(f"end time {t_end} precedes current time {state.t}")
    wanted = {float(t) for t in snapshot_times if state.t <= t <= t_end}
    stops = sorted(wanted | {float(t_end)})
    traj = Trajectory(state)
    scale = max(abs(t_end), 1.0)
    for stop in stops:
        while stop - state.t > 1e-13 * scale:
            u = project(state.F)[0]
            a = update_wave_speed(wave, spec, u)
            if a != state.a:
                state = SolverState(remap(state.F, state.a, a), state.t, a)
            dt = config.cfl_lambda * grid.dx / a
            last = stop - state.t <= dt * (1 + 1e-12)
            h = stop - state.t if last else dt
            state = dec_step(state, grid, spec, config, h)
            if last:
                state.t = stop
            traj.steps += 1
            if callback is not None:
                callback(state)
        if stop in wanted:
            traj.snapshots.append(replace(state, F=state.F.copy()))
    traj.final = state
    return traj
