"""Running cases, measuring errors and formatting reports."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import log

import numpy as np

from .cases import CaseConfig, Problem, build
from .errors import DomainError
from .kinetic import project
from .timeint import SolverState, Trajectory, advance, initial_state


def l2_error(numeric, exact, baseline: float = 0.0) -> float:
    """Relative discrete L2 error ``sqrt(sum (u - ue)^2 / sum ue^2)``.

    ``baseline`` is subtracted from both fields first, which measures a small
    perturbation of a uniform state against its own size.
    """
    numeric = np.asarray(numeric, dtype=float) - baseline
    exact = np.asarray(exact, dtype=float) - baseline
    if numeric.shape != exact.shape:
        raise DomainError(f"shape mismatch {numeric.shape} vs {exact.shape}")
    den = float(np.sum(exact * exact))
    if den == 0.0:
        raise DomainError("exact field has zero norm")
    return float(np.sqrt(np.sum((numeric - exact) ** 2) / den))


@dataclass
class RunResult:
    problem: Problem
    trajectory: Trajectory
    u: np.ndarray
    exact: np.ndarray | None
    l2: float | None

    @property
    def final(self) -> SolverState:
        return self.trajectory.final


def run_case(case: CaseConfig | Problem, callback=None) -> RunResult:
    """Initialise at equilibrium, integrate to ``t_end`` and measure the error."""
    pb = case if isinstance(case, Problem) else build(case)
    state = initial_state(pb.spec, pb.u0, pb.wave)
    traj = advance(state, pb.grid, pb.spec, pb.wave, pb.scheme, pb.case.t_end, pb.case.snapshots, callback)
    u = project(traj.final.F)[0]
    ex = pb.exact(traj.final.t) if pb.exact is not None else None
    err = None
    if ex is not None:
        c = pb.error_component
        try:
            err = l2_error(u[c], ex[c], pb.baseline)
        except DomainError:
            err = float(np.sqrt(np.sum((u[c] - ex[c]) ** 2))) if np.any(u[c] != ex[c]) else 0.0
    return RunResult(pb, traj, u, ex, err)


def _rate(prev, cur, scale=2.0):
    if prev is None or cur is None or prev <= 0 or cur <= 0:
        return None
    return log(prev / cur) / log(scale)


@dataclass
class ConvergenceReport:
    """Rows ``(N, L2, r)`` with ``r = log2(L2(N/2) / L2(N))`` from the second row on."""

    rows: list = field(default_factory=list)

    @classmethod
    def from_errors(cls, meshes, errors):
        rows, prev, prev_n = [], None, None
        for n, e in zip(meshes, errors):
            r = None if prev is None else _rate(prev, e, n / prev_n)
            rows.append((int(n), e, r))
            prev, prev_n = e, n
        return cls(rows)

    header = ("N", "L2", "r")


@dataclass
class KnudsenReport:
    """Rows ``(a, eps, L2, r)`` with ``r`` the slope of ``log L2`` against ``log eps``."""

    rows: list = field(default_factory=list)

    header = ("a", "eps", "L2", "r")


def _l2_for(case: CaseConfig) -> float:
    return run_case(case).l2


def _map(cases, jobs):
    if jobs is None or jobs <= 1 or len(cases) <= 1:
        return [_l2_for(c) for c in cases]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_l2_for, cases))


def convergence_study(case: CaseConfig, meshes, jobs: int | None = None) -> ConvergenceReport:
    """Run ``case`` on each mesh size and tabulate the observed orders."""
    meshes = [int(n) for n in meshes]
    if len(meshes) < 2:
        raise DomainError("a convergence study needs at least two meshes")
    for a, b in zip(meshes, meshes[1:]):
        if b != 2 * a:
            raise DomainError("each mesh must double the previous one")
    cases = [case.with_overrides(n=n) for n in meshes]
    return ConvergenceReport.from_errors(meshes, _map(cases, jobs))


def knudsen_sweep(case: CaseConfig, speeds, jobs: int | None = None) -> KnudsenReport:
    """Vary the kinetic speed (or the ratio, for adaptive cases) at fixed mesh.

    The reported ``a`` and Knudsen number are those of the initial state.
    """
    speeds = [float(s) for s in speeds]
    if not speeds:
        raise DomainError("no speeds given")
    key = "ratio" if case.ratio is not None else "a"
    cases = [case.with_overrides(**{key: s}) for s in speeds]
    errors = _map(cases, jobs)
    rows, prev = [], None
    for c, e in zip(cases, errors):
        pb = build(c)
        a0 = initial_state(pb.spec, pb.u0, pb.wave).a
        eps = pb.knudsen(a0)
        r = None
        if prev is not None and prev[0] > 0 and eps > 0 and eps != prev[0]:
            r = log(prev[1] / e) / log(prev[0] / eps)
        rows.append((a0, eps, e, r))
        prev = (eps, e)
    return KnudsenReport(rows)


# ------------------------------------------------------------------ emission


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.8g}"


def _table(header, rows):
    return [list(header)] + [[_fmt(v) for v in row] for row in rows]


def table1_rows(table):
    """Flatten ``{(order, space): [lambda...]}`` into CSV rows."""
    ncol = max((len(v) for v in table.values()), default=0)
    header = ["order", "space"] + [f"M{m}" for m in range(1, ncol + 1)]
    rows = [[order, f"dx{space}"] + [round(v, 2) for v in vals] for (order, space), vals in sorted(table.items())]
    return header, rows


def emit(report, fmt: str = "csv") -> bytes:
    """Serialise a report (convergence, Knudsen or Table-1 dict) deterministically."""
    if isinstance(report, dict):
        header, rows = table1_rows(report)
        lines = [header] + [[str(v) if isinstance(v, str) else _fmt(v) for v in r] for r in rows]
    else:
        lines = _table(report.header, report.rows)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(lines)
        return buf.getvalue().encode()
    if fmt == "text":
        widths = [max(len(r[i]) for r in lines) for i in range(len(lines[0]))]
        out = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in lines]
        return ("\n".join(out) + "\n").encode()
    raise DomainError(f"unknown output format {fmt!r}")


def snapshot_csv(problem: Problem, state: SolverState) -> bytes:
    """Columns ``x``, the conserved components and, when known, their exact values."""
    u = project(state.F)[0]
    p = u.shape[0]
    names = ["u"] if p == 1 else ["rho", "j", "E"]
    cols = [problem.grid.x] + list(u)
    header = ["x"] + names
    if problem.exact is not None:
        ex = problem.exact(state.t)
        cols += list(ex)
        header += [f"{n}_exact" for n in names]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*cols):
        writer.writerow([f"{v:.12g}" for v in row])
    return buf.getvalue().encode()
