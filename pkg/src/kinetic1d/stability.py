"""Von Neumann analysis of the transport part of the schemes.

For linear transport at speed ``a`` the semi-discrete Fourier mode obeys
``d/dt F = -(a / dx) g(theta) F``; a time step of CFL number ``lambda`` thus
multiplies it by ``G(z)`` with ``z = -lambda g(theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedError
from .timeint import lobatto_iiic

THETA_SAMPLES = 4096
LAMBDA_MAX = 4.0
# Margin above 1 that absorbs round-off at the neutral modes (theta = 0 gives |G| = 1).
STABILITY_TOL = 1e-10
SCAN_STEP = 0.005
BISECT_WIDTH = 1e-3

TABLE1_ORDERS = (2, 4)
TABLE1_SPACES = (1, 2, 4)
TABLE1_M = (1, 2, 3, 4, 5, 6)


def fourier_symbol(space: int, theta):
    """Symbol ``g`` with ``dx * delta_x e^{i j theta} = g(theta) e^{i j theta}`` for a positive speed."""
    theta = np.asarray(theta, dtype=float)
    e = np.exp(-1j * theta)
    if space == 1:
        return 1 - e
    if space == 2:
        return np.exp(1j * theta) / 3 + 0.5 - e + e * e / 6
    if space == 4:
        return 1j * (4.0 / 3.0 * np.sin(theta) - np.sin(2 * theta) / 6)
    raise UnsupportedError(f"no spatial operator of order {space}")


@dataclass(frozen=True)
class SchemeDescriptor:
    """A time integrator paired with a spatial operator.

    ``time`` is one of ``"euler"``, ``"lobatto"`` (the exact Lobatto IIIC step
    of the given ``order``) or ``"dec"`` (``M`` deferred-correction iterations).
    """

    time: str
    space: int
    order: int = 1
    M: int = 1

    def __post_init__(self):
        if self.time not in ("euler", "lobatto", "dec"):
            raise DomainError(f"unknown time integrator {self.time!r}")
        if self.time != "euler" and self.order not in (2, 4, 6):
            raise UnsupportedError(f"no Lobatto IIIC scheme of order {self.order}")
        if self.M < 1:
            raise DomainError("M must be at least 1")
        if self.space not in (1, 2, 4):
            raise UnsupportedError(f"no spatial operator of order {self.space}")


def amplification_matrix_dec(order: int, M: int, z):
    """``sum_{k=0}^M z^k A^k`` for the Lobatto IIIC matrix ``A``; shape ``z.shape + (s, s)``."""
    A = lobatto_iiic(order).A
    z = np.asarray(z, dtype=complex)
    s = A.shape[0]
    out = np.broadcast_to(np.eye(s, dtype=complex), z.shape + (s, s)).copy()
    term = out.copy()
    for _ in range(M):
        term = z[..., None, None] * (term @ A)
        out += term
    return out


def _dec_amplification(order, M, z):
    # Last row of the matrix applied to the vector of ones: a Horner sum on A^k 1.
    A = lobatto_iiic(order).A
    z = np.asarray(z, dtype=complex)
    v = np.ones(A.shape[0])
    coeffs = [v]
    for _ in range(M):
        v = A @ v
        coeffs.append(v)
    last = np.array([c[-1] for c in coeffs])
    acc = np.zeros_like(z)
    for ck in last[::-1]:
        acc = acc * z + ck
    return acc


def amplification(scheme: SchemeDescriptor, z):
    """Amplification factor ``G(z)`` of one time step."""
    z = np.asarray(z, dtype=complex)
    if scheme.time == "euler":
        return 1 + z
    if scheme.time == "dec":
        return _dec_amplification(scheme.order, scheme.M, z)
    if scheme.order == 2:
        num, den = 2 + 0 * z, z * z - 2 * z + 2
    elif scheme.order == 4:
        num, den = -6 * z - 24, z**3 - 6 * z**2 + 18 * z - 24
    else:
        raise UnsupportedError("closed-form amplification only for orders 2 and 4")
    if np.any(den == 0):
        raise DomainError("z is a pole of the amplification factor")
    return num / den


def _max_gain(scheme, lam, theta, g):
    gains = np.abs(amplification(scheme, -lam * g))
    i = int(np.argmax(gains))
    # Refine around the worst sampled mode.
    h = theta[1] - theta[0]
    fine = np.linspace(theta[i] - h, theta[i] + h, 65)
    return max(gains[i], float(np.max(np.abs(amplification(scheme, -lam * fourier_symbol(scheme.space, fine))))))


def critical_cfl(scheme: SchemeDescriptor, samples: int = THETA_SAMPLES, tol: float = STABILITY_TOL) -> float:
    """Largest CFL number for which the scheme is stable, to within ``BISECT_WIDTH``.

    Stability need not be monotone in ``lambda``: the range is scanned from 0
    and the first unstable value is bracketed before bisecting.
    """
    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    g = fourier_symbol(scheme.space, theta)

    def stable(lam):
        return _max_gain(scheme, lam, theta, g) <= 1 + tol

    if not stable(SCAN_STEP):
        # Unstable for every resolvable CFL number.
        return 0.0
    lo = SCAN_STEP
    for lam in np.arange(1, int(round(LAMBDA_MAX / SCAN_STEP)) + 1) * SCAN_STEP:
        if not stable(lam):
            break
        lo = lam
    else:
        return LAMBDA_MAX
    hi = lo + SCAN_STEP
    while hi - lo > BISECT_WIDTH / 2:
        mid = 0.5 * (lo + hi)
        if stable(mid):
            lo = mid
        else:
            hi = mid
    return float(lo)


def table1():
    """Critical CFL numbers of DeC Lobatto IIIC schemes.

    Returns ``{(order, space): [lambda for M in 1..6]}``.
    """
    return {
        (order, space): [critical_cfl(SchemeDescriptor("dec", space, order, M)) for M in TABLE1_M]
        for order in TABLE1_ORDERS
        for space in TABLE1_SPACES
    }
