"""Analytic reference solutions for the verification cases."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, sqrt

import numpy as np

from .errors import DomainError, NumericalError
from .models import NavierStokes

# ---------------------------------------------------------------- scalar cases


def gaussian_diffusion_exact(x, t, alpha, delta=0.1, amplitude=0.01, offset=1.0, center=0.5):
    """Spreading Gaussian solution of the heat equation on the real line."""
    if t < 0:
        raise DomainError("time must be non-negative")
    x = np.asarray(x, dtype=float)
    w2 = delta * delta + 4.0 * alpha * t
    return offset + amplitude * np.sqrt(delta * delta / w2) * np.exp(-((x - center) ** 2) / w2)


def advection_diffusion_exact(x, t, c, alpha, delta=0.1, amplitude=0.01, offset=1.0, center=0.5, length=1.0):
    """Gaussian advected at speed ``c`` on a periodic domain of the given length."""
    x = np.asarray(x, dtype=float)
    # Distance to the advected centre folded into [-L/2, L/2).
    d = np.mod(x - c * t - center + 0.5 * length, length) - 0.5 * length
    return gaussian_diffusion_exact(d + center, t, alpha, delta, amplitude, offset, center)


def burgers_tanh_exact(x, alpha, delta):
    """Steady viscous Burgers profile centred at ``x = 1/2``."""
    if not delta > 0:
        raise DomainError("delta must be positive")
    return -(2.0 * alpha / delta) * np.tanh((np.asarray(x, dtype=float) - 0.5) / delta)


def _miller_scaled(nmax, x):
    """``e^{-x} I_k(x)`` for ``k = 0..nmax`` and ``x > 0`` by backward recurrence."""
    start = max(nmax, int(ceil(x))) + 40 + int(ceil(sqrt(40.0 * max(nmax, x, 1.0))))
    vals = np.zeros(start + 2)
    vals[start] = 1e-300
    for k in range(start, 0, -1):
        vals[k - 1] = 2.0 * k / x * vals[k] + vals[k + 1]
        if vals[k - 1] > 1e250:
            vals[k - 1 :] *= 1e-250
    # e^{-x} (I_0 + 2 sum I_k) = 1
    norm = vals[0] + 2.0 * vals[1:].sum()
    return vals[: nmax + 1] / norm


def scaled_bessel_i(n, x):
    """Exponentially scaled modified Bessel function ``e^{-|x|} I_n(x)``.

    ``n`` may be an integer or an array of non-negative integers.
    """
    n_arr = np.asarray(n)
    if np.any(n_arr < 0) or not np.all(np.equal(np.mod(n_arr, 1), 0)):
        raise DomainError("order must be a non-negative integer")
    x = float(x)
    if not np.isfinite(x):
        raise DomainError("argument must be finite")
    n_int = n_arr.astype(int)
    if x == 0.0:
        return np.where(n_int == 0, 1.0, 0.0)[()]
    table = _miller_scaled(int(n_int.max(initial=0)), abs(x))
    out = table[n_int]
    if x < 0:
        out = out * np.where(n_int % 2 == 1, -1.0, 1.0)
    return out[()]


def burgers_fourier_exact(x, t, alpha, n_terms=100):
    """Series solution of viscous Burgers with ``u0 = 0.5 + sin(2 pi x)`` on a unit periodic domain."""
    if not t > 0:
        raise DomainError("the series solution needs t > 0")
    if not alpha > 0:
        raise DomainError("the series solution needs alpha > 0")
    x = np.asarray(x, dtype=float)
    n = np.arange(n_terms + 1)
    an = (-1.0) ** n * scaled_bessel_i(n, -1.0 / (4.0 * np.pi * alpha))
    w = an * np.exp(-4.0 * np.pi**2 * alpha * n * n * t)
    phase = 2.0 * np.pi * np.multiply.outer(x - 0.5 * t, n[1:])
    num = 4.0 * np.sum(n[1:] * w[1:] * np.sin(phase), axis=-1)
    den = w[0] + 2.0 * np.sum(w[1:] * np.cos(phase), axis=-1)
    if np.any(~(np.abs(den) > 1e-300)):
        raise DomainError("series denominator underflowed")
    return 0.5 + 2.0 * alpha * np.pi * num / den


# ------------------------------------------------------------ viscous shock


@dataclass(frozen=True)
class ShockSetup:
    Ma: float
    gamma: float
    mu: float
    left: np.ndarray
    right: np.ndarray
    theta: float

    @property
    def delta(self) -> float:
        return shock_width(self.Ma, self.mu)


def shock_theta(Ma, gamma):
    return (gamma - 1.0) / (gamma + 1.0) + 2.0 / ((gamma + 1.0) * Ma * Ma)


def shock_width(Ma, mu):
    """Characteristic width of a viscous shock."""
    return 2.0 * Ma / (Ma * Ma - 1.0) * mu * sqrt(np.pi / 2.0)


def rankine_hugoniot(Ma, gamma=1.4):
    """Conserved states on both sides of a steady shock and the ratio ``theta``.

    The upstream state has unit density and pressure.
    """
    if not Ma > 1:
        raise DomainError(f"a shock needs Ma > 1, got {Ma}")
    th = shock_theta(Ma, gamma)
    ns = NavierStokes(gamma)
    u_left = Ma * sqrt(gamma)
    P_right = (gamma + 1.0 - th * (gamma - 1.0)) / (th * (gamma + 1.0) - (gamma - 1.0))
    left = ns.primitive_to_conserved(1.0, u_left, 1.0)
    right = ns.primitive_to_conserved(1.0 / th, th * u_left, P_right)
    return left, right, th


def shock_setup(Ma, gamma=1.4, mu=0.001):
    left, right, th = rankine_hugoniot(Ma, gamma)
    return ShockSetup(Ma, gamma, mu, left, right, th)


def shock_position(v, Ma, gamma, mu):
    """Position ``x`` at which the specific volume equals ``v`` (decreasing in ``v``)."""
    th = shock_theta(Ma, gamma)
    u_in = 0.5 * (1.0 + th)
    C = 8.0 * sqrt(gamma) * mu / (3.0 * (gamma + 1.0) * Ma)
    v = np.asarray(v, dtype=float)
    return -C * (th / (1.0 - th) * np.log((v - th) / (u_in - th)) - 1.0 / (1.0 - th) * np.log((1.0 - v) / (1.0 - u_in)))


def shock_specific_volume(x, Ma, gamma, mu):
    """Invert :func:`shock_position` by bisection with a final Newton polish."""
    th = shock_theta(Ma, gamma)
    x = np.asarray(x, dtype=float)
    lo = np.full(x.shape, th + 1e-15)
    hi = np.full(x.shape, 1.0 - 1e-15)
    # x decreases with v: points beyond the bracket saturate at the end states.
    while np.max(hi - lo, initial=0.0) > 1e-15:
        mid = 0.5 * (lo + hi)
        right_of = shock_position(mid, Ma, gamma, mu) > x
        lo = np.where(right_of, mid, lo)
        hi = np.where(right_of, hi, mid)
    v = 0.5 * (lo + hi)
    C = 8.0 * sqrt(gamma) * mu / (3.0 * (gamma + 1.0) * Ma)
    dxdv = -C * (th / (1.0 - th) / (v - th) + 1.0 / (1.0 - th) / (1.0 - v))
    v_new = v - (shock_position(v, Ma, gamma, mu) - x) / dxdv
    inside = (v_new > lo - 1e-15) & (v_new < hi + 1e-15)
    return np.where(inside, v_new, v)


def viscous_shock_profile(x, Ma, gamma=1.4, mu=0.001):
    """Density, velocity, pressure and entropy across a steady viscous shock (Pr = 3/4)."""
    if not Ma > 1:
        raise DomainError(f"a shock needs Ma > 1, got {Ma}")
    if not mu > 0:
        raise DomainError("the viscous profile needs mu > 0")
    v = shock_specific_volume(x, Ma, gamma, mu)
    rho = 1.0 / v
    P = (1.0 + 0.5 * (gamma - 1.0) * Ma * Ma * (1.0 - v * v)) / v
    vel = v * Ma * sqrt(gamma)
    eta = np.log(P / rho**gamma) / (gamma - 1.0)
    return rho, vel, P, eta


# --------------------------------------------------------------- acoustics


@dataclass(frozen=True)
class AcousticMode:
    omega: complex
    uhat: np.ndarray
    k: float


def acoustic_matrix(spec: NavierStokes, base, k):
    """``k f'(u) - i k^2 D(u)`` for the linearised plane-wave problem."""
    base = np.asarray(base, dtype=float)
    return k * spec.jacobian(base) - 1j * k * k * spec.diffusion_matrix(base)


def acoustic_mode(spec: NavierStokes, base, k=2 * np.pi, amplitude=1e-5):
    """Downstream acoustic eigenmode of the linearised equations about ``base``."""
    if k == 0:
        raise DomainError("wavenumber must be non-zero")
    base = spec.check_admissible(base)
    Amat = acoustic_matrix(spec, base, k)
    w, V = np.linalg.eig(Amat)
    target = k * float(base[1] / base[0] + spec.sound_speed(base))
    i = int(np.argmin(np.abs(w.real - target)))
    # Reject a defective pair: another eigenvalue on top of the chosen one.
    others = np.delete(w, i)
    if np.any(np.abs(others - w[i]) < 1e-12 * max(1.0, abs(w[i]))):
        raise NumericalError("acoustic eigenvalue is not simple")
    vec = V[:, i]
    if abs(vec[0]) == 0:
        raise NumericalError("acoustic eigenvector has no density component")
    vec = vec * (amplitude / vec[0])
    return AcousticMode(complex(w[i]), vec, float(k))


def acoustic_exact(mode: AcousticMode, base, x, t):
    """Linearised solution ``base + |uhat| cos(kx - Re(w) t + arg uhat) e^{Im(w) t}``."""
    base = np.asarray(base, dtype=float)
    x = np.asarray(x, dtype=float)
    phase = np.multiply.outer(np.angle(mode.uhat), np.ones_like(x)) + mode.k * x - mode.omega.real * t
    return base[:, None] + np.abs(mode.uhat)[:, None] * np.cos(phase) * np.exp(mode.omega.imag * t)
