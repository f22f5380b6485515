"""Closed-form test solutions for the wave equation on the unit square.

The main case is a travelling Gaussian pulse u = exp(-100 r^2) whose center
moves from (0.3, 0.3) at t = 0 to (0.7, 0.7) at t = 1 along c(t) = 0.3
+ 0.4 t^2.  All derivatives below are exact symbolic differentiations of
that expression; the tests validate them against finite differences.  The
pulse decays to ~1e-16 at the boundary, so homogeneous Dirichlet data are
satisfied to round-off.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class ManufacturedSolution:
    """Exact solution bundle: u, time derivative, their gradients, forcing."""

    name: str
    u: Callable           # u(t, x, y)
    dudt: Callable        # du/dt(t, x, y)
    grad_u: Callable      # (du/dx, du/dy)(t, x, y)
    grad_dudt: Callable   # gradient of du/dt
    f: Callable           # u_tt - Lap(u)

    def initial_data(self):
        """(u0, grad_u0, v0, grad_v0) as space-only callables."""
        return (
            lambda x, y: self.u(0.0, x, y),
            lambda x, y: self.grad_u(0.0, x, y),
            lambda x, y: self.dudt(0.0, x, y),
            lambda x, y: self.grad_dudt(0.0, x, y),
        )


def gaussian_pulse(sharpness=100.0) -> ManufacturedSolution:
    """The travelling Gaussian with center 0.3 + 0.4 t^2 in both coordinates."""
    s = sharpness

    def parts(t, x, y):
        c = 0.3 + 0.4 * t * t
        X = x - c
        Y = y - c
        return X, Y, np.exp(-s * (X * X + Y * Y))

    def u(t, x, y):
        return parts(t, x, y)[2]

    def dudt(t, x, y):
        X, Y, g = parts(t, x, y)
        return 2.0 * s * 0.8 * t * (X + Y) * g

    def grad_u(t, x, y):
        X, Y, g = parts(t, x, y)
        return -2.0 * s * X * g, -2.0 * s * Y * g

    def grad_dudt(t, x, y):
        X, Y, g = parts(t, x, y)
        cdot = 0.8 * t
        gx = 2.0 * s * cdot * g * (1.0 - 2.0 * s * X * (X + Y))
        gy = 2.0 * s * cdot * g * (1.0 - 2.0 * s * Y * (X + Y))
        return gx, gy

    def f(t, x, y):
        X, Y, g = parts(t, x, y)
        cdot = 0.8 * t
        cddot = 0.8
        # u_tt = (h' + h^2) u with h = 2 s cdot (X + Y)
        utt = (2.0 * s * cddot * (X + Y) - 4.0 * s * cdot ** 2
               + 4.0 * s * s * cdot ** 2 * (X + Y) ** 2) * g
        lap = (-4.0 * s + 4.0 * s * s * (X * X + Y * Y)) * g
        return utt - lap

    return ManufacturedSolution(name="gaussian", u=u, dudt=dudt,
                                grad_u=grad_u, grad_dudt=grad_dudt, f=f)


def standing_mode(kx=1, ky=1) -> ManufacturedSolution:
    """Separable eigenmode u = cos(omega t) sin(kx pi x) sin(ky pi y), f = 0."""
    omega = np.pi * np.hypot(kx, ky)

    def shape(x, y):
        return np.sin(kx * np.pi * x) * np.sin(ky * np.pi * y)

    def grad_shape(x, y):
        gx = kx * np.pi * np.cos(kx * np.pi * x) * np.sin(ky * np.pi * y)
        gy = ky * np.pi * np.sin(kx * np.pi * x) * np.cos(ky * np.pi * y)
        return gx, gy

    def u(t, x, y):
        return np.cos(omega * t) * shape(x, y)

    def dudt(t, x, y):
        return -omega * np.sin(omega * t) * shape(x, y)

    def grad_u(t, x, y):
        gx, gy = grad_shape(x, y)
        ct = np.cos(omega * t)
        return ct * gx, ct * gy

    def grad_dudt(t, x, y):
        gx, gy = grad_shape(x, y)
        st = -omega * np.sin(omega * t)
        return st * gx, st * gy

    def f(t, x, y):
        return np.zeros(np.broadcast(np.asarray(x), np.asarray(y)).shape)

    return ManufacturedSolution(name=f"mode({kx},{ky})", u=u, dudt=dudt,
                                grad_u=grad_u, grad_dudt=grad_dudt, f=f)


def get_solution(name: str) -> ManufacturedSolution:
    if name == "gaussian":
        return gaussian_pulse()
    if name.startswith("mode"):
        return standing_mode()
    raise ValueError(f"unknown manufactured solution {name!r}")
