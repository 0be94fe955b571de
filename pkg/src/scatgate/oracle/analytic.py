"""Closed-form scattering amplitudes for the relative-coordinate problem.

Reduction of the two-body problem to one coordinate: with x = x1 - x2 and
X = (x1 + x2)/2 the kinetic term splits as

    -d2/dx1^2 - d2/dx2^2  =  -(1/2) d2/dX^2 - 2 d2/dx^2,

so H = [-(1/2) d2/dX^2] + [-2 d2/dx^2 + 2c delta(x)].  The center-of-mass
factor is a free plane wave contributing only a global phase and is dropped.
Dividing the relative part by 2 gives the unit-kinetic problem

    -psi'' + c delta(x) psi = k^2 psi,       k = (p2 - p1)/2,

whose delta term imposes the jump condition psi'(0+) - psi'(0-) = c psi(0).
Plane-wave matching then yields t = 2ik/(2ik - c), r = c/(2ik - c), and the
even-channel combination t + r = (2ik + c)/(2ik - c) equals the two-body
exchange phase (p2 - p1 - ic)/(p2 - p1 + ic) evaluated at p2 - p1 = 2k.  Odd
(antisymmetric) relative waves vanish at contact and do not scatter.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RelativeProblem:
    """Unit-kinetic one-body reduction of the two-body contact problem.

    ``jump_coefficient`` multiplies psi(0) in the derivative jump condition;
    it equals the two-body coupling c.  ``kinetic_coefficient`` is 1 after
    normalizing the relative Hamiltonian by 2 (energies are halved
    accordingly: the plane wave at relative momentum k has energy k^2).
    """

    coupling: float
    kinetic_coefficient: float
    jump_coefficient: float

    def relative_momentum(self, p2: float, p1: float) -> float:
        return 0.5 * (p2 - p1)


def reduce_to_relative(c: float) -> RelativeProblem:
    """Parameters of the relative-coordinate problem for coupling ``c > 0``."""
    if not c > 0:
        raise ValueError("c must be positive")
    return RelativeProblem(coupling=c, kinetic_coefficient=1.0, jump_coefficient=c)


def delta_amplitudes(k: float, c: float) -> tuple[complex, complex]:
    """Exact (t, r) for -psi'' + c delta(x) psi = k^2 psi at momentum k > 0."""
    if k <= 0:
        raise ValueError("k must be positive")
    if c < 0:
        raise ValueError("c must be >= 0")
    denom = 2j * k - c
    return 2j * k / denom, c / denom


def even_phase_analytic(k: float, c: float) -> float:
    """arg(t + r) = arg of the exchange phase at p2 - p1 = 2k, in (-pi, pi]."""
    t, r = delta_amplitudes(k, c)
    return cmath.phase(t + r)


def square_barrier_amplitudes(k: float, strength: float, width: float) -> tuple[complex, complex]:
    """Exact (t, r) for a square barrier of area ``strength`` centered at x = 0.

    Serves as the finite-width reference for the propagation pipeline; its
    width -> 0 limit reproduces :func:`delta_amplitudes`.
    """
    if k <= 0 or width <= 0 or strength <= 0:
        raise ValueError("k, strength, width must be positive")
    v0 = strength / width
    q = cmath.sqrt(complex(k * k - v0))
    a, b = -width / 2.0, width / 2.0
    # psi = e^{ikx} + r e^{-ikx}  |  A e^{iqx} + B e^{-iqx}  |  t e^{ikx}
    mat = np.array([
        [-cmath.exp(-1j * k * a), cmath.exp(1j * q * a), cmath.exp(-1j * q * a), 0.0],
        [1j * k * cmath.exp(-1j * k * a), 1j * q * cmath.exp(1j * q * a),
         -1j * q * cmath.exp(-1j * q * a), 0.0],
        [0.0, cmath.exp(1j * q * b), cmath.exp(-1j * q * b), -cmath.exp(1j * k * b)],
        [0.0, 1j * q * cmath.exp(1j * q * b), -1j * q * cmath.exp(-1j * q * b),
         -1j * k * cmath.exp(1j * k * b)],
    ], dtype=complex)
    rhs = np.array([cmath.exp(1j * k * a), 1j * k * cmath.exp(1j * k * a), 0.0, 0.0],
                   dtype=complex)
    r, _, _, t = np.linalg.solve(mat, rhs)
    return complex(t), complex(r)


def formal_phase_odd_in_coupling(k: float, c: float) -> bool:
    """Check arg S(2k, -c) == -arg S(2k, c) at the formula level (c may be any sign)."""
    if k <= 0:
        raise ValueError("k must be positive")
    plus = cmath.phase((2 * k - 1j * c) / (2 * k + 1j * c))
    minus = cmath.phase((2 * k + 1j * c) / (2 * k - 1j * c))
    return math.isclose(plus, -minus, abs_tol=1e-15)
