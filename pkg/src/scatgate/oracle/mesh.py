"""Mirror-symmetric spatial meshes for the propagation oracle.

A delta-limit barrier (width << 1/k0) cannot be resolved by a uniform grid
within the node budget, so the graded mesh concentrates points around the
barrier: a uniform fine core, a cosine-blend transition, and uniform coarse
wings that carry the traveling packets.  The mesh is cell-centered and
exactly mirror symmetric about x = 0 (no node at the origin), which makes
parity exact and lets the mirrored free twin serve as the reflected-wave
phase reference.

The finite-volume weights define the discrete inner product under which the
kinetic operator is Hermitian, so Crank-Nicolson conserves the weighted norm
to solver roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Mesh:
    """Node positions, gaps, quadrature weights, and wing metadata."""

    x: np.ndarray          # node positions, ascending, mirror symmetric
    gaps: np.ndarray       # x[j+1] - x[j]
    weights: np.ndarray    # finite-volume cell sizes (quadrature weights)
    dx_coarse: float       # wing spacing
    dx_fine: float         # core spacing
    core_halfwidth: float  # extent of the uniform fine core
    transition_length: float

    def __post_init__(self) -> None:
        for name in ("x", "gaps", "weights"):
            arr = getattr(self, name)
            arr.setflags(write=False)

    @property
    def n_points(self) -> int:
        return len(self.x)

    def effective_wavenumber(self, k0: float) -> float:
        """Momentum actually probed by a packet labeled k0 on the coarse wings.

        The wings carry the packet with the second-order finite-difference
        dispersion E(k) = (2 - 2 cos(k dx)) / dx^2; scattering conserves
        energy, so the barrier region (where the local dispersion is
        effectively continuous) is probed at sqrt(E(k0)).
        """
        dx = self.dx_coarse
        return float(np.sqrt(2.0 - 2.0 * np.cos(k0 * dx)) / dx)

    def mirror(self, values: np.ndarray) -> np.ndarray:
        """values(x) -> values(-x); exact because the mesh is symmetric."""
        return values[::-1]


def _half_positions(dx_fine: float, core: float, ell: float, dx_coarse: float,
                    half_extent: float, cap: int | None = None) -> np.ndarray:
    xs = []
    x = 0.5 * dx_fine
    while x < half_extent:
        xs.append(x)
        if cap is not None and len(xs) > cap:
            break
        if x < core:
            s = dx_fine
        elif x < core + ell:
            u = (x - core) / ell
            s = dx_fine + (dx_coarse - dx_fine) * 0.5 * (1.0 - np.cos(np.pi * u))
        else:
            s = dx_coarse
        x += s
    return np.asarray(xs)


def build_graded_mesh(n_points: int, half_extent: float, dx_fine: float,
                      core_halfwidth: float, transition_length: float = 14.0) -> Mesh:
    """Build a symmetric graded mesh with exactly ``n_points`` nodes.

    The coarse wing spacing is solved by bisection so the node budget fills
    the domain [-half_extent, half_extent].
    """
    if n_points % 2 != 0:
        raise ValueError("n_points must be even (mirror-symmetric, no center node)")
    half = n_points // 2
    if core_halfwidth + transition_length > 0.5 * half_extent:
        raise ValueError("core plus transition does not fit in the domain")

    def half_count(dx_c: float) -> int:
        return len(_half_positions(dx_fine, core_halfwidth, transition_length,
                                   dx_c, half_extent, cap=2 * half))

    lo, hi = dx_fine, half_extent
    if half_count(hi) > half:
        raise ValueError("node budget too large for this domain")
    if half_count(lo) < half:
        raise ValueError("node budget too small: cannot resolve the core")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if half_count(mid) > half:
            lo = mid
        else:
            hi = mid
    dx_coarse = hi
    xs = _half_positions(dx_fine, core_halfwidth, transition_length, dx_coarse, half_extent)
    while len(xs) < half:
        xs = np.append(xs, xs[-1] + dx_coarse)
    xs = xs[:half]
    return _assemble(xs, dx_coarse, dx_fine, core_halfwidth, transition_length)


def build_uniform_mesh(n_points: int, half_extent: float) -> Mesh:
    """Uniform symmetric mesh (used when no sub-grid barrier must be resolved)."""
    dx = 2.0 * half_extent / n_points
    half = n_points // 2
    xs = (np.arange(half) + 0.5) * dx
    return _assemble(xs, dx, dx, half_extent, 0.0)


def _assemble(half_xs: np.ndarray, dx_coarse: float, dx_fine: float,
              core: float, ell: float) -> Mesh:
    x = np.concatenate([-half_xs[::-1], half_xs])
    gaps = np.diff(x)
    w = np.empty_like(x)
    w[1:-1] = 0.5 * (gaps[:-1] + gaps[1:])
    # end cells close with one coarse gap toward the hard wall
    w[0] = 0.5 * (gaps[0] + dx_coarse)
    w[-1] = 0.5 * (gaps[-1] + dx_coarse)
    return Mesh(x=x, gaps=gaps, weights=w, dx_coarse=float(dx_coarse),
                dx_fine=float(dx_fine), core_halfwidth=float(core),
                transition_length=float(ell))
