"""Richardson extrapolation of scattering amplitudes to zero barrier width.

Amplitudes are extrapolated in polar form: |t|^2, arg t, |r|^2 and arg r are
four separate polynomial extrapolations in the width.  Because polynomial
extrapolation is linear and reproduces constants, the per-width unitarity
|t|^2 + |r|^2 = 1 survives to the extrapolated pair exactly, which a
cartesian (Re/Im) extrapolation would not guarantee.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .propagation import ScatteringAmplitudes


@dataclass(frozen=True)
class ExtrapolationResult:
    """Width-zero amplitudes plus the extrapolation residual estimate."""

    amplitudes: ScatteringAmplitudes
    residual: float
    monotone: bool


def neville_at_zero(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    """Polynomial extrapolation of ys(xs) to x = 0.

    Returns (value, residual) where the residual is the difference between
    the last two diagonal entries of the Neville tableau.
    """
    xs = np.asarray(xs, dtype=float)
    cur = np.asarray(ys, dtype=float).copy()
    m = len(xs)
    diag = [cur[0]]
    for j in range(1, m):
        nxt = np.empty(m - j)
        for i in range(m - j):
            nxt[i] = (xs[i] * cur[i + 1] - xs[i + j] * cur[i]) / (xs[i] - xs[i + j])
        cur = nxt
        diag.append(cur[0])
    residual = abs(diag[-1] - diag[-2]) if m > 1 else math.inf
    return float(diag[-1]), float(residual)


def _check_widths(widths: np.ndarray) -> None:
    if len(widths) < 3:
        raise ValueError("need at least 3 widths for extrapolation")
    if any(b >= a for a, b in zip(widths, widths[1:])):
        raise ValueError("widths must be strictly decreasing")
    ratios = widths[:-1] / widths[1:]
    if np.max(ratios) / np.min(ratios) > 1.5:
        raise ValueError("widths should decrease geometrically (ratio drift > 1.5x)")


def width_extrapolate(results: list[tuple[float, ScatteringAmplitudes]]) -> ExtrapolationResult:
    """Extrapolate a decreasing-width sequence of amplitudes to width zero."""
    widths = np.asarray([w for w, _ in results], dtype=float)
    _check_widths(widths)
    amps = [a for _, a in results]
    ks = {a.k for a in amps}
    if max(ks) - min(ks) > 1e-12 * max(ks):
        raise ValueError("amplitudes were extracted at different momenta")

    tmag2 = [abs(a.t)**2 for a in amps]
    rmag2 = [abs(a.r)**2 for a in amps]
    targ = np.unwrap([np.angle(a.t) for a in amps])
    rarg = np.unwrap([np.angle(a.r) for a in amps])

    vals = {}
    residual = 0.0
    monotone = True
    for name, ys in (("tmag2", tmag2), ("targ", targ), ("rmag2", rmag2), ("rarg", rarg)):
        v, res = neville_at_zero(widths, ys)
        vals[name] = v
        residual = max(residual, res)
        # convergence check: successive approach toward the extrapolant
        dist = np.abs(np.asarray(ys) - v)
        if not all(b <= a * 1.5 for a, b in zip(dist, dist[1:])):
            monotone = False
    if not monotone:
        warnings.warn("width sequence does not converge monotonically; "
                      "extrapolation residual may be unreliable", stacklevel=2)

    t = math.sqrt(max(vals["tmag2"], 0.0)) * complex(np.exp(1j * vals["targ"]))
    r = math.sqrt(max(vals["rmag2"], 0.0)) * complex(np.exp(1j * vals["rarg"]))
    extrapolated = ScatteringAmplitudes(t=t, r=r, k=amps[0].k)
    return ExtrapolationResult(amplitudes=extrapolated, residual=residual,
                               monotone=monotone)


def extrapolate_scalar(values: list[tuple[float, float]]) -> tuple[float, float]:
    """Richardson extrapolation of a scalar quantity (e.g. odd-channel deviation)."""
    widths = np.asarray([w for w, _ in values], dtype=float)
    _check_widths(widths)
    return neville_at_zero(widths, np.asarray([v for _, v in values]))
