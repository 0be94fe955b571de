"""Gate-quality metrics: concurrence, Makhlin invariants, entangling power.

Entangling power is defined here as the mean *squared* concurrence of the
gate output over Haar-random product inputs, Monte-Carlo estimated with a
fixed seed (one common convention among several; the analytic value for CZ
under this convention is 4/9).  Local equivalence of two gates is decided by
comparing their Makhlin invariant pairs (g1, g2), which are unchanged under
single-qubit operations on either side and under global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gates import CZ, SWAP, TwoQubitGate, TwoQubitState, boson_gate, fermion_gate, CollisionConfig

#: Magic (Bell) basis change; columns are the magic-basis vectors.
MAGIC = np.array(
    [[1, 0, 0, 1j],
     [0, 1j, 1, 0],
     [0, 1j, -1, 0],
     [1, 0, 0, -1j]], dtype=complex) / np.sqrt(2.0)

#: Default tolerance for local-equivalence decisions.
LOCAL_EQUIVALENCE_TOL = 1e-8

#: Norm guard for concurrence input.
_CONCURRENCE_NORM_TOL = 1e-9


@dataclass(frozen=True)
class MakhlinInvariants:
    """Local invariants (g1 complex, g2 real) of a two-qubit gate."""

    g1: complex
    g2: float


@dataclass(frozen=True)
class SweepResult:
    """One row of an optimality sweep over the ratio (p_a + p_b)/c."""

    ratio: float
    entangling_power: float
    stderr: float
    max_concurrence: float


def concurrence(state: TwoQubitState | np.ndarray) -> float:
    """Pure-state concurrence C = 2 |a00 a11 - a01 a10| in [0, 1]."""
    amp = state.amplitudes if isinstance(state, TwoQubitState) else np.asarray(state, dtype=complex)
    if amp.shape != (4,):
        raise ValueError("state must be a 4-vector")
    norm = np.linalg.norm(amp)
    if abs(norm - 1.0) > _CONCURRENCE_NORM_TOL:
        raise ValueError(f"state not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    return float(2.0 * abs(amp[0] * amp[3] - amp[1] * amp[2]))


def makhlin_invariants(gate: TwoQubitGate | np.ndarray) -> MakhlinInvariants:
    """Compute (g1, g2) in the magic basis.

    With M = Q+ U Q and m = M^T M:  g1 = tr(m)^2 / (16 det M) and
    g2 = (tr(m)^2 - tr(m^2)) / (4 det M).  Canonical values: identity ->
    (1, 3), CZ -> (0, 1), SWAP -> (-1, -3).
    """
    u = gate.matrix if isinstance(gate, TwoQubitGate) else np.asarray(gate, dtype=complex)
    if u.shape != (4, 4):
        raise ValueError("gate must be 4x4")
    defect = np.max(np.abs(u.conj().T @ u - np.eye(4)))
    if defect > 1e-9:
        raise ValueError(f"gate not unitary: max |U+U - I| = {defect:.3e}")
    m_magic = MAGIC.conj().T @ u @ MAGIC
    det = np.linalg.det(m_magic)
    m = m_magic.T @ m_magic
    tr2 = np.trace(m) ** 2
    g1 = tr2 / (16.0 * det)
    g2 = (tr2 - np.trace(m @ m)) / (4.0 * det)
    return MakhlinInvariants(g1=complex(g1), g2=float(g2.real))


def locally_equivalent(gate_x: TwoQubitGate, gate_y: TwoQubitGate,
                       tol: float = LOCAL_EQUIVALENCE_TOL) -> bool:
    """True iff the Makhlin invariant pairs agree within ``tol`` per component."""
    a = makhlin_invariants(gate_x)
    b = makhlin_invariants(gate_y)
    return abs(a.g1 - b.g1) <= tol and abs(a.g2 - b.g2) <= tol


def _haar_product_states(rng: np.random.Generator, n: int) -> np.ndarray:
    """(n, 4) array of Haar-random product states |a> x |b>."""
    z = rng.standard_normal((2, n, 2)) + 1j * rng.standard_normal((2, n, 2))
    z /= np.linalg.norm(z, axis=2, keepdims=True)
    a, b = z
    return np.einsum("ni,nj->nij", a, b).reshape(n, 4)


def entangling_power(gate: TwoQubitGate, samples: int = 20000,
                     seed: int = 0) -> tuple[float, float]:
    """Mean squared output concurrence over Haar product inputs.

    Returns (estimate, standard error); deterministic for a given seed.
    """
    if samples < 1000:
        raise ValueError("samples must be >= 1000 for a usable estimate")
    rng = np.random.default_rng(seed)
    states = _haar_product_states(rng, samples)
    out = states @ gate.matrix.T
    c2 = 4.0 * np.abs(out[:, 0] * out[:, 3] - out[:, 1] * out[:, 2]) ** 2
    mean = float(np.mean(c2))
    stderr = float(np.std(c2) / math.sqrt(samples))
    return mean, stderr


def _gate_for_family(family: str, ratio: float) -> TwoQubitGate:
    if ratio <= 0 or not math.isfinite(ratio):
        raise ValueError("ratio must be positive and finite")
    cfg = CollisionConfig(p_a=ratio / 2, p_b=ratio / 2, c=1.0)
    if family == "boson":
        return boson_gate(cfg)
    if family == "fermion":
        return fermion_gate(cfg)
    raise ValueError(f"unknown gate family {family!r} (expected 'boson' or 'fermion')")


def max_basis_concurrence(gate: TwoQubitGate) -> float:
    """Max output concurrence over the four computational basis inputs."""
    return max(concurrence(gate.matrix[:, i] / np.linalg.norm(gate.matrix[:, i]))
               for i in range(4))


def optimality_sweep(ratios: list[float], samples: int, seed: int,
                     family: str) -> list[SweepResult]:
    """Entangling power and max basis-input concurrence per ratio.

    ``ratios`` must be positive and strictly increasing.  Each point uses an
    independent deterministic substream of ``seed`` so results do not depend
    on evaluation order.
    """
    if len(ratios) == 0:
        raise ValueError("ratio list must not be empty")
    if any(r <= 0 for r in ratios):
        raise ValueError("ratios must be positive")
    if any(b <= a for a, b in zip(ratios, ratios[1:])):
        raise ValueError("ratios must be strictly increasing")
    rows = []
    for i, ratio in enumerate(ratios):
        gate = _gate_for_family(family, ratio)
        ep, se = entangling_power(gate, samples=samples, seed=_point_seed(seed, i))
        rows.append(SweepResult(ratio=ratio, entangling_power=ep, stderr=se,
                                max_concurrence=max_basis_concurrence(gate)))
    return rows


def _point_seed(seed: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=seed, spawn_key=(index,))


def sweep_to_csv(rows: list[SweepResult]) -> str:
    """Serialize sweep rows; fixed column order, 17 significant digits, LF."""
    lines = ["ratio,entangling_power,stderr,max_concurrence"]
    for r in rows:
        lines.append(",".join(f"{v:.17g}" for v in
                              (r.ratio, r.entangling_power, r.stderr, r.max_concurrence)))
    return "\n".join(lines) + "\n"
