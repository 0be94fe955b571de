"""Exact two-qubit gates from 1D two-body scattering with a contact interaction.

Conventions used throughout:

* Natural units hbar = 2m = 1, so that the two-body Hamiltonian reads
  ``H = -d2/dx1^2 - d2/dx2^2 + 2c delta(x1 - x2)``.  Momenta and the coupling
  ``c`` are both wavenumbers (1/length); SI conversion lives in
  :mod:`scatgate.physparams`.
* Qubit A is the right-mover (momentum +p_a), qubit B the left-mover
  (momentum -p_b).  In two-body scattering with momenta ``p2 > p1`` we have
  ``p2 = p_a`` and ``p1 = -p_b``, hence ``p2 - p1 = p_a + p_b > 0``.
* Two-qubit basis order is ``(00, 01, 10, 11)`` with slot A first.  For spin
  encodings ``0`` means up and ``1`` means down, i.e. ``(uu, ud, du, dd)``.

The elastic two-body S-matrix for spinless bosons is the pure phase
``(p2 - p1 - ic) / (p2 - p1 + ic)``; spin-carrying bosons and spin-1/2
fermions pick up the spin-SWAP structure implemented below.  The infinitely
repulsive (hard-core) limit is exposed as dedicated constructors instead of
accepting a float infinity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

#: Fixed computational basis ordering; slot A first, 0 = spin-up.
BASIS_ORDER = ("00", "01", "10", "11")

#: Entrywise unitarity tolerance for gate construction.
UNITARITY_TOL = 1e-12

#: Norm tolerance for state construction.
NORM_TOL = 1e-12

#: SWAP (permutation) operator on the internal states, Pi |uv> = |vu>.
SWAP = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]], dtype=complex)

#: Controlled-Z, the local-equivalence reference gate.
CZ = np.diag([1, 1, 1, -1]).astype(complex)


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class CollisionConfig:
    """Incoming collision parameters: momentum magnitudes and coupling.

    ``p_a`` and ``p_b`` are the magnitudes of the right-mover / left-mover
    momenta; both must be positive so the A/B labels are well defined.
    ``c >= 0`` is the contact coupling (0 only makes sense for limit checks).
    """

    p_a: float
    p_b: float
    c: float

    def __post_init__(self) -> None:
        if not _finite(self.p_a, self.p_b, self.c):
            raise ValueError("collision parameters must be finite")
        if self.p_a <= 0 or self.p_b <= 0:
            raise ValueError("p_a and p_b must be positive (counter-propagating qubits)")
        if self.c < 0:
            raise ValueError("coupling c must be >= 0 (repulsive or free)")

    @property
    def total_momentum(self) -> float:
        """Relative-momentum combination p2 - p1 = p_a + p_b entering the S-matrix."""
        return self.p_a + self.p_b


@dataclass(frozen=True)
class SpinlessEncoding:
    """Momentum-magnitude logical encoding for spinless bosons.

    Logical 0 rides on momentum magnitude ``lambda0``, logical 1 on
    ``lambda1``; the idealized gate assumes lambda0 << c << lambda1.
    """

    lambda0: float
    lambda1: float

    def __post_init__(self) -> None:
        if not _finite(self.lambda0, self.lambda1):
            raise ValueError("encoding momenta must be finite")
        if not 0 < self.lambda0 < self.lambda1:
            raise ValueError("require 0 < lambda0 < lambda1")

    def hierarchy_ratios(self, c: float) -> tuple[float, float]:
        """Diagnostics (lambda0/c, c/lambda1); both must be << 1 for the ideal gate."""
        if c <= 0:
            raise ValueError("c must be positive for hierarchy diagnostics")
        return self.lambda0 / c, c / self.lambda1


@dataclass(frozen=True)
class TwoQubitGate:
    """A 4x4 unitary in the fixed ``BASIS_ORDER`` basis."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError("gate matrix must be 4x4")
        defect = np.max(np.abs(m.conj().T @ m - np.eye(4)))
        if defect > UNITARITY_TOL:
            raise ValueError(f"gate not unitary: max |U+U - I| = {defect:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def unitarity_defect(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(4))))


@dataclass(frozen=True)
class TwoQubitState:
    """Normalized two-qubit pure state in the fixed basis."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.amplitudes, dtype=complex).reshape(4)
        norm = np.linalg.norm(a)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm deviates from 1 by {abs(norm - 1.0):.3e}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)


def basis_state(label: str) -> TwoQubitState:
    """Computational basis state by label, e.g. ``'01'`` for |0>_A |1>_B."""
    idx = BASIS_ORDER.index(label)
    amp = np.zeros(4, dtype=complex)
    amp[idx] = 1.0
    return TwoQubitState(amp)


def lieb_liniger_phase(p2: float, p1: float, c: float) -> complex:
    """Exchange phase (p2 - p1 - ic)/(p2 - p1 + ic) for two-body delta scattering.

    Valid for incident momenta ``p2 > p1`` and coupling ``c >= 0``; the result
    has unit modulus.  ``c = 0`` gives 1 (free bosons), ``c -> inf`` gives -1
    (hard-core limit).
    """
    if not _finite(p2, p1, c):
        raise ValueError("inputs must be finite")
    if p2 <= p1:
        raise ValueError("labeling convention requires p2 > p1")
    if c < 0:
        raise ValueError("coupling c must be >= 0")
    dp = p2 - p1
    if dp == 0.0 and c == 0.0:
        raise ValueError("p2 - p1 and c cannot both vanish")
    return (dp - 1j * c) / (dp + 1j * c)


def spinless_gate(enc: SpinlessEncoding, c: float) -> TwoQubitGate:
    """Exact diagonal gate for the momentum-magnitude encoding at coupling ``c``.

    Each logical pair (i, j) scatters with relative momentum lambda_i +
    lambda_j, so the diagonal holds the exact exchange phases rather than the
    idealized +-1 values; see :func:`spinless_gate_idealized` for the limit.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    lam = (enc.lambda0, enc.lambda1)
    phases = [lieb_liniger_phase(lam[i] + lam[j], 0.0, c)
              for i, j in ((0, 0), (0, 1), (1, 0), (1, 1))]
    return TwoQubitGate(np.diag(phases))


def spinless_gate_idealized() -> TwoQubitGate:
    """Limit lambda0/c -> 0, c/lambda1 -> 0 of :func:`spinless_gate`: diag(-1, 1, 1, 1)."""
    return TwoQubitGate(np.diag([-1.0, 1.0, 1.0, 1.0]).astype(complex))


def boson_gate(cfg: CollisionConfig) -> TwoQubitGate:
    """Spin-carrying boson gate (p - ic*SWAP) / (p + ic) with p = p_a + p_b.

    Spin-symmetric sectors (uu, dd) acquire the scalar phase (p - ic)/(p + ic);
    the antisymmetric (singlet) combination does not scatter at all.
    """
    p, c = cfg.total_momentum, cfg.c
    if p == 0.0 and c == 0.0:
        raise ValueError("p_a + p_b and c cannot both vanish")
    return TwoQubitGate((p * np.eye(4) - 1j * c * SWAP) / (p + 1j * c))


def fermion_gate(cfg: CollisionConfig) -> TwoQubitGate:
    """Spin-1/2 fermion gate (ic*SWAP + p) / (ic + p) with p = p_a + p_b.

    |uu> and |dd> are exact fixed points for all p, c; only the {ud, du}
    block mixes.
    """
    p, c = cfg.total_momentum, cfg.c
    if p == 0.0 and c == 0.0:
        raise ValueError("p_a + p_b and c cannot both vanish")
    return TwoQubitGate((1j * c * SWAP + p * np.eye(4)) / (1j * c + p))


def boson_gate_hardcore() -> TwoQubitGate:
    """c -> infinity limit of the boson gate: -SWAP."""
    return TwoQubitGate(-SWAP)


def fermion_gate_hardcore() -> TwoQubitGate:
    """c -> infinity limit of the fermion gate: SWAP."""
    return TwoQubitGate(SWAP)


def apply(gate: TwoQubitGate, state: TwoQubitState) -> TwoQubitState:
    """Apply the gate; no renormalization (unitarity must preserve the norm)."""
    return TwoQubitState(gate.matrix @ state.amplitudes)


def gate_to_json(gate: TwoQubitGate) -> str:
    """Serialize row-major with [re, im] entry pairs."""
    rows = [[[z.real, z.imag] for z in row] for row in gate.matrix]
    return json.dumps({"basis_order": list(BASIS_ORDER), "matrix": rows})


def gate_from_json(text: str) -> TwoQubitGate:
    data = json.loads(text)
    if tuple(data.get("basis_order", ())) != BASIS_ORDER:
        raise ValueError("unexpected basis order in serialized gate")
    m = np.array([[complex(re, im) for re, im in row] for row in data["matrix"]])
    return TwoQubitGate(m)
