"""Two-qubit entangling gates from 1D scattering of counter-propagating qubits.

Natural units hbar = 2m = 1 throughout the gate and oracle modules: momenta
and the contact coupling are wavenumbers.  :mod:`scatgate.physparams` converts
laboratory SI parameters into those wavenumbers.
"""

__version__ = "0.1.0"

from .entanglement import (
    MakhlinInvariants,
    SweepResult,
    concurrence,
    entangling_power,
    locally_equivalent,
    makhlin_invariants,
    max_basis_concurrence,
    optimality_sweep,
    sweep_to_csv,
)
from .gates import (
    BASIS_ORDER,
    CZ,
    SWAP,
    CollisionConfig,
    SpinlessEncoding,
    TwoQubitGate,
    TwoQubitState,
    apply,
    basis_state,
    boson_gate,
    boson_gate_hardcore,
    fermion_gate,
    fermion_gate_hardcore,
    gate_from_json,
    gate_to_json,
    lieb_liniger_phase,
    spinless_gate,
    spinless_gate_idealized,
)
from .physparams import (
    PhysicalSetup,
    bundled_rb87_path,
    coupling_from_setup,
    load_setup,
    optimal_velocity,
    setup_report,
    wavenumber_from_velocity,
)

__all__ = [
    "BASIS_ORDER",
    "CZ",
    "CollisionConfig",
    "MakhlinInvariants",
    "PhysicalSetup",
    "SWAP",
    "SpinlessEncoding",
    "SweepResult",
    "TwoQubitGate",
    "TwoQubitState",
    "apply",
    "basis_state",
    "boson_gate",
    "boson_gate_hardcore",
    "bundled_rb87_path",
    "concurrence",
    "coupling_from_setup",
    "entangling_power",
    "fermion_gate",
    "fermion_gate_hardcore",
    "gate_from_json",
    "gate_to_json",
    "lieb_liniger_phase",
    "load_setup",
    "locally_equivalent",
    "makhlin_invariants",
    "max_basis_concurrence",
    "optimal_velocity",
    "optimality_sweep",
    "setup_report",
    "spinless_gate",
    "spinless_gate_idealized",
    "sweep_to_csv",
    "wavenumber_from_velocity",
]
