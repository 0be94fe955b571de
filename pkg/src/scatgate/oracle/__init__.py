"""Independent numerical verification of the two-body exchange phase.

The package propagates Gaussian wavepackets in the relative coordinate
against finite-width regularizations of the contact barrier, extrapolates
the extracted transmission/reflection amplitudes to zero width, and compares
the even-channel phase arg(t + r) with the closed-form exchange phase.  It
also quantifies how the spin gates degrade under a spread of the total
incoming momentum.
"""

from .analytic import (
    RelativeProblem,
    delta_amplitudes,
    even_phase_analytic,
    reduce_to_relative,
    square_barrier_amplitudes,
)
from .comparison import (
    OddChannelStudy,
    OracleRow,
    comparison_table,
    default_widths,
    odd_channel_study,
    preset,
    rows_to_csv,
)
from .extrapolation import ExtrapolationResult, extrapolate_scalar, width_extrapolate
from .mesh import Mesh, build_graded_mesh, build_uniform_mesh
from .propagation import (
    BarrierSpec,
    GridSpec,
    NumericalQualityError,
    OddChannelResult,
    PropagationResult,
    ScatteringAmplitudes,
    WavepacketSpec,
    dump_wavefunction,
    even_channel_phase,
    extract_amplitudes,
    load_wavefunction,
    mean_momentum,
    mesh_for_width_sequence,
    odd_channel_null,
    propagate,
)
from .spread import GATE_FAMILIES, SpreadFidelity, spread_averaged_gate

__all__ = [
    "BarrierSpec",
    "ExtrapolationResult",
    "GATE_FAMILIES",
    "GridSpec",
    "Mesh",
    "NumericalQualityError",
    "OddChannelResult",
    "OddChannelStudy",
    "OracleRow",
    "PropagationResult",
    "RelativeProblem",
    "ScatteringAmplitudes",
    "SpreadFidelity",
    "WavepacketSpec",
    "build_graded_mesh",
    "build_uniform_mesh",
    "comparison_table",
    "default_widths",
    "delta_amplitudes",
    "dump_wavefunction",
    "even_channel_phase",
    "even_phase_analytic",
    "extract_amplitudes",
    "extrapolate_scalar",
    "load_wavefunction",
    "mean_momentum",
    "mesh_for_width_sequence",
    "odd_channel_null",
    "odd_channel_study",
    "preset",
    "propagate",
    "reduce_to_relative",
    "rows_to_csv",
    "spread_averaged_gate",
    "square_barrier_amplitudes",
    "width_extrapolate",
]
