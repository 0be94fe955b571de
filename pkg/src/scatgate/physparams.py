"""SI-to-natural-unit bridge for waveguide atom collisions.

Tight transverse confinement of atoms with 3D s-wave scattering length a3d
produces an effective 1D contact coupling.  The standard confinement-induced
form is

    g1d = 2 hbar omega_perp a3d / (1 - C a3d / a_perp),
    a_perp = sqrt(2 hbar / (m omega_perp)),  C = 1.0326,

and the wavenumber-valued coupling entering the natural-unit (hbar = 2m = 1)
gate modules is c = m g1d / hbar^2.  Per-atom momenta convert as p = m v /
hbar.  Both quantities are wavenumbers (1/m) and feed CollisionConfig
directly (1 m^-1 corresponds to 1 natural unit).

The transverse-frequency convention (angular versus ordinary) is ambiguous
in typical lab shorthand; reports therefore carry both interpretations, and
the corrected and uncorrected couplings.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

HBAR_SI = 1.054_571_817e-34  # J s

#: Confinement-induced-resonance correction constant.
CIR_CONSTANT = 1.0326

#: Guard: this close to the confinement-induced resonance the perturbative
#: coupling formula is meaningless.
_CIR_DENOMINATOR_MIN = 0.1

_CONFIG_KEYS = ("mass_kg", "a3d_m", "omega_perp_rad_s", "velocity_m_s")


@dataclass(frozen=True)
class PhysicalSetup:
    """Laboratory parameters: mass, 3D scattering length, confinement, speed."""

    mass: float           # kg
    a3d: float            # m
    omega_perp: float     # rad/s
    velocity: float       # m/s

    def __post_init__(self) -> None:
        for name in ("mass", "a3d", "omega_perp", "velocity"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite")
        ratio = self.a3d / transverse_length(self)
        if ratio >= 0.5:
            warnings.warn(
                f"a3d / a_perp = {ratio:.2f} >= 0.5: outside the perturbative "
                "confinement regime; the coupling formula is unreliable",
                stacklevel=2)


def transverse_length(s: PhysicalSetup, hbar: float = HBAR_SI) -> float:
    """Transverse oscillator length a_perp = sqrt(2 hbar / (m omega_perp))."""
    return math.sqrt(2.0 * hbar / (s.mass * s.omega_perp))


def coupling_from_setup(s: PhysicalSetup, hbar: float = HBAR_SI,
                        cir_correction: bool = True) -> float:
    """1D coupling c in 1/m, optionally without the CIR correction factor."""
    a_perp = transverse_length(s, hbar)
    denom = 1.0 - CIR_CONSTANT * s.a3d / a_perp if cir_correction else 1.0
    if denom <= _CIR_DENOMINATOR_MIN:
        raise ValueError(
            f"confinement-induced resonance proximity: 1 - C a3d/a_perp = {denom:.3f}")
    g1d = 2.0 * hbar * s.omega_perp * s.a3d / denom
    return s.mass * g1d / hbar**2


def wavenumber_from_velocity(s: PhysicalSetup, hbar: float = HBAR_SI) -> float:
    """Per-atom wavenumber p = m v / hbar in 1/m; p_a + p_b = 2p for symmetric launches."""
    return s.mass * s.velocity / hbar


def optimal_velocity(s: PhysicalSetup, hbar: float = HBAR_SI) -> float:
    """Symmetric per-atom speed with 2 m v / hbar equal to the coupling."""
    return hbar * coupling_from_setup(s, hbar) / (2.0 * s.mass)


def load_setup(path: str | Path) -> PhysicalSetup:
    """Read a plain key=value config (keys: mass_kg, a3d_m, omega_perp_rad_s,
    velocity_m_s; '#' starts a comment)."""
    values: dict[str, float] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = float(val.strip())
        except ValueError:
            raise ValueError(f"{path}:{lineno}: key {key!r} has non-numeric "
                             f"value {val.strip()!r}") from None
    missing = [k for k in _CONFIG_KEYS if k not in values]
    if missing:
        raise ValueError(f"{path}: missing keys {missing}")
    return PhysicalSetup(mass=values["mass_kg"], a3d=values["a3d_m"],
                         omega_perp=values["omega_perp_rad_s"],
                         velocity=values["velocity_m_s"])


def bundled_rb87_path() -> Path:
    """Path of the shipped Rb-87 example configuration."""
    return Path(str(resources.files("scatgate").joinpath("data/rb87.cfg")))


def setup_report(s: PhysicalSetup, hbar: float = HBAR_SI) -> dict:
    """Parameter estimates under both frequency conventions and both coupling forms."""
    def block(omega: float) -> dict:
        bs = PhysicalSetup(mass=s.mass, a3d=s.a3d, omega_perp=omega,
                           velocity=s.velocity)
        c = coupling_from_setup(bs, hbar)
        p = wavenumber_from_velocity(bs, hbar)
        return {
            "omega_perp_rad_s": omega,
            "transverse_length_m": transverse_length(bs, hbar),
            "coupling_per_m": c,
            "coupling_uncorrected_per_m": coupling_from_setup(bs, hbar, cir_correction=False),
            "per_atom_wavenumber_per_m": p,
            "total_momentum_over_coupling": 2.0 * p / c,
            "optimal_velocity_m_s": optimal_velocity(bs, hbar),
        }

    return {
        "input": {
            "mass_kg": s.mass,
            "a3d_m": s.a3d,
            "omega_perp_rad_s": s.omega_perp,
            "velocity_m_s": s.velocity,
        },
        "omega_as_given": block(s.omega_perp),
        "omega_divided_by_2pi": block(s.omega_perp / (2.0 * math.pi)),
    }
