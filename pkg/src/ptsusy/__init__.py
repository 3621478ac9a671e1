"""Spectra and supersymmetric structure of PT-symmetric solvable potentials.

Three complex one-dimensional potentials with exactly known double
towers of real bound-state energies, together with the first-order
(SUSY), order-two (PSUSY), and second-derivative (SSUSY) factorization
structures they carry, plus an independent finite-difference eigensolver
to check the closed forms numerically.
"""

from .errors import (
    DegenerateRecurrenceError,
    DomainError,
    LevelRangeError,
    ParameterError,
    PoleError,
    PtsusyError,
)
from .potentials import (
    Family,
    Level,
    OscillatorParams,
    Params,
    PoschlTellerParams,
    ScarfParams,
    bound_levels,
    eigenfunction,
    eigenfunction_derivative,
    energy,
    family_of,
    n_max,
    potential,
    pt_symmetry_deviation,
    tower_parameter,
    validate,
)
from .probes import GaussianProbe, default_probes
from .psusy import Choice, SpectrumEntry, Triplet, build_triplet, merged_spectrum
from .ssusy import SsusyMap, from_family
from .susy import SuperpotentialSpec, Variant, available_variants
from .numerics import (
    EigenResult,
    Grid,
    MatchReport,
    discretize_hamiltonian,
    eig_complex,
    match_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "PtsusyError",
    "ParameterError",
    "DomainError",
    "PoleError",
    "LevelRangeError",
    "DegenerateRecurrenceError",
    "Family",
    "Level",
    "Params",
    "OscillatorParams",
    "PoschlTellerParams",
    "ScarfParams",
    "family_of",
    "validate",
    "potential",
    "tower_parameter",
    "n_max",
    "energy",
    "bound_levels",
    "eigenfunction",
    "eigenfunction_derivative",
    "pt_symmetry_deviation",
    "GaussianProbe",
    "default_probes",
    "Variant",
    "SuperpotentialSpec",
    "available_variants",
    "Choice",
    "Triplet",
    "SpectrumEntry",
    "build_triplet",
    "merged_spectrum",
    "SsusyMap",
    "from_family",
    "Grid",
    "EigenResult",
    "MatchReport",
    "discretize_hamiltonian",
    "eig_complex",
    "match_spectrum",
    "__version__",
]
