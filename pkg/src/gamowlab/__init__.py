"""gamowlab: a desk-scale numerical laboratory for intrinsically
irreversible quantum dynamics.

Subsystems
----------
momentum    two-sheeted energy surface uniformized by E = w**2
rational    exact rational-function algebra (residues, Laurent data)
smatrix     unimodular Blaschke S-matrix models with order-N poles
waves       Hardy-class state/observable surrogates and pairings
dynamics    Gamow kets, Jordan-block semigroup evolution
expansion   complex basis expansion: pole terms + second-sheet background
kaon        two-resonance exact vs effective-theory comparison
symmetry    the four parity/time-reversal extension cases
cli         batch scenarios, artifacts, and the invariant selftest

Everything is pure and deterministic: immutable value types, fixed
quadrature policies, no randomness anywhere in the pipeline.
"""

from .dynamics import (GamowKet, JordanEvolutionMatrix, Kind,
                       evolve_gamow_pairing, evolve_growing_pairing,
                       hamiltonian_action, jordan_evolution_matrix,
                       survival_probability)
from .errors import (AmbiguityError, DeformationError, GamowlabError,
                     NumericsError, PoleProximityError, SemigroupDomainError,
                     ValidationError)
from .expansion import (AmplitudeSeries, ExpansionResult, PoleTerm,
                        amplitude_direct, amplitude_expanded,
                        amplitude_series, background_amplitude,
                        breit_wigner_profile, complex_expand,
                        dirac_reconstruct, spectral_density)
from .kaon import (TwoLevelConfig, effective_amplitude, exact_amplitude,
                   late_time_ratio, regeneration_deficit)
from .momentum import (DeformedPath, MomentumPoint, Sheet, SheetedEnergy,
                       energy_of, momentum_of, sample_path)
from .rational import (RationalFunction, differentiate, evaluate,
                       laurent_coefficient, poles_of, residue)
from .smatrix import (ResonancePole, SMatrixModel, laurent_at_pole,
                      phase_shift, s_value)
from .symmetry import (AntiunitaryOperator, ExtensionCase, ReciprocityReport,
                       RelationReport, SpinRep, TaggedWave, build_extension,
                       c_matrix, check_relations, reciprocity_check,
                       spin_rep, transform_gamow, transform_ket)
from .waves import (ObservableWave, StateWave, energy_functional,
                    gamow_functional, pair, reflect)

__version__ = "0.1.0"

__all__ = [
    "AmbiguityError", "AmplitudeSeries", "AntiunitaryOperator",
    "DeformationError", "DeformedPath", "ExpansionResult", "ExtensionCase",
    "GamowKet", "GamowlabError", "JordanEvolutionMatrix", "Kind",
    "MomentumPoint", "NumericsError", "ObservableWave", "PoleProximityError",
    "PoleTerm", "RationalFunction", "ReciprocityReport", "RelationReport",
    "ResonancePole", "SMatrixModel", "SemigroupDomainError", "Sheet",
    "SheetedEnergy", "SpinRep", "StateWave", "TaggedWave", "TwoLevelConfig",
    "ValidationError", "amplitude_direct", "amplitude_expanded",
    "amplitude_series", "background_amplitude", "breit_wigner_profile",
    "build_extension", "c_matrix", "check_relations", "complex_expand",
    "differentiate", "dirac_reconstruct", "effective_amplitude",
    "energy_functional", "energy_of", "evaluate", "evolve_gamow_pairing",
    "evolve_growing_pairing", "exact_amplitude", "gamow_functional",
    "hamiltonian_action", "jordan_evolution_matrix", "late_time_ratio",
    "laurent_at_pole", "laurent_coefficient", "momentum_of", "pair",
    "phase_shift", "poles_of", "reciprocity_check", "reflect",
    "regeneration_deficit", "residue", "s_value", "sample_path",
    "spectral_density", "spin_rep", "survival_probability",
    "transform_gamow", "transform_ket",
]
