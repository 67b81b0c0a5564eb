"""Additive partition entropies over exact interval partitions of [0,1).

The package models the nonatomic probability space ([0,1), Lebesgue) with
exact rational arithmetic, evaluates the classical additive partition
entropies (Shannon, Renyi, Hartley, min/max information, variance of the
information function, and information integrals of signed measures), and
implements the transport machinery that recovers, from any such entropy
given as a black box, the unique signed measure m with m(whole) = 0 whose
information integral accounts for everything beyond atom measures.
"""

__version__ = "0.1.0"

from .algebras import (
    Algebra,
    AtomProfile,
    coarsen,
    conditional_independent,
    distance_D,
    distance_d,
    independent_with_profile,
    same_atom_measures,
)
from .decomposition import (
    DecompositionReport,
    GridMeasure,
    StepDensity,
    decompose,
    extract_measure,
    grid_to_density,
    residual_eval,
    verify_atom_dependence,
)
from .entropies import (
    Combo,
    EntropySpec,
    Hartley,
    InfoIntegral,
    MaxInfo,
    MinInfo,
    Renyi,
    Shannon,
    Variance,
    additivity_residual,
    cgf,
    eval_entropy,
    information_function,
    shannon_plus_info,
)
from .measure_space import (
    MSet,
    SignedMeasure,
    SimpleFunction,
    as_rat,
    log2_rat,
    rat_str,
)
from .transport import (
    IncrementResult,
    SwapPair,
    block_pair_algebra,
    family_ratio,
    independent_block_pair_algebra,
    smaller_block_measure,
    transport,
    transport_increment,
    transport_rate,
)

__all__ = [
    "Algebra",
    "AtomProfile",
    "Combo",
    "DecompositionReport",
    "EntropySpec",
    "GridMeasure",
    "Hartley",
    "IncrementResult",
    "InfoIntegral",
    "MSet",
    "MaxInfo",
    "MinInfo",
    "Renyi",
    "Shannon",
    "SignedMeasure",
    "SimpleFunction",
    "StepDensity",
    "SwapPair",
    "Variance",
    "additivity_residual",
    "as_rat",
    "block_pair_algebra",
    "cgf",
    "coarsen",
    "conditional_independent",
    "decompose",
    "distance_D",
    "distance_d",
    "eval_entropy",
    "extract_measure",
    "family_ratio",
    "grid_to_density",
    "independent_block_pair_algebra",
    "independent_with_profile",
    "information_function",
    "log2_rat",
    "rat_str",
    "residual_eval",
    "same_atom_measures",
    "shannon_plus_info",
    "smaller_block_measure",
    "transport",
    "transport_increment",
    "transport_rate",
    "verify_atom_dependence",
]
