"""Characteristic cycles of localizations and local cohomology modules.

The cycle of a holonomic module M over Q[x_1..x_n] is a formal sum of
conormal varieties in the cotangent ring Q[x, a].  Starting from
CC(R) = T*_X X, cycles are localized at polynomials and pruned along
the Čech hypercube to give the cycles of H^r_I(R) and Lyubeznik numbers.
"""

from .cech import (
    Hypercube,
    LyubeznikTable,
    PrunedCube,
    SaturationWarning,
    build_hypercube,
    decompose_direct_sum,
    euler_characteristic,
    local_cohomology,
    local_cohomology_cycles,
    lyubeznik_table,
    prune,
)
from .conormal import ConormalInput, bad_locus_ideal, conormal_ideal, divisor_ideal, relative_conormal_ideal
from .cycles import (
    CharCycle,
    ConormalComponent,
    HolonomicityError,
    Localizer,
    component_support,
    localize_cycle,
    support,
    zero_section,
)
from .decompose import UnresolvedComponentError, associated_primes, minimal_primes, refine_embedded
from .groebner import Ideal, eliminate, groebner_basis, intersect, kernel_mod, normal_form, quotient, saturate
from .hilbert import degree, dimension, hilbert_series, multiplicity_along
from .polycore import MonomialOrder, Polynomial, PolynomialSyntaxError, Ring

__version__ = "0.1.0"

__all__ = [
    "CharCycle",
    "ConormalComponent",
    "ConormalInput",
    "HolonomicityError",
    "Hypercube",
    "Ideal",
    "Localizer",
    "LyubeznikTable",
    "MonomialOrder",
    "Polynomial",
    "PolynomialSyntaxError",
    "PrunedCube",
    "Ring",
    "SaturationWarning",
    "UnresolvedComponentError",
    "associated_primes",
    "bad_locus_ideal",
    "build_hypercube",
    "component_support",
    "conormal_ideal",
    "decompose_direct_sum",
    "degree",
    "dimension",
    "divisor_ideal",
    "eliminate",
    "euler_characteristic",
    "groebner_basis",
    "hilbert_series",
    "intersect",
    "kernel_mod",
    "local_cohomology",
    "local_cohomology_cycles",
    "localize_cycle",
    "lyubeznik_table",
    "minimal_primes",
    "multiplicity_along",
    "normal_form",
    "prune",
    "quotient",
    "refine_embedded",
    "relative_conormal_ideal",
    "saturate",
    "support",
    "zero_section",
]
