"""Scattered linear sets of LP type on PG(1, q^n).

Library and CLI for building finite-field towers, the algebra of linearized
polynomials, linear sets on the projective line, closed-form equivalence and
automorphism-group computations for the two-term LP family, and an exact census
of inequivalent members, everything cross-checked against independent
brute-force oracles at small parameters.
"""

from .census import (
    CensusError,
    CensusReport,
    brute_force_count,
    census_cell,
    closed_count,
    count_bounds,
    degree_count,
    degree_norm_one_count,
    gronwall_ratio,
    orbit_oracle_count,
)
from .equiv import (
    AutGroup,
    EquivVerdict,
    antidiagonal_solutions,
    automorphisms,
    brute_force_stabilizer,
    brute_force_witness,
    diagonal_exists,
    diagonal_solutions,
    lp_equivalent,
    n_tau,
    no_antidiagonal_witness,
    normalize_s,
    scaling_exists,
)
from .gftower import (
    CeilingExceeded,
    FieldElement,
    FieldTower,
    build_field,
    canonical_modulus,
    divisor_sum,
    divisors,
    euler_phi,
    factorize,
    gcd_p_power,
    get_tower,
    is_irreducible,
    is_prime,
    number_profile,
)
from .linpoly import (
    LinearizedPoly,
    LPParams,
    adjoint,
    compose,
    evaluate,
    inverse,
    is_bijective_lp,
    lp_poly,
    norm_power_sum,
    norm_power_top_coeff,
    value_multiset,
)
from .linset import (
    LinearSet,
    SemilinearMap,
    apply_map,
    check_coefficient_identities,
    is_scattered,
    points_of,
)

__all__ = [
    "AutGroup",
    "CeilingExceeded",
    "CensusError",
    "CensusReport",
    "EquivVerdict",
    "FieldElement",
    "FieldTower",
    "LPParams",
    "LinearSet",
    "LinearizedPoly",
    "SemilinearMap",
    "adjoint",
    "antidiagonal_solutions",
    "apply_map",
    "automorphisms",
    "brute_force_count",
    "brute_force_stabilizer",
    "brute_force_witness",
    "build_field",
    "canonical_modulus",
    "census_cell",
    "check_coefficient_identities",
    "closed_count",
    "compose",
    "count_bounds",
    "degree_count",
    "degree_norm_one_count",
    "diagonal_exists",
    "diagonal_solutions",
    "divisor_sum",
    "divisors",
    "euler_phi",
    "evaluate",
    "factorize",
    "gcd_p_power",
    "get_tower",
    "gronwall_ratio",
    "inverse",
    "is_bijective_lp",
    "is_irreducible",
    "is_prime",
    "is_scattered",
    "lp_equivalent",
    "lp_poly",
    "n_tau",
    "no_antidiagonal_witness",
    "norm_power_sum",
    "norm_power_top_coeff",
    "normalize_s",
    "number_profile",
    "orbit_oracle_count",
    "points_of",
    "scaling_exists",
    "value_multiset",
]
