"""ratmat: exact structural data and row completions of polynomial and
rational matrices."""

from .fields import DomainError, Field, GaussianRational
from .matrices import PolyMatrix, RationalMatrix, matrix_from_json
from .poly import (
    Poly,
    RationalFunction,
    divides,
    divisor_of_degree,
    factorize,
    poly_gcd,
    poly_lcm,
)
from .seqs import IntSeq, check_lemma_hx, delta, gen_majorizes, h_index, majorizes, seq_union
from .structure import (
    MinimalIndices,
    SmithForm,
    StructuralData,
    infinite_orders,
    minimal_indices,
    rank,
    scale_by_poly,
    smith_form,
    smith_mcmillan,
    structural_data,
    unscale,
    verify_minimal_basis,
)

__all__ = [
    "DomainError",
    "Field",
    "GaussianRational",
    "IntSeq",
    "MinimalIndices",
    "Poly",
    "PolyMatrix",
    "RationalFunction",
    "RationalMatrix",
    "SmithForm",
    "StructuralData",
    "check_lemma_hx",
    "delta",
    "divides",
    "divisor_of_degree",
    "factorize",
    "gen_majorizes",
    "h_index",
    "infinite_orders",
    "majorizes",
    "matrix_from_json",
    "minimal_indices",
    "poly_gcd",
    "poly_lcm",
    "rank",
    "scale_by_poly",
    "seq_union",
    "smith_form",
    "smith_mcmillan",
    "structural_data",
    "unscale",
    "verify_minimal_basis",
]
