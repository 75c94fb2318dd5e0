from .field import (
    BN_BASE_P,
    SNARK_R,
    STARK_Q,
    FieldElement,
    FieldId,
    FieldMismatchError,
    fe_arith,
    fe_exp,
    fe_inv,
)
from .polynomial import (
    Polynomial,
    lagrange_interpolate,
    poly_divrem,
    poly_eval,
    poly_mul,
    vanishing_poly,
)
from .tower import Fq2, Fq6, Fq12, TowerElement, tower_arith

__all__ = [
    "BN_BASE_P",
    "SNARK_R",
    "STARK_Q",
    "FieldElement",
    "FieldId",
    "FieldMismatchError",
    "Fq2",
    "Fq6",
    "Fq12",
    "Polynomial",
    "TowerElement",
    "fe_arith",
    "fe_exp",
    "fe_inv",
    "lagrange_interpolate",
    "poly_divrem",
    "poly_eval",
    "poly_mul",
    "tower_arith",
    "vanishing_poly",
]
