"""Exact cohomological invariants of quadratic forms, hermitian forms over
algebras of index at most 2, and hermitian pairs, over Q and finite fields."""

__version__ = "0.1.0"

from .scalars import GF, QQ, FieldElem, FiniteField, Rationals, hilbert_symbol, square_class
from .cohomology import CohClass, brauer_class_of_quaternion, cup
from .quadforms import QuadForm, e_n, equivalent, is_hyperbolic, is_isotropic, pfister, witt_decompose
from .algebras import InvAlgebra, quad_etale, quaternion, split_algebra
from .hermitian import HermForm, e_n_hermitian, is_hyperbolic_hermitian, jacobson_trace, relative_e3
from .pairs import HermPair, associated_quadratic_form, e_n_pair, quaternionic_pair_e1
from .morita import AdjointForm, adjoint_involution, morita_lift, morita_reduce, star_product

__all__ = [
    "GF", "QQ", "FieldElem", "FiniteField", "Rationals", "hilbert_symbol", "square_class",
    "CohClass", "brauer_class_of_quaternion", "cup",
    "QuadForm", "e_n", "equivalent", "is_hyperbolic", "is_isotropic", "pfister", "witt_decompose",
    "InvAlgebra", "quad_etale", "quaternion", "split_algebra",
    "HermForm", "e_n_hermitian", "is_hyperbolic_hermitian", "jacobson_trace", "relative_e3",
    "HermPair", "associated_quadratic_form", "e_n_pair", "quaternionic_pair_e1",
    "AdjointForm", "adjoint_involution", "morita_lift", "morita_reduce", "star_product",
]
