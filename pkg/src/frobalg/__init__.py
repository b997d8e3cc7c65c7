"""Dagger-Frobenius monoids in finite-dimensional Hilbert spaces, computed."""

from .cstar import StarAlgebra, realize, regular_trace_gram, rescale, wedderburn
from .diagram import check_equal, evaluate, parse, typecheck
from .endo import embed, end_monoid
from .frobenius import Monoid, basis_monoid, classify
from .involution import InvolutionMonoid
from .linalg import Morphism, Tolerance, WireWord, word
from .spectral import free, free_map, internal_diagonalize, spectrum

__version__ = "0.1.0"

__all__ = [
    "Morphism", "WireWord", "Tolerance", "word",
    "Monoid", "basis_monoid", "classify", "InvolutionMonoid",
    "end_monoid", "embed",
    "StarAlgebra", "regular_trace_gram", "realize", "rescale", "wedderburn",
    "spectrum", "free", "free_map", "internal_diagonalize",
    "parse", "typecheck", "evaluate", "check_equal",
]
