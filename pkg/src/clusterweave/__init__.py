"""Exact cluster-algebra mutation, positive braids, braid varieties, and weaves.

Everything computes over exact rational arithmetic or prime fields; there is
no floating point anywhere in the mathematical core.  Modules:

- polynomials: sparse multivariate polynomials and rational functions
- quiver: ice quivers, matrix mutation, finite-type recognition
- cluster: seeds, cluster mutation, exchange graphs, Laurent checks
- coxeter: symmetric group words, Bruhat order, Demazure products
- braid: positive braid monoid words and equality
- braidvar: braid variety equations and point counts over prime fields
- finitefield: flags and subspace arithmetic over prime fields
- weave: Demazure weaves as move sequences, mutation, torus point counts
- render: matplotlib figures for quivers, exchange graphs, and weaves
- cli: command-line entry point
"""

from .braid import BraidWord, braid_equal, delta, technical_condition, torus_link_braid
from .braidvar import count_points, double_variety_count, presentation
from .cluster import Seed, exchange_graph, initial_seed, mutate_seed
from .coxeter import bruhat_leq, demazure_product, length, reduced_word
from .errors import Error
from .polynomials import Polynomial, RationalFunction, parse_rational
from .quiver import IceQuiver, finite_type, mutate_quiver, mutation_class
from .weave import Weave, build_weave, count_torus_points, weave_mutate

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "Error",
    "IceQuiver",
    "Polynomial",
    "RationalFunction",
    "Seed",
    "Weave",
    "__version__",
    "braid_equal",
    "bruhat_leq",
    "build_weave",
    "count_points",
    "count_torus_points",
    "delta",
    "demazure_product",
    "double_variety_count",
    "exchange_graph",
    "finite_type",
    "initial_seed",
    "length",
    "mutate_quiver",
    "mutate_seed",
    "mutation_class",
    "parse_rational",
    "presentation",
    "reduced_word",
    "technical_condition",
    "torus_link_braid",
]
