"""Exact Stanley depth of monomial ideals and their cyclic quotients."""
from .monomial import (IrreducibleIdeal, Monomial, MonomialIdeal, PrimeIdeal, contract,
                       equigenerated_degree, ideal_of_irreducible, ideal_of_prime, intersect,
                       intersect_all, is_squarefree, minimalize, product, product_all, radical,
                       raise_exponent, support)
from .poset import (Box, CharPoset, Interval, IntervalPartition, Kind, PartitionError,
                    PosetTooLarge, char_poset, partition_sdepth, rho, to_stanley_decomposition)
from .solver import (BudgetExhausted, ContradictoryBounds, SdepthResult, decide, exact_sdepth,
                     verify)
from .bounds import BoundReport, DecomposedIdeal, bounds_report, decompose, min_primes
from .hypergraph import KPartiteSpec, build_irreducible_intersection, build_kpartite

__version__ = "0.1.0"
