"""Realizations of edge-length multisets mod p as spanning trees and Hamiltonian paths."""
from .diameter import decompose, extend_diameter
from .errors import BudgetExhausted, BurattiError
from .exchange import crossing_edges, exchange, realize_tree
from .modular import (
    LengthMultiset,
    Modulus,
    cyclic_length,
    linear_length,
    map_multiset,
    multiset_orbit,
    parse_multiset,
    phi,
    sigma,
)
from .oracle import enumerate_paths, enumerate_trees
from .realization import PathRealization, TreeRealization, lengths_of_tree, verify
from .solver import SolveBudget, solve_cyclic, solve_linear, transfer, two_length_feasible

__version__ = "0.1.0"
