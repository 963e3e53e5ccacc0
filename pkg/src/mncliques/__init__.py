"""Exact computations on (m,n)-colored mixed graphs."""

from .core import (
    ABSENT,
    Adjacency,
    BudgetExceeded,
    GraphBuilder,
    MixedGraph,
    Signature,
    SimpleGraph,
    add_arc,
    add_edge,
    new_graph,
    parse,
    parse_simple,
    serialize,
    serialize_simple,
    underlying,
)
from .homsearch import Partition, chromatic_number, find_homomorphism, max_chromatic, quotient
from .rigidity import (
    absolute_clique_number,
    is_clique,
    is_special_two_path,
    relative_clique_number,
    rigid_pair,
    rigidity_graph,
)

__version__ = "0.1.0"
