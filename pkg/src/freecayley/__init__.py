"""Free Cayley graphs over Z_p, their quotients by linear codes, and the
clique and chromatic reductions built on them."""

from .graph import Graph, max_clique, chromatic_number, max_independent_set
from .cayley import CayleySpec, free_connection_set, clique_number
from .reduce import reduce_clique, recover_omega, gadget, approx_clique_driver, embed_cubelike

__all__ = [
    "Graph", "max_clique", "chromatic_number", "max_independent_set",
    "CayleySpec", "free_connection_set", "clique_number",
    "reduce_clique", "recover_omega", "gadget", "approx_clique_driver", "embed_cubelike",
]
__version__ = "0.1.0"
