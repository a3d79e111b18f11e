"""Exact generalized cospectrality, regular orthogonal certificates and
reconstructibility checks for small graphs."""

__version__ = "0.1.0"

from .graph import Graph, RootedGraph
from .graph6 import decode_graph6, encode_graph6

__all__ = ["Graph", "RootedGraph", "decode_graph6", "encode_graph6", "__version__"]
