"""Exact tools for linear tableaux: Cartan characters, symbol blocks, involutivity,
prolongation, characteristic varieties, moduli ideals and Poisson closure."""

from .exactlin import Matrix
from .tableau import Frame, SymbolBlocks, Tableau, generic_frame, symbol_coeffs, blocks, B_eval

__all__ = ["Matrix", "Tableau", "Frame", "SymbolBlocks", "generic_frame", "symbol_coeffs", "blocks", "B_eval"]
__version__ = "0.1.0"
