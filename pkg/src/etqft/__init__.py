"""Exact 2-vector spaces, the semistrict monoidal 2-category they form, and
2d TQFTs (ordinary and extended) evaluated on cobordism words."""

from etqft.exactlinalg import RationalMatrix
from etqft.twovect import TwoVect, discrete, from_chain_complex, to_chain_complex, validate

__version__ = "0.1.0"

__all__ = ["RationalMatrix", "TwoVect", "discrete", "from_chain_complex",
           "to_chain_complex", "validate"]
