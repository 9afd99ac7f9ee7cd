"""Gadget machinery for rank-width lower-bound reductions, with brute-force oracles."""

__version__ = "0.1.0"
