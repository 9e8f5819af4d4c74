"""Exact enumeration of 321-avoiding affine permutations through heaps of pieces."""

__version__ = "0.1.0"
