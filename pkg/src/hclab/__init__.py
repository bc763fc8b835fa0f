"""Exact-arithmetic cyclic homology of Hopf crossed products at desk scale."""

__version__ = "0.1.0"
