"""Exact verification of the finite computations behind Lagrangian Galois-closure surfaces."""

__version__ = "0.1.0"
