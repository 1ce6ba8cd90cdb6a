"""Few-Hamiltonian-cycle 4-regular 4-connected graph families: construction and certification."""

__version__ = "0.1.0"
