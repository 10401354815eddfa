"""Entropy of stochastic matrices and quantum operations.

Submodules
----------
linalg      dense matrix kernel and Jacobi eigensolver
classical   Shannon / relative / weighted entropies, χ-quantity, majorization
structure   Birkhoff decomposition, samplers, saturation constructors
quantum     density matrices, Kraus channels, Jamiołkowski operators, Kraus matrix
verifier    seeded property suites and the conjecture fuzzer
"""

__version__ = "0.1.0"
