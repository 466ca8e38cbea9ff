"""Exact word arithmetic in iterated free products with central amalgamation.

The package computes canonical normal forms, levels, homomorphic images and
constructive escape certificates for groups built as a chain of free products
amalgamated over a descending family of central subgroups.  Three concrete
factor systems ship with it: a dense p-power-denominator model, a discrete
Heisenberg model and a finite cyclic model.
"""

__version__ = "0.1.0"
