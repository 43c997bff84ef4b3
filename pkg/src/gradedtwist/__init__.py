"""Exact-arithmetic toolkit for group-graded algebras and their twists.

The package is organized bottom-up:

- exactmath: scalars (rationals, prime fields) and dense exact matrices
- groups: grading groups (finite tables, integers with a support window)
- graded: graded spaces/algebras/modules, axiom checkers, constructors
- twist: twisting systems, twisted structures, phi families
- enriched: internal Homs, module-Hom equalizers, gamma algebras
- equivalence: module-category transport and twist recovery
- serialize: JSON forms for all of the above
- cli: batch verifier front end
"""

from .exactmath import QQ, Matrix, PrimeField, RationalField

__all__ = ["QQ", "Matrix", "PrimeField", "RationalField"]

__version__ = "0.1.0"
