"""Exact-arithmetic computations with noncommutative graded algebras.

Presentations, degree-truncated rewriting completion, Hilbert functions and
growth estimates, twists, regularity checks, twisted homogeneous coordinate
rings, Proj cohomology via truncation colimits, charge-level sheaf calculus
and real-multiplication Hilbert data.
"""

__version__ = "0.1.0"
