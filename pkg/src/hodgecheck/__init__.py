"""hodgecheck: exact-arithmetic obstruction tests for Hodge structures on
finite graded-commutative cohomology algebras.

The package models cohomology algebras over Q with sparse exact arithmetic,
builds the standard constructions (exterior algebras, truncated polynomial
algebras, tensor products, projective bundles, blow-ups), validates Hodge
structures given by Gaussian-rational data, and runs decision procedures
(even-rank parity, tangent-space component certificates, Lefschetz and
Hodge-Riemann sign checks, signature tests) that certify when an algebra
cannot carry a (polarized) Hodge structure.
"""

__version__ = "0.1.0"
