"""
ordlift
=======

Exact arithmetic for bi-invariant orders on groups of circle maps, translation
numbers, relative growth, order preserving surface group representations and
the causal-cover quasimorphism.

Modules:
- config: Configuration constants, logging setup and validation
- errors: Exception hierarchy shared by all modules
- intervals: Certified rational intervals backed by mpmath
- circle: Piecewise-linear maps, Moebius lifts, exact comparisons, translation numbers
- orders: Order semigroups, dominant sets, perturbations and relative growth
- quasimorphism: Quasimorphism evaluation, homogenization and audits
- words: Free group words and commutator subgroup membership
- surface: Surface data, canonical lifts, f_Sigma and order preservation tests
- causal: Causal-cover instances, iota, R_x and psi
- lagrangian: Numeric Lagrangian Grassmannian instance
- sampling: Seeded random elements and words
- serialization: Text formats for elements and representations
- models: Pydantic report models
- descriptions: Field descriptions for the report models
- reports: CSV reports and deterministic SVG plots
- suite: Seeded acceptance runs over the shipped orders, representations and covers
- cli: Click command-line front end
"""

__version__ = "1.0.0"
__author__ = "ordlift developers"
