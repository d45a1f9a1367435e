"""Exact-arithmetic certificates for flat pseudo-Riemannian homogeneous geometry.

The package certifies properties of unipotent affine isometry groups of
pseudo-Euclidean spaces with exact rational arithmetic: holonomy type,
invariant subspace chains, structure block forms, centralizer algebras,
properness and transitivity certificates, and the metric Lie algebra
counterpart of the same theory.
"""

__version__ = "0.1.0"
