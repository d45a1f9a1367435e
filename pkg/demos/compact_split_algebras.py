"""
Flat biinvariant metric Lie algebras
====================================

The compact-quotient side of the theory.  A biinvariant metric Lie
algebra is flat exactly when it is two-step nilpotent with a totally
isotropic derived algebra, and every such algebra splits as

    g = (a (+) a*) (+) z0

where the bracket is encoded by one alternating 3-form on a.  This
script builds the smallest nontrivial case from the determinant form,
checks the curvature identities, runs the development representation
into the affine isometry side, and round-trips the splitting.

Run with:  python demos/compact_split_algebras.py
"""

from fractions import Fraction

from prhs.flatlie import (
    MetricLieAlgebra,
    ThreeForm,
    build_split_algebra,
    check_biinvariant,
    development_rep,
    is_flat,
    split_decomposition,
    trilinear_alternating,
    verify_compact_holonomy,
)
from prhs.linalg import Mat, unit


def section(text):
    print()
    print(text)
    print("-" * len(text))


# ----------------------------------------------------------------------
# the determinant form on a 3-dimensional core
# ----------------------------------------------------------------------

section("Determinant form and its split algebra")

F = ThreeForm.determinant()
print(f"form: {F!r}, entries {list(F.triples())}")

g = build_split_algebra(F)
print(f"algebra dimension: {g.dim}")
print(f"gram signature: {g.form.signature}")

# brackets of core elements land in the dual copy: [a_i, a_j] = F(i,j,t) a*_t
e = [unit(6, t) for t in range(6)]
print(f"[a_1, a_2] = {g.bracket_vectors(e[0], e[1])}")
print(f"[a_1, a_3] = {g.bracket_vectors(e[0], e[2])}")
print(f"[a_2, a_3] = {g.bracket_vectors(e[1], e[2])}")

# biinvariance <[x,y],z> = -<y,[x,z]> and full alternation of <[x,y],z>
print(f"biinvariant: {check_biinvariant(g)}")
print(f"trilinear form alternating: {trilinear_alternating(g)}")
print(f"flat: {is_flat(g)}")

der = g.derived_subspace()
cen = g.center()
print(f"derived algebra dim {der.dim}, center dim {cen.dim}, "
      f"derived inside center: {cen.contains(der)}")

# ----------------------------------------------------------------------
# development representation
# ----------------------------------------------------------------------

section("Development representation x -> (ad(x)/2, x)")

# the images are affine logs; the bracket carries over exactly
from prhs.affine import bracket as affine_bracket

x, y = e[0], e[1]
dx, dy = development_rep(g, x), development_rep(g, y)
lhs = affine_bracket(dx, dy)
rhs = development_rep(g, g.bracket_vectors(x, y))
print(f"homomorphism on a sample pair: {lhs == rhs}")

rep = verify_compact_holonomy(g, e)
print(f"holonomy report: overall = {rep.overall}")
print(f"  abelian linear images: {rep.abelian_images}")
print(f"  holonomy span equals derived algebra: {rep.span_is_derived}")
print(f"  derived algebra isotropic: {rep.derived_isotropic}")
print(f"  generators passing all affine conditions: {sum(rep.wolf_valid)} "
      f"of {len(rep.wolf_valid)}")
print(f"  holonomy dimension: {rep.holonomy_dim}")

# ----------------------------------------------------------------------
# recovering the splitting
# ----------------------------------------------------------------------

section("Splitting a flat algebra back into (a (+) a*) (+) z0")

dec = split_decomposition(g)
print(f"dim a = {dec.a.dim}, dim a* = {dec.a_star.dim}, dim z0 = {dec.z0.dim}")
print(f"recovered form equals the input: {dec.three_form == F}")
print(f"rebuilt algebra matches: {dec.rebuilt.structure == g.structure}")

# the same machinery handles a central factor with an indefinite form
g2 = build_split_algebra(F, z0_gram=Mat.diag([1, -1]))
dec2 = split_decomposition(g2)
print(f"\nwith a 2-dim central factor: dim {g2.dim}, "
      f"signature {g2.form.signature}")
print(f"splitting: a {dec2.a.dim}, a* {dec2.a_star.dim}, z0 {dec2.z0.dim}")

# ----------------------------------------------------------------------
# what flatness excludes
# ----------------------------------------------------------------------

section("A biinvariant algebra that is not flat")

# so(3) with the cross product bracket and the Killing-like form: compact,
# biinvariant, but not nilpotent, hence not flat.
cross = [[(0, 0, 0)] * 3 for _ in range(3)]
cross[0][1] = (0, 0, 1)
cross[1][0] = (0, 0, -1)
cross[1][2] = (1, 0, 0)
cross[2][1] = (-1, 0, 0)
cross[2][0] = (0, 1, 0)
cross[0][2] = (0, -1, 0)
so3 = MetricLieAlgebra(cross, Mat.identity(3))
print(f"biinvariant: {check_biinvariant(so3)}")
print(f"flat: {is_flat(so3)}")
try:
    development_rep(so3, (1, 0, 0))
except Exception as exc:
    print(f"development representation refuses: {exc}")

# the flatness criterion itself presupposes biinvariance: a heisenberg
# bracket with a definite form already violates <[x,y],z> = -<y,[x,z]>,
# so the flatness question is refused rather than answered
bad = [[(0, 0, 0)] * 3 for _ in range(3)]
bad[0][1] = (0, 0, 1)
bad[1][0] = (0, 0, -1)
heis = MetricLieAlgebra(bad, Mat.identity(3))
print(f"\nheisenberg with a definite form, biinvariant: {check_biinvariant(heis)}")
try:
    is_flat(heis)
except Exception as exc:
    print(f"flatness check refuses: {exc}")

print("\ndone.")
