"""
Two worked unipotent isometry groups
====================================

Walks the built-in groups gamma44 (8-dimensional space) and gamma77
(14-dimensional space) end to end: generator conditions, the holonomy
test, the invariant subspace chain, structure blocks in a Witt frame,
the crossover pairing, the dimension bound, the commutant, and the
transitivity / properness / freeness certificates.

Run with:  python demos/worked_examples.py
"""

from prhs.centralizer import (
    centralizer_algebra,
    certify_open_orbit,
    orbit_dimension,
    properness_certificate,
    transitivity_certificate,
    builtin_centralizer_family,
)
from prhs.groups import (
    build_example,
    crossover_duality,
    dimension_bound_decomposition,
    holonomy_abelian,
    invariant_spaces,
    is_free_on_space,
    structure_blocks,
)


def show(M, indent="    "):
    # small pretty-printer so block matrices line up
    cells = [[str(x) for x in row] for row in M.rows]
    width = max((len(c) for row in cells for c in row), default=1)
    for row in cells:
        print(indent + "[ " + "  ".join(c.rjust(width) for c in row) + " ]")


def banner(text):
    print()
    print("=" * 64)
    print(text)
    print("=" * 64)


# ----------------------------------------------------------------------
# Part 1: the 8-dimensional group
# ----------------------------------------------------------------------

banner("gamma44: two shears of a split form on R^8")

G, pres = build_example("gamma44")
print(f"ambient dimension: {G.n}")
print(f"signature of the scalar product: {G.Q.signature}")

# Every generator must pass the six unipotent-isometry conditions:
# A^2 = 0, the translation is orthogonal to im A and killed by A,
# im A is totally isotropic, QA is skew, and im A = (ker A)^perp.
for i, rep in enumerate(G.wolf_reports()):
    print(f"generator {i + 1}: all conditions pass = {rep.overall}")

abelian, evidence = holonomy_abelian(G)
print(f"\nholonomy abelian: {abelian}")
print(f"witness pair of generators with A_i A_j != 0: {evidence['witness_pair']}")

# The three equivalent criteria always agree; here all three fail at once.
for key in ("linear_parts_commute", "products_vanish", "holonomy_span_isotropic"):
    print(f"  {key}: {evidence[key]}")

inv = invariant_spaces(G)
print(f"\ndim U_Gamma = {inv.u_gamma.dim}")
print(f"dim U_0     = {inv.u_zero.dim}   (= U_Gamma meet U_Gamma^perp)")
print(f"dim U_Delta = {inv.u_delta.dim}")
print(f"central translations found: {len(inv.center_elements)}")

# Structure blocks presuppose that the space is actually homogeneous
# for the commutant, so certify the open orbit first; this marks the
# group as valid for the block decomposition.
C44 = centralizer_algebra(G)
print(f"\ncommutant dimension: {C44.dim}")
orb0 = certify_open_orbit(G, C44)
print(f"commutant orbit at the origin: dim {orb0.orbit_dim}, open = {orb0.is_open}")

# In a Witt frame adapted to U_0 every generator log takes the shape
#   [ 0  -B^t G_W  C ]
#   [ 0      0     B ]      with C skew and B^t G_W B = 0.
#   [ 0      0     0 ]
sb = structure_blocks(G)
for i, (B, C) in enumerate(sb.blocks):
    print(f"\ngenerator {i + 1} blocks: B is {B.shape}, C is {C.shape}")
    print("  B =")
    show(B, indent="    ")

# The crossover pairing P[i][j] = <b_1^i, b_2^j> detects non-commuting
# linear parts: P != 0 exactly when A_1 A_2 != 0.
cr = crossover_duality(G.logs[0], G.logs[1], sb.frame)
print("\ncrossover pairing of the two B-blocks:")
show(cr.pairing)
print(f"pairing antisymmetric: {cr.antisymmetric}")
print(f"duality rule consistent: {cr.duality_consistent}")
print(f"witness entry: {cr.witness_indices}")

bound = dimension_bound_decomposition(G)
print(f"\ndimension bound: {bound.verdict}")

# The full commutant contains semisimple parts, so the nilpotency leg
# of the transitivity certificate fails; the open orbit still gives a
# properness certificate on that orbit.
cert = transitivity_certificate(C44)
print(f"full commutant certified transitive: {cert.certified}")
print(f"  bracket closed: {cert.bracket_closed}")
print(f"  all linear parts nilpotent: {cert.all_parts_nilpotent}")

prop = properness_certificate(G, C44)
print(f"properness verdict: {prop.verdict}  (route: {prop.route})")

# gamma44 is not free: the central element gamma3 = [g1, g2] fixes e7.
free, witness = is_free_on_space(G, exponent_box=1)
print(f"\nacts freely: {free}")
if witness is not None:
    print(f"fixed point witness: {witness[1]}")
orb7 = orbit_dimension(C44, witness[1])
print(f"commutant orbit at that point: dim {orb7.orbit_dim}")

# ----------------------------------------------------------------------
# Part 2: the 14-dimensional group
# ----------------------------------------------------------------------

banner("gamma77: the smallest known proper, free, non-abelian case")

H, pres77 = build_example("gamma77")
print(f"ambient dimension: {H.n}")
print(f"signature: {H.Q.signature}")

abelian, evidence = holonomy_abelian(H)
print(f"holonomy abelian: {abelian}")

inv = invariant_spaces(H)
print(f"dim U_Gamma = {inv.u_gamma.dim}, dim U_0 = {inv.u_zero.dim}, "
      f"dim U_Delta = {inv.u_delta.dim}")

C77 = centralizer_algebra(H)
orb = certify_open_orbit(H, C77)
print(f"commutant orbit at the origin: dim {orb.orbit_dim}, open = {orb.is_open}")

bound = dimension_bound_decomposition(H)
print(f"dimension bound: {bound.verdict}")

# The documented 14-dimensional subfamily of the commutant is bracket
# closed, nilpotent of class 3, and surjective at every probe point, so
# it certifies a transitive action; properness on the whole space follows.
fam = builtin_centralizer_family("gamma77")
cert = transitivity_certificate(C77, candidate=fam)
print(f"\ncommutant dimension: {C77.dim}")
print(f"family dimension: {cert.candidate_dim}")
print(f"certified transitive: {cert.certified} "
      f"(nilpotency class {cert.nilpotency_class}, "
      f"{len(cert.probes)} probe points)")

prop = properness_certificate(H, C77, candidate=fam)
print(f"properness verdict: {prop.verdict}  (route: {prop.route})")
print(f"closedness: {prop.closed_tag}")

free, witness = is_free_on_space(H, exponent_box=2)
print(f"acts freely on the exponent box: {free}")

print("\nboth groups verified.")
