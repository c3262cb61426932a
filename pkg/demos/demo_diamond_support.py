"""
Diamond elements and support propagation
========================================

Graded-center elements on the dihedral family, their per-vertex image
tables, and the propagation argument that forces support everywhere.
"""

from meshknit import center, quiver

fam = quiver.build_dihedral_family(10)

# mu_element(n) has degree 2n-1; its value at a vertex m is the cokernel
# of the two edge maps of the diamond with corners m .. m+(2n,2n).
for n in (1, 2):
    e = center.mu_element(fam, n)
    table = e.image_table(fam.vertex(0, 0))
    factors = {str(v): mult for v, mult in table.multiplicities().items()}
    print(f"mu({n}) degree {e.degree}, factors at (0,0): {factors}")

# The propagation theorem: once the hypotheses hold and some hom-support
# has size >= 2, nonzero support spreads to the whole component.
mu2 = center.mu_element(fam, 2)
report = center.check_propagation(fam, mu2, window=6)
print("propagation report for mu(2):")
for name, ok in report.hypotheses.items():
    print(f"  {name}: {ok}")
print(f"  some support of size >= 2: {report.support_min_two}")
print(f"  conclusion (support covers the window): {report.conclusion}")
sizes = set(report.hom_support_sizes.values())
print(f"  per-vertex hom-support sizes: {sizes}")

# mu(1) satisfies the same hypotheses but every support has size 1, so
# the theorem is silent; the notes say so.
mu1 = center.mu_element(fam, 1)
small = center.check_propagation(fam, mu1, window=4)
print(f"mu(1) applicable: {small.applicable}; notes: {small.notes}")

# On the ZA-infinity component no such element exists at all: the rim
# composite every propagation step needs is zero in the mesh category.
za = quiver.build_za_inf(6)
obstruction = center.a_inf_obstruction(za, 3, window=4)
print(f"rim obstruction on za-inf (radius 4): ok={obstruction.ok}, "
      f"positions {obstruction.rim_positions}")
