"""
Knitting radical layers across a translation quiver
===================================================

Layer tables of Hom(-, M) computed by the mesh recurrence, compared
against the brute-force matrix model where one exists (the tube).
"""

from meshknit import jordan, mesh, quiver
from meshknit.jordan import indec

# The stable quiver of k[t]/(t^4) is a tube with three vertices.
tube = quiver.build_tube(4)
j2 = tube.vertex(2)

table = mesh.knit_layers(tube, j2, k_max=6, window=4)
print(f"knitting Hom(-, {j2}) on {tube}")
for k in range(table.valid_through + 1):
    row = {str(v): m for v, m in table.row(k).items()}
    print(f"  layer {k}: {row or '0'}")
print(f"  valid through k={table.valid_through} (requested {table.k_max}: "
      f"{'truncated' if table.truncated else 'complete'})")

# The same layers from the matrix side: spans of k-fold composites of
# non-isomorphisms between Jordan blocks.
brute = jordan.radical_layers_bruteforce(indec(4, 2), k_max=6)
agree = all(table.row(k) == brute.row(k) for k in range(table.valid_through + 1))
print(f"matrix model agrees: {agree}")

# On the dihedral family the recurrence never truncates; layer 2 shows
# the translate tau(M) flanked by the two "long" neighbors.
fam = quiver.build_dihedral_family(6)
m = fam.vertex(0, 0)
layer2 = mesh.knit_layers(fam, m, k_max=2, window=6).row(2)
print(f"layer 2 of Hom(-, {m}) on the dihedral family: "
      f"{sorted(str(v) for v in layer2)}")
