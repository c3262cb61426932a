"""
The matrix model of the stable category of k[t]/(t^n)
=====================================================

Everything the mesh calculus asserts abstractly is checked here on
honest matrices over GF(5): almost split sequences, almost-vanishing
classes, socles, and the single-object naturality solver.
"""

from meshknit import jordan
from meshknit.jordan import context, indec

n = 4
ctx = context(n)

# An almost split sequence starting at J2: middle J3 + J1.
seq = jordan.ar_sequence(indec(n, 2))
print(f"almost split sequence at {seq.module}: middle {seq.middle}")
print(f"  checks: {seq.checks}")

# The connecting class is almost vanishing: it kills every non-split
# composition. The report runs all five characterizations.
av = jordan.almost_vanishing_class(indec(n, 2))
report = jordan.is_almost_vanishing(av)
print(f"almost-vanishing class J2 -> J2: verdict {report.verdict}")
for name, value in report.conditions.items():
    print(f"  {name}: {value}")

# The identity fails (it is an isomorphism, so it kills nothing).
ident = ctx.identity_map(indec(n, 2))
print(f"identity verdict: {jordan.is_almost_vanishing(ident).verdict}")

# Socle of a representable functor: one simple, at the syzygy vertex.
soc = jordan.socle_of_representable(indec(n, 1))
print(f"socle of Hom(-, J1) sits at {soc.socle_vertex} (dims {soc.dims})")

# The solver looks for natural families supported at a single object.
# It finds the almost-vanishing line exactly when the degree forces the
# codomain to be the syzygy.
for r in (0, 1):
    rep = jordan.single_object_support_solver(indec(n, 1), r)
    print(f"degree {r}: codomain {rep.codomain}, solution dim {rep.dim}, "
          f"follows the syzygy rule: {rep.matches_rule}")
