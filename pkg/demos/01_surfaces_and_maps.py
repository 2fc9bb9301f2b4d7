"""Surfaces as combinatorial maps: rotation systems, Euler counts, surgery.

A compact oriented surface is stored as a set of darts with two
permutations: alpha pairs the darts of each edge, sigma rotates darts
counterclockwise around each vertex.  Faces fall out as orbits of
sigma∘alpha, and boundary circles are faces marked as holes.
"""

from morsediag.combmap import (
    CurveKind,
    CurveLabel,
    EmbeddedCurve,
    build_map,
    components,
    cut_along,
    euler_genus,
    faces,
    surger,
)

BDY = CurveLabel(CurveKind.BDY)

# The one-vertex torus: two edges, rotation (0 1 2 3), pairing (0 2)(1 3).
torus = build_map(4, (2, 3, 0, 1), (1, 2, 3, 0))
print("torus:")
print("  faces:", faces(torus))
print("  (chi, genus, boundary):", euler_genus(torus))

# A plain circle bounds two faces; marking one as a hole makes a disk.
disk = build_map(4, (1, 0, 3, 2), (3, 2, 1, 0), hole_faces=(0,))
print("disk:", euler_genus(disk))

# Cutting the torus along the non-separating loop edge opens it into an
# annulus; a spherical rearrangement (cut and cap both circles) gives the
# sphere instead.
loop = EmbeddedCurve((0,), True, BDY)
print("torus cut along a loop  ->", euler_genus(cut_along(torus, loop)))
print("torus surgered          ->", euler_genus(surger(torus, loop)))

# Surgery along a separating curve disconnects: the sphere split along its
# equator becomes two spheres, flagged as a multi-component result.
sphere = build_map(4, (1, 0, 3, 2), (3, 2, 1, 0))
equator = EmbeddedCurve((0, 2), True, BDY)
pieces = components(surger(sphere, equator))
print("sphere surgered along the equator ->",
      [euler_genus(p) for p in pieces])

# A genus-2 surface from a single vertex: the all-crossing pairing of eight
# darts has one face, so chi = 1 - 4 + 1 = -2.
genus2 = build_map(8, (4, 5, 6, 7, 0, 1, 2, 3), (1, 2, 3, 4, 5, 6, 7, 0))
print("genus-2 one-vertex map:", euler_genus(genus2))
print("surgered along one loop ->", euler_genus(surger(genus2, loop)))
