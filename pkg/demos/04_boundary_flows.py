"""Restoring the boundary flow from a diagram.

The boundary of the 3-manifold splits into a green half (sources and green
saddles) and a red half (red saddles and sinks) glued along the diagram
surface's boundary.  The separatrix graph lists one stable separatrix into
each saddle from the source of the region on each side, and one unstable
separatrix from each saddle into the red region at each arc endpoint.
"""

import morsediag.catalog as cat
from morsediag.prdiag import boundary_restriction, census

for name in ("d3_trivial.json", "d3_four_a.json", "d3_four_b.json",
             "solid_torus.json", "g2_optimal_1.json"):
    d = cat.load_fixture(name)
    bg = boundary_restriction(d)
    roles = bg.role_counts()
    chi = roles["source"] + roles["sink"] - roles["saddle"]
    print(f"{name}:")
    print(f"  boundary genus {bg.genus}; "
          f"{roles['source']} sources, {roles['saddle']} saddles, "
          f"{roles['sink']} sinks; {len(bg.edges)} separatrices")
    print(f"  Poincare check: sources + sinks - saddles = {chi} "
          f"= chi of the genus-{bg.genus} surface: {chi == 2 - 2 * bg.genus}")
    types = sorted(v.point_type for v in bg.vertices)
    print(f"  fixed point types: {types}, census {census(d).as_tuple()}")
