"""The optimal flow on the solid torus, end to end.

Its diagram is an annulus with one green and one red spanning arc: the
gradient flow of the height function, with four boundary fixed points of
types 1, 3, 4 and 6.
"""

import json

import morsediag.catalog as cat
from morsediag.chord import GREEN, RED, ChordDiagram, ColoredChordDiagram, canonical_colored
from morsediag.prdiag import (
    census,
    equivalent,
    from_colored_chord,
    is_optimal,
    morse_checks,
    pr_to_json,
    to_colored_chord,
    validate,
)

solid_torus = cat.load_fixture("solid_torus.json")

report = validate(solid_torus)
print("five-property report:")
for p in report.properties:
    print(f"  {p.name}: {'ok' if p.passed else p.witness}")

c = census(solid_torus)
print("\nfixed points by type (n1..n6):", c.as_tuple())
print("boundary surface genus:", c.boundary_genus)
print("necessary conditions:", morse_checks(solid_torus).to_json())
print("optimal on the genus-1 handlebody:", is_optimal(solid_torus, 1))

# Cutting the annulus along the red arc leaves a disk whose boundary carries
# two green endpoints and two red marks: the colored chord diagram.
ccd = to_colored_chord(solid_torus)
print("\ncolored chord diagram:", ccd.base.match, ccd.colors)
expected = ColoredChordDiagram(ChordDiagram(2, (2, 3, 0, 1)), (GREEN, RED))
print("matches the crossing pair with one green chord:",
      canonical_colored(ccd) == canonical_colored(expected))

# The inverse construction reglues the disk and recovers the same flow.
rebuilt = from_colored_chord(ccd)
print("reglued diagram equivalent to the fixture:",
      equivalent(rebuilt, solid_torus))

print("\ndiagram as JSON:")
print(json.dumps(pr_to_json(solid_torus), indent=1, sort_keys=True))
