"""Classifying optimal handlebody flows through colored chord diagrams.

One-face chord diagrams with 2g chords present the closed genus-g surface;
choosing g pairwise non-crossing chords as green encodes an optimal flow on
the genus-g handlebody.  Classes are reduced under the dihedral symmetries
of the circle, the convention pinned by the acceptance suite.
"""

from morsediag.chord import (
    ChordDiagram,
    classify,
    enumerate_bases,
    enumerate_colorings,
    face_count,
    is_river,
)

print("face counts of the three matchings on four points:")
for match in ((2, 3, 0, 1), (1, 0, 3, 2), (3, 2, 1, 0)):
    cd = ChordDiagram(2, match)
    print(f"  {match}: {face_count(cd)} face(s)")

print("\nclassification by genus (dihedral convention):")
print(f"  {'genus':>5} {'bases':>6} {'colored':>8} {'river':>6} {'river bases':>12}")
for g in (1, 2, 3):
    r = classify(g)
    print(f"  {g:>5} {r.bases:>6} {r.colored:>8} {r.river_colored:>6} "
          f"{r.river_bases:>12}   ({r.runtime_seconds:.2f}s)")

# The genus-2 all-crossing diagram is one-face but admits no coloring: all
# chords meet pairwise, so no two can be green together.
allcross = ChordDiagram(4, (4, 5, 6, 7, 0, 1, 2, 3))
print("\nall-crossing genus-2 base: colorings =",
      len(enumerate_colorings(allcross, 2)))

print("\nriver structures at genus 2:")
for base in enumerate_bases(2):
    for ccd in enumerate_colorings(base, 2):
        if is_river(ccd):
            print("  greens:", ccd.green_chords(), " reds:", ccd.red_chords())
