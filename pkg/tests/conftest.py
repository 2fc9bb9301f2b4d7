"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import random

import pytest

from morsediag.combmap import (
    CombMap,
    CurveKind,
    CurveLabel,
    EmbeddedCurve,
    build_map,
    face_table,
    mirror_map,
)


def make_torus() -> CombMap:
    """One-vertex, two-edge rotation system of the torus."""
    return build_map(4, (2, 3, 0, 1), (1, 2, 3, 0))


def make_circle(hole: bool = True) -> CombMap:
    """Two-vertex circle; one face marked as hole gives the disk seed."""
    return build_map(4, (1, 0, 3, 2), (3, 2, 1, 0), hole_faces=(0,) if hole else ())


def make_sphere() -> CombMap:
    return make_circle(hole=False)


def make_genus2() -> CombMap:
    """One-vertex map of the closed genus-2 surface (all-crossing matching)."""
    return build_map(8, (4, 5, 6, 7, 0, 1, 2, 3), (1, 2, 3, 4, 5, 6, 7, 0))


def make_solid_torus_diagram():
    """Annulus with one green and one red spanning arc (hand-built)."""
    from morsediag.prdiag import PrDiagram

    alpha = (1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10)
    sigma = [0] * 12
    for cyc in ([0, 8, 3], [2, 10, 1], [4, 9, 7], [6, 11, 5]):
        for i, d in enumerate(cyc):
            sigma[d] = cyc[(i + 1) % len(cyc)]
    labels = {8: CurveLabel(CurveKind.U_GREEN_ARC, 0),
              10: CurveLabel(CurveKind.V_RED_ARC, 0)}
    m = build_map(12, alpha, sigma, labels, hole_faces=(0, 4))
    return PrDiagram(m, (
        EmbeddedCurve((8,), False, CurveLabel(CurveKind.U_GREEN_ARC, 0)),
        EmbeddedCurve((10,), False, CurveLabel(CurveKind.V_RED_ARC, 0)),
    ))


def relabel_map(m: CombMap, rng: random.Random) -> CombMap:
    """The same map with darts renamed by a random permutation."""
    n = m.n_darts
    perm = list(range(n))
    rng.shuffle(perm)
    alpha = [0] * n
    sigma = [0] * n
    labels = [None] * n
    for d in range(n):
        alpha[perm[d]] = perm[m.alpha[d]]
        sigma[perm[d]] = perm[m.sigma[d]]
        labels[perm[d]] = m.labels[d]
    shuffled = CombMap(tuple(alpha), tuple(sigma), tuple(labels), frozenset(),
                       m.allow_disconnected)
    ftab_old = face_table(m)
    ftab_new = face_table(shuffled)
    holes = frozenset(ftab_new[perm[d]] for d in range(n) if ftab_old[d] in m.holes)
    return CombMap(tuple(alpha), tuple(sigma), tuple(labels), holes,
                   m.allow_disconnected)


def relabel_diagram(d, rng: random.Random):
    """Relabeled copy of a diagram (map darts renamed, curves re-indexed)."""
    from morsediag.prdiag import PrDiagram

    m = d.surface
    n = m.n_darts
    perm = list(range(n))
    rng.shuffle(perm)
    alpha = [0] * n
    sigma = [0] * n
    labels = [None] * n
    for dd in range(n):
        alpha[perm[dd]] = perm[m.alpha[dd]]
        sigma[perm[dd]] = perm[m.sigma[dd]]
        labels[perm[dd]] = m.labels[dd]
    ftab_old = face_table(m)
    probe = CombMap(tuple(alpha), tuple(sigma), tuple(labels), frozenset())
    ftab_new = face_table(probe)
    holes = frozenset(ftab_new[perm[dd]] for dd in range(n) if ftab_old[dd] in m.holes)
    m2 = CombMap(tuple(alpha), tuple(sigma), tuple(labels), holes)

    def edge_image(e):
        return min(perm[e], perm[m.alpha[e]])

    curves = tuple(
        EmbeddedCurve(tuple(edge_image(e) for e in c.edges), c.closed, c.label)
        for c in d.curves
    )
    return PrDiagram(m2, curves)


def brute_force_isomorphic(m1: CombMap, m2: CombMap, mirror: bool = True) -> bool:
    """Backtracking search for a dart bijection preserving sigma, alpha,
    label kinds and hole incidence.  Connected maps only: the image of one
    dart determines the whole bijection, so every root image is tried."""
    variants = [m2] + ([mirror_map(m2)] if mirror else [])
    n = m1.n_darts
    f1 = face_table(m1)
    h1 = [f1[d] in m1.holes for d in range(n)]
    for mv in variants:
        if mv.n_darts != n:
            continue
        f2 = face_table(mv)
        h2 = [f2[d] in mv.holes for d in range(mv.n_darts)]
        for root in range(n):
            mapping = {0: root}
            stack = [0]
            ok = True
            while stack and ok:
                d = stack.pop()
                img = mapping[d]
                if m1.labels[d].kind is not mv.labels[img].kind or h1[d] != h2[img]:
                    ok = False
                    break
                for nd, nimg in ((m1.sigma[d], mv.sigma[img]),
                                 (m1.alpha[d], mv.alpha[img])):
                    if nd in mapping:
                        if mapping[nd] != nimg:
                            ok = False
                            break
                    else:
                        mapping[nd] = nimg
                        stack.append(nd)
            if ok and len(mapping) == n and len(set(mapping.values())) == n:
                return True
    return False


def thickened_boundary_walk_faces(match) -> int:
    """Independent face-count oracle: walk the boundary of the thickened
    one-vertex diagram piece by piece (rim gaps and band sides)."""
    pts = len(match)
    pieces = [("gap", i) for i in range(pts)] + [("band", p) for p in range(pts)]

    def successor(piece):
        kind, x = piece
        if kind == "gap":
            # rim gap (x, x+1) ends at point x+1; cross that band
            return ("band", (x + 1) % pts)
        # band side entered at point x exits at the partner; continue on its gap
        return ("gap", match[x])

    seen = set()
    cycles = 0
    for start in pieces:
        if start in seen:
            continue
        cycles += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = successor(cur)
    # each boundary component consumes gap and band pieces alternately;
    # the cycle count over pieces equals the face count
    return cycles


@pytest.fixture
def rng():
    return random.Random(20240817)
