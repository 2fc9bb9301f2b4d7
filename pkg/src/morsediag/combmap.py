"""Edge-labeled combinatorial maps for compact oriented surfaces with boundary.

A surface is encoded as a closed combinatorial map (rotation system): darts
0..2E-1, a fixed-point-free involution ``alpha`` pairing the two darts of each
edge, and a permutation ``sigma`` giving the counterclockwise order of darts
around each vertex.  Faces are the orbits of sigma∘alpha.  Boundary circles of
the surface bound designated *hole* faces, so one uniform closed-map engine
serves surfaces with boundary; the Euler characteristic is corrected by the
hole count.

Edges carry curve labels (boundary, green/red arcs and cycles) so that curve
systems live directly on the map and canonical forms are label-aware.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence


class MapError(ValueError):
    """Base class for structural errors in combinatorial maps."""


class NonInvolution(MapError):
    pass


class DisconnectedUnlessFlagged(MapError):
    pass


class LabelMismatch(MapError):
    pass


class NonIntegerGenus(MapError):
    pass


class CurveNotEmbedded(MapError):
    pass


class ArcEndpointNotOnBoundary(MapError):
    pass


class CurveNotClosed(MapError):
    pass


class CurveKind(Enum):
    """Label kinds: boundary segments and the four curve families."""

    BDY = "bdy"
    U_GREEN_ARC = "u"
    U_GREEN_CYCLE = "U"
    V_RED_ARC = "v"
    V_RED_CYCLE = "V"

    @property
    def is_green(self) -> bool:
        return self in (CurveKind.U_GREEN_ARC, CurveKind.U_GREEN_CYCLE)

    @property
    def is_red(self) -> bool:
        return self in (CurveKind.V_RED_ARC, CurveKind.V_RED_CYCLE)


# Fixed ordinal used in canonical codes; indices are deliberately excluded so
# that isomorphism permutes curves within a family (curves of the same type
# map to curves of the same type).
_KIND_ORD = {
    CurveKind.BDY: 0,
    CurveKind.U_GREEN_ARC: 1,
    CurveKind.U_GREEN_CYCLE: 2,
    CurveKind.V_RED_ARC: 3,
    CurveKind.V_RED_CYCLE: 4,
}

_KIND_BY_JSON = {k.value: k for k in CurveKind}


@dataclass(frozen=True)
class CurveLabel:
    kind: CurveKind
    index: Optional[int] = None


_BDY = CurveLabel(CurveKind.BDY)


@dataclass(frozen=True)
class CombMap:
    """Immutable labeled combinatorial map.

    ``alpha`` and ``sigma`` are permutations of 0..n_darts-1, ``labels`` holds
    one CurveLabel per dart (both darts of an edge agree), ``holes`` is the
    set of face ids (smallest dart of the face orbit) marked as holes.
    """

    alpha: tuple[int, ...]
    sigma: tuple[int, ...]
    labels: tuple[CurveLabel, ...]
    holes: frozenset[int]
    allow_disconnected: bool = False

    @property
    def n_darts(self) -> int:
        return len(self.alpha)

    def edge_of(self, dart: int) -> int:
        """Edge id of a dart: the smaller dart of the alpha-pair."""
        return min(dart, self.alpha[dart])

    def edge_ids(self) -> list[int]:
        return sorted(d for d in range(self.n_darts) if d < self.alpha[d])

    def label_of_edge(self, edge: int) -> CurveLabel:
        return self.labels[edge]


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Orbits of a permutation, each rotated to start at its smallest element,
    sorted by that element."""
    n = len(perm)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


def faces(m: CombMap) -> list[tuple[int, ...]]:
    """Face orbits of sigma∘alpha, smallest dart first, sorted."""
    phi = [m.sigma[m.alpha[d]] for d in range(m.n_darts)]
    return _orbits(phi)


def vertices(m: CombMap) -> list[tuple[int, ...]]:
    """Vertex orbits of sigma, smallest dart first, sorted."""
    return _orbits(m.sigma)


def face_table(m: CombMap) -> dict[int, int]:
    """dart -> face id (smallest dart of its face orbit)."""
    out = {}
    for cyc in faces(m):
        fid = cyc[0]
        for d in cyc:
            out[d] = fid
    return out


def vertex_table(m: CombMap) -> dict[int, int]:
    """dart -> vertex id (smallest dart of its sigma orbit)."""
    out = {}
    for cyc in vertices(m):
        vid = cyc[0]
        for d in cyc:
            out[d] = vid
    return out


def _is_connected(alpha: Sequence[int], sigma: Sequence[int]) -> bool:
    n = len(alpha)
    if n == 0:
        return True
    seen = [False] * n
    stack = [0]
    seen[0] = True
    while stack:
        d = stack.pop()
        for nxt in (alpha[d], sigma[d]):
            if not seen[nxt]:
                seen[nxt] = True
                stack.append(nxt)
    return all(seen)


def hole_corner_dart(m: CombMap, vertex_darts: Sequence[int],
                     ftab: Optional[dict[int, int]] = None) -> Optional[int]:
    """The dart x at this vertex whose corner (x -> sigma(x)) lies in a hole
    face, or None.  The corner between x and sigma(x) belongs to the face
    orbit containing sigma(x)."""
    if ftab is None:
        ftab = face_table(m)
    found = None
    for x in vertex_darts:
        if ftab[m.sigma[x]] in m.holes:
            if found is not None:
                raise MapError(
                    f"vertex has two boundary corners (darts {found} and {x})")
            found = x
    return found


def build_map(dart_count: int,
              alpha: Sequence[int],
              sigma: Sequence[int],
              labels: Optional[Sequence[CurveLabel]] = None,
              hole_faces: Iterable[int] = (),
              allow_disconnected: bool = False) -> CombMap:
    """Validate and construct a CombMap.

    ``labels`` may be None (all edges boundary-plain), per-dart, or per-edge
    keyed by edge id via a dict.  ``hole_faces`` holds face ids (smallest dart
    of the orbit).
    """
    if len(alpha) != dart_count or len(sigma) != dart_count:
        raise MapError("alpha/sigma size does not match dart count")
    if sorted(alpha) != list(range(dart_count)):
        raise MapError("alpha is not a permutation")
    if sorted(sigma) != list(range(dart_count)):
        raise MapError("sigma is not a permutation")
    for d in range(dart_count):
        if alpha[d] == d or alpha[alpha[d]] != d:
            raise NonInvolution(f"alpha is not a fixed-point-free involution at dart {d}")
    if not allow_disconnected and not _is_connected(alpha, sigma):
        raise DisconnectedUnlessFlagged(
            "map is disconnected and not flagged multi-component (dart 0)")

    if labels is None:
        lab = tuple(_BDY for _ in range(dart_count))
    elif isinstance(labels, dict):
        full = [_BDY] * dart_count
        for edge, lb in labels.items():
            full[edge] = lb
            full[alpha[edge]] = lb
        lab = tuple(full)
    else:
        lab = tuple(labels)
        if len(lab) != dart_count:
            raise LabelMismatch("per-dart labels do not match dart count")
        for d in range(dart_count):
            if lab[d] != lab[alpha[d]]:
                raise LabelMismatch(f"darts of one edge carry different labels at dart {d}")

    m = CombMap(tuple(alpha), tuple(sigma), lab, frozenset(hole_faces),
                allow_disconnected)
    ftab = face_table(m)
    valid_fids = {cyc[0] for cyc in faces(m)}
    for h in m.holes:
        if h not in valid_fids:
            raise MapError(f"hole id {h} is not a face id")
    for d in range(dart_count):
        if ftab[d] in m.holes and lab[d].kind is not CurveKind.BDY:
            raise LabelMismatch(f"edge bounding a hole is not labeled bdy at dart {d}")
    # A vertex lying on two boundary circles would pinch the surface.
    for vcyc in vertices(m):
        hole_corner_dart(m, vcyc, ftab)
    return m


def components(m: CombMap) -> list[CombMap]:
    """Connected components as separate maps with renumbered darts."""
    n = m.n_darts
    comp = [-1] * n
    ncomp = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        stack = [start]
        comp[start] = ncomp
        while stack:
            d = stack.pop()
            for nxt in (m.alpha[d], m.sigma[d]):
                if comp[nxt] < 0:
                    comp[nxt] = ncomp
                    stack.append(nxt)
        ncomp += 1
    if ncomp <= 1:
        return [m]
    ftab = face_table(m)
    out = []
    for c in range(ncomp):
        darts = [d for d in range(n) if comp[d] == c]
        new_id = {d: i for i, d in enumerate(darts)}
        alpha = tuple(new_id[m.alpha[d]] for d in darts)
        sigma = tuple(new_id[m.sigma[d]] for d in darts)
        labels = tuple(m.labels[d] for d in darts)
        sub = CombMap(alpha, sigma, labels, frozenset(), False)
        subftab = face_table(sub)
        subholes = frozenset(subftab[new_id[d]] for d in darts if ftab[d] in m.holes)
        out.append(CombMap(alpha, sigma, labels, subholes, False))
    return out


def euler_genus(m: CombMap) -> tuple[int, int, int]:
    """(chi, genus, boundary_count) of a connected map.

    chi = V - E + interior faces; boundary circles are the hole faces;
    genus from chi = 2 - 2g - b.
    """
    if not _is_connected(m.alpha, m.sigma):
        raise MapError("euler_genus requires a connected map")
    v = len(vertices(m))
    e = m.n_darts // 2
    f_int = len(faces(m)) - len(m.holes)
    chi = v - e + f_int
    b = len(m.holes)
    twog = 2 - b - chi
    if twog < 0 or twog % 2 != 0:
        raise NonIntegerGenus(f"chi={chi}, boundary={b} is not an orientable surface")
    return chi, twog // 2, b


@dataclass(frozen=True)
class EmbeddedCurve:
    """A simple curve drawn along map edges.

    ``edges`` are edge ids in traversal order; an open curve joins two
    distinct vertices, a closed one returns to its start.
    """

    edges: tuple[int, ...]
    closed: bool
    label: CurveLabel


def curve_dart_walk(m: CombMap, curve: EmbeddedCurve) -> list[int]:
    """Oriented dart sequence t_1..t_k traversing the curve.

    t_i is the dart of edge i at the vertex where the traversal enters it.
    Deterministic orientation: the walk starts with the smallest admissible
    dart.  Raises CurveNotEmbedded for non-paths and non-simple curves.
    """
    edges = list(curve.edges)
    if not edges:
        raise CurveNotEmbedded("curve has no edges")
    vtab = vertex_table(m)
    for e in edges:
        if not (0 <= e < m.n_darts) or m.edge_of(e) != e:
            raise CurveNotEmbedded(f"edge id {e} is not an edge of the map")
    if len(set(edges)) != len(edges):
        raise CurveNotEmbedded("curve repeats an edge")

    def darts_of(e):
        return (e, m.alpha[e])

    if len(edges) == 1:
        e = edges[0]
        d0, d1 = darts_of(e)
        if curve.closed:
            if vtab[d0] != vtab[d1]:
                raise CurveNotClosed(f"single-edge curve flagged closed does not loop (edge {e})")
            walk = [min(d0, d1)]
        else:
            if vtab[d0] == vtab[d1]:
                raise CurveNotEmbedded(f"open curve on a loop edge {e}")
            walk = [min(d0, d1)]
    else:
        # Orient the first edge away from the vertex shared with the second.
        shared01 = {vtab[d] for d in darts_of(edges[0])} & {vtab[d] for d in darts_of(edges[1])}
        if not shared01:
            raise CurveNotEmbedded("consecutive curve edges share no vertex")
        walk = []
        for i, e in enumerate(edges):
            d0, d1 = darts_of(e)
            if i == 0:
                s = min(shared01)
                if vtab[d1] == s and vtab[d0] != s:
                    walk.append(d0)
                elif vtab[d0] == s and vtab[d1] != s:
                    walk.append(d1)
                else:
                    # loop edge or both ends shared: orient so the smaller dart leads
                    walk.append(min(d0, d1))
            else:
                prev_end = vtab[m.alpha[walk[-1]]]
                if vtab[d0] == prev_end:
                    walk.append(d0)
                elif vtab[d1] == prev_end:
                    walk.append(d1)
                else:
                    raise CurveNotEmbedded(f"curve edges {edges[i-1]} and {e} do not chain")
    # Simplicity: traversal vertices must be distinct (up to closure).
    vseq = [vtab[walk[0]]] + [vtab[m.alpha[t]] for t in walk]
    if curve.closed:
        if vseq[0] != vseq[-1]:
            raise CurveNotClosed("closed curve does not return to its start")
        inner = vseq[:-1]
    else:
        if vseq[0] == vseq[-1]:
            raise CurveNotEmbedded("open curve returns to its start vertex")
        inner = vseq
    if len(set(inner)) != len(inner):
        raise CurveNotEmbedded("curve visits a vertex twice")
    return walk


@dataclass(frozen=True)
class CutResult:
    """Bookkeeping from cutting along a curve.

    Darts not on the curve keep their ids.  Each curve dart d acquires two
    copies: copy_p[d] == d (the corner side of the traversal) and copy_q[d]
    (fresh id).  For closed curves the two slit faces are recorded.
    """

    map: CombMap
    copy_p: dict[int, int]
    copy_q: dict[int, int]
    slit_p_face: Optional[int]
    slit_q_face: Optional[int]


def _rotation_at(m: CombMap, d: int) -> list[int]:
    rot = [d]
    x = m.sigma[d]
    while x != d:
        rot.append(x)
        x = m.sigma[x]
    return rot


def _cut_walk(m: CombMap, walk: Sequence[int], closed: bool,
              label_p: Optional[CurveLabel], label_q: Optional[CurveLabel],
              slits_are_holes: bool) -> CutResult:
    """Cut the map along an oriented dart walk.

    The P side of the slit is the corner side: at each traversal vertex the
    darts strictly sigma-between arrival and departure.  label_p / label_q
    replace the copies' labels (None keeps the original curve label).
    """
    n = m.n_darts
    k = len(walk)
    ftab = face_table(m)
    alpha = list(m.alpha)
    sigma = list(m.sigma)
    labels = list(m.labels)

    curve_darts = set()
    for t in walk:
        curve_darts.add(t)
        curve_darts.add(m.alpha[t])

    copy_p = {d: d for d in curve_darts}
    copy_q = {}
    nxt_id = n
    for t in walk:
        for d in (t, m.alpha[t]):
            copy_q[d] = nxt_id
            nxt_id += 1
    alpha.extend([0] * (nxt_id - n))
    sigma.extend([0] * (nxt_id - n))
    labels.extend([_BDY] * (nxt_id - n))
    for t in walk:
        qa, qb = copy_q[t], copy_q[m.alpha[t]]
        alpha[qa], alpha[qb] = qb, qa
        lab = labels[t] if label_q is None else label_q
        labels[qa] = labels[qb] = lab
        lab_p = labels[t] if label_p is None else label_p
        labels[t] = labels[m.alpha[t]] = lab_p

    def split_rotation(center_cycles: list[list[int]]):
        for cyc in center_cycles:
            for i, d in enumerate(cyc):
                sigma[d] = cyc[(i + 1) % len(cyc)]

    # Rewire sigma at every traversal vertex.
    arrivals = [m.alpha[t] for t in walk]
    if closed:
        pairs = [(arrivals[i], walk[(i + 1) % k]) for i in range(k)]
    else:
        pairs = [(arrivals[i], walk[i + 1]) for i in range(k - 1)]
    for a, dep in pairs:
        rot = _rotation_at(m, a)
        j = rot.index(dep)
        side_p = rot[1:j]          # strictly between arrival and departure
        side_q = rot[j + 1:]       # strictly between departure and arrival
        split_rotation([
            [copy_p[a]] + side_p + [copy_p[dep]],
            [copy_q[dep]] + side_q + [copy_q[a]],
        ])

    if not closed:
        # Start vertex: the slit runs from the first edge out through the
        # boundary corner; P is the side sigma-before the departure.
        t1 = walk[0]
        rot = _rotation_at(m, t1)
        x0 = hole_corner_dart(m, rot, ftab)
        if x0 is None:
            raise ArcEndpointNotOnBoundary(
                f"arc start vertex (dart {t1}) is not on the boundary")
        j = rot.index(x0)
        side_q = rot[1:j + 1]      # after departure, through the hole corner
        side_p = rot[j + 1:]       # before departure
        split_rotation([
            [copy_p[t1]] + side_p,
            [copy_q[t1]] + side_q,
        ])
        # End vertex: P is the side sigma-after the arrival.
        ak = m.alpha[walk[-1]]
        rot = _rotation_at(m, ak)
        xk = hole_corner_dart(m, rot, ftab)
        if xk is None:
            raise ArcEndpointNotOnBoundary(
                f"arc end vertex (dart {ak}) is not on the boundary")
        j = rot.index(xk)
        side_p = rot[1:j + 1]
        side_q = rot[j + 1:]
        split_rotation([
            [copy_p[ak]] + side_p,
            [copy_q[ak]] + side_q,
        ])

    connected = _is_connected(alpha, sigma)
    new_map = CombMap(tuple(alpha), tuple(sigma), tuple(labels), frozenset(),
                      allow_disconnected=not connected)
    new_ftab = face_table(new_map)
    holes = set()
    for d in range(n):
        if d in curve_darts:
            continue
        if ftab[d] in m.holes:
            holes.add(new_ftab[d])
    slit_p = slit_q = None
    if closed:
        # Slit corners: on P the corner (departure -> arrival) lies in the
        # face of the arrival copy; on Q in the face of the departure copy.
        slit_p = new_ftab[copy_p[arrivals[0]]]
        slit_q = new_ftab[copy_q[walk[0]]]
        if slits_are_holes:
            holes.add(slit_p)
            holes.add(slit_q)
    new_map = CombMap(new_map.alpha, new_map.sigma, new_map.labels,
                      frozenset(holes), allow_disconnected=not connected)
    return CutResult(new_map, copy_p, copy_q, slit_p, slit_q)


def cut_along(m: CombMap, curve: EmbeddedCurve) -> CombMap:
    """Cut the surface along an embedded curve.

    The curve is doubled and both copies become boundary; chi grows by 1 for
    an arc with endpoints on the boundary and is unchanged for a closed curve.
    """
    walk = curve_dart_walk(m, curve)
    res = _cut_walk(m, walk, curve.closed, _BDY, _BDY, slits_are_holes=True)
    return res.map


def surger(m: CombMap, curve: EmbeddedCurve) -> CombMap:
    """Spherical rearrangement: cut along a closed curve and cap both new
    boundary circles with disks (chi += 2)."""
    if not curve.closed:
        raise CurveNotClosed("surgery requires a closed curve")
    walk = curve_dart_walk(m, curve)
    res = _cut_walk(m, walk, True, _BDY, _BDY, slits_are_holes=False)
    return res.map


def mirror_map(m: CombMap) -> CombMap:
    """The same surface with reversed orientation (sigma inverted)."""
    n = m.n_darts
    inv = [0] * n
    for d in range(n):
        inv[m.sigma[d]] = d
    mm = CombMap(m.alpha, tuple(inv), m.labels, frozenset(), m.allow_disconnected)
    ftab_old = face_table(m)
    ftab_new = face_table(mm)
    holes = frozenset(ftab_new[m.alpha[d]] for d in range(n) if ftab_old[d] in m.holes)
    return CombMap(m.alpha, tuple(inv), m.labels, holes, m.allow_disconnected)


def _trace_from(m: CombMap, root: int, hole_bit: Sequence[int],
                best: Optional[list]) -> Optional[list]:
    """BFS relabeling trace from a root dart (visit sigma then alpha).

    Returns the trace if it is lexicographically smaller than ``best``
    (always when best is None), else None; comparison aborts early."""
    n = m.n_darts
    new_id = [-1] * n
    order = [root]
    new_id[root] = 0
    head = 0
    while head < len(order):
        d = order[head]
        head += 1
        s = m.sigma[d]
        if new_id[s] < 0:
            new_id[s] = len(order)
            order.append(s)
        a = m.alpha[d]
        if new_id[a] < 0:
            new_id[a] = len(order)
            order.append(a)
    out = []
    undecided = best is not None
    for i, d in enumerate(order):
        atom = (new_id[m.sigma[d]], new_id[m.alpha[d]],
                _KIND_ORD[m.labels[d].kind], hole_bit[d])
        if undecided:
            ref = best[i]
            if atom > ref:
                return None
            if atom < ref:
                undecided = False
        out.append(atom)
    if undecided:
        return None  # equal to the current best
    return out


def canonical_code(m: CombMap, mirror: bool = True) -> bytes:
    """Label-aware canonical form of a connected map.

    BFS relabeling from every root dart, on the map and (when ``mirror``)
    also on the orientation-reversed map; the lexicographically least trace
    is serialized.  Codes are equal iff the maps are isomorphic through a
    label-kind-preserving homeomorphism (orientation-reversing ones allowed
    iff ``mirror``).
    """
    if m.n_darts == 0:
        return b"cm1|empty"
    variants = [m] + ([mirror_map(m)] if mirror else [])
    best = None
    for mv in variants:
        ftab = face_table(mv)
        hole_bit = [1 if ftab[d] in mv.holes else 0 for d in range(mv.n_darts)]
        for root in range(mv.n_darts):
            tr = _trace_from(mv, root, hole_bit, best)
            if tr is not None:
                best = tr
    flat = ";".join(f"{s},{a},{k},{h}" for s, a, k, h in best)
    tag = "dih" if mirror else "rot"
    return f"cm1[{tag}]|n={m.n_darts}|{flat}".encode("ascii")


# ---------------------------------------------------------------------------
# JSON map format
# ---------------------------------------------------------------------------

def map_to_json(m: CombMap) -> dict:
    """JSON-ready dict: hole/edge ids are the smallest dart of the orbit;
    edges missing from "labels" are boundary."""
    labels = []
    for e in m.edge_ids():
        lb = m.labels[e]
        if lb.kind is not CurveKind.BDY:
            labels.append({"edge": e, "kind": lb.kind.value, "index": lb.index})
    return {
        "darts": m.n_darts,
        "alpha": list(m.alpha),
        "sigma": list(m.sigma),
        "labels": labels,
        "holes": sorted(m.holes),
    }


def map_from_json(obj: dict, allow_disconnected: bool = False) -> CombMap:
    n = obj["darts"]
    alpha = obj["alpha"]
    lab = {}
    for item in obj.get("labels", []):
        kind = _KIND_BY_JSON.get(item["kind"])
        if kind is None:
            raise MapError(f"unknown label kind {item['kind']!r}")
        lab[item["edge"]] = CurveLabel(kind, item.get("index"))
    return build_map(n, alpha, obj["sigma"], lab, obj.get("holes", ()),
                     allow_disconnected=allow_disconnected)


def map_dumps(m: CombMap) -> str:
    return json.dumps(map_to_json(m), indent=1, sort_keys=True)
