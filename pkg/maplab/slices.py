"""Slices: cutting a pointed rooted quadrangulation along its leftmost geodesic."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from maplab.combinatorial_map import CombinatorialMap
from maplab.errors import ConstructionError, MapError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SliceCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class SliceView:
    """A map whose root face is the slice boundary.

    Going around the root face from the root dart: the root edge, the right
    boundary up to the apex, then the left boundary back down to the root
    vertex. ``left_boundary`` holds its darts from the root vertex upwards.
    """

    map: CombinatorialMap
    apex: int
    root_vertex: int
    left_boundary: Tuple[int, ...]
    right_boundary: Tuple[int, ...]

    @property
    def ell(self) -> int:
        return len(self.left_boundary)

    @property
    def root_endpoint(self) -> int:
        return self.map.root_endpoint

    @cached_property
    def distances(self) -> Dict[int, int]:
        """Graph distances from the apex."""
        return self.map.distances_from(self.apex)

    def left_vertex(self, i: int) -> int:
        """Left-boundary vertex at ``i`` steps from the root vertex."""
        m = self.map
        return m.origin(self.left_boundary[i]) if i < self.ell else self.apex


def leftmost_geodesic(m: CombinatorialMap, start: int, dist: Dict[int, int]) -> List[int]:
    """Darts of the leftmost shortest path down to distance 0, beginning with ``start``.

    At each vertex the darts are scanned clockwise from the reversed arrival
    dart and the first one stepping one unit closer is taken.
    """
    if dist[m.head(start)] != dist[m.origin(start)] - 1:
        raise MapError(f"dart {start} does not step towards distance 0")
    path = [start]
    while dist[m.head(path[-1])] > 0:
        back = m.alpha[path[-1]]
        target = dist[m.head(path[-1])] - 1
        d = m.sigma_inverse[back]
        while d != back and dist[m.head(d)] != target:
            d = m.sigma_inverse[d]
        if d == back:
            raise ConstructionError(f"no geodesic step from vertex {m.origin(back)}")
        path.append(d)
    return path


def cut_along(m: CombinatorialMap, path: Sequence[int]) -> Tuple[CombinatorialMap, List[int]]:
    """Open the sphere along a simple path ``f_1..f_k``.

    Every path edge gets a twin ``g_i`` (same direction) on the left of the
    path; interior path vertices split into a right copy (original darts) and
    a left copy (twin darts). The new face reads
    ``g_1 .. g_k, alpha(f_k) .. alpha(f_1)``. Returns the new map, rooted at
    ``g_1`` and pointed at the path's end, and the twin darts.
    """
    k = len(path)
    base = m.dart_count
    alpha = list(m.alpha) + [0] * (2 * k)
    sigma = list(m.sigma) + [0] * (2 * k)
    g = [base + 2 * i for i in range(k)]
    h = [base + 2 * i + 1 for i in range(k)]
    back = [m.alpha[f] for f in path]
    for gi, hi in zip(g, h):
        alpha[gi], alpha[hi] = hi, gi

    # start vertex: g_1 right after f_1
    sigma[g[0]] = m.sigma[path[0]]
    sigma[path[0]] = g[0]
    # end vertex: h_k right before alpha(f_k)
    pred = m.sigma_inverse[back[-1]]
    sigma[pred] = h[-1]
    sigma[h[-1]] = back[-1]

    for i in range(k - 1):
        out_dart, in_dart = path[i + 1], back[i]
        left: List[int] = []
        d = m.sigma[out_dart]
        while d != in_dart:
            left.append(d)
            d = m.sigma[d]
        right: List[int] = []
        d = m.sigma[in_dart]
        while d != out_dart:
            right.append(d)
            d = m.sigma[d]
        # right copy: in_dart, right..., out_dart
        chain = [in_dart] + right + [out_dart]
        for a, b in zip(chain, chain[1:] + chain[:1]):
            sigma[a] = b
        # left copy: g_{i+2}, left..., h_{i+1}
        chain = [g[i + 1]] + left + [h[i]]
        for a, b in zip(chain, chain[1:] + chain[:1]):
            sigma[a] = b

    cut = CombinatorialMap(tuple(alpha), tuple(sigma), g[0], back[-1])
    if cut.euler_characteristic() != m.euler_characteristic():
        raise ConstructionError("cutting along a path changed the Euler characteristic")
    return cut, g


def slice_from_root(m: CombinatorialMap, root: int | None = None) -> SliceView:
    """Read apex and boundaries off the root face of ``m``."""
    m = m if root is None else m.with_root(root)
    cycle = m.face_cycle(m.root)
    if len(cycle) % 2:
        raise MapError(f"root face has odd degree {len(cycle)}")
    ell = len(cycle) // 2
    apex_dart = cycle[ell]
    return SliceView(
        map=m.with_pointed(apex_dart),
        apex=m.origin(apex_dart),
        root_vertex=m.root_vertex,
        left_boundary=tuple(m.alpha[d] for d in reversed(cycle[ell:])),
        right_boundary=tuple(cycle[1:ell]),
    )


def extract_slice(m: CombinatorialMap) -> SliceView:
    """Cut a first-category pointed rooted quadrangulation into a slice.

    The cut follows the leftmost geodesic from the root vertex to the pointed
    vertex whose first step is the root edge; the pointed vertex becomes the
    apex and ``ell`` equals the root distance.
    """
    dist = m.pointed_distances()
    k = dist[m.root_vertex]
    if k < 1 or dist[m.root_endpoint] != k - 1:
        raise MapError("root edge does not point towards the pointed vertex")
    path = leftmost_geodesic(m, m.root, dist)
    cut, _ = cut_along(m, path)
    view = slice_from_root(cut)
    if view.left_boundary != tuple(path) or view.ell != k:
        raise ConstructionError("slice boundary does not follow the cut path")
    return view


def count_geodesics(m: CombinatorialMap, source: int, dist: Dict[int, int]) -> int:
    """Number of shortest paths from ``source`` to the distance-0 vertex, multi-edges counted."""
    ways: Dict[int, int] = {}
    for v in sorted((v for v in dist if dist[v] <= dist[source]), key=dist.get):
        if dist[v] == 0:
            ways[v] = 1
            continue
        total = 0
        for d in m.vertices[v]:
            u = m.head(d)
            if dist[u] == dist[v] - 1:
                total += ways[u]
        ways[v] = total
    return ways[source]


def validate_slice(s: SliceView) -> SliceCheck:
    """Check the slice conditions; never raises."""
    m = s.map
    ell = s.ell
    cycle = m.face_cycle(m.root)
    if len(cycle) != 2 * ell or len(s.right_boundary) != ell - 1:
        return SliceCheck(False, "boundary lengths do not match")
    if len({m.origin(d) for d in cycle}) != 2 * ell:
        return SliceCheck(False, "boundaries meet before the apex")
    root_face = m.root_face
    for f, darts in enumerate(m.faces):
        if f != root_face and len(darts) != 4:
            return SliceCheck(False, f"inner face of degree {len(darts)}")
    dist = s.distances
    if dist[s.root_vertex] != ell:
        return SliceCheck(False, f"root vertex at distance {dist[s.root_vertex]}, expected {ell}")
    if dist[s.root_endpoint] != ell - 1:
        return SliceCheck(False, f"root endpoint at distance {dist[s.root_endpoint]}, expected {ell - 1}")
    for i, d in enumerate(s.left_boundary):
        if dist[m.origin(d)] != ell - i or dist[m.head(d)] != ell - i - 1:
            return SliceCheck(False, "left boundary is not a geodesic")
    for i, d in enumerate(s.right_boundary):
        if dist[m.origin(d)] != ell - 1 - i or dist[m.head(d)] != ell - 2 - i:
            return SliceCheck(False, "right boundary is not a geodesic")
    if count_geodesics(m, s.root_endpoint, dist) != 1:
        return SliceCheck(False, "right boundary not unique")
    return SliceCheck(True)
