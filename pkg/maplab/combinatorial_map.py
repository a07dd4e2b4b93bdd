"""Planar maps encoded by two permutations on darts.

``alpha`` pairs the two darts of every edge and ``sigma`` gives the next dart
counterclockwise around the dart's origin. Faces are the cycles of
``phi = sigma o alpha``; the face of a dart lies on its right.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from maplab.errors import MapError

logger = logging.getLogger(__name__)


def _orbits(perm: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = perm[d]
        out.append(tuple(cycle))
    return tuple(out)


@dataclass(frozen=True)
class CombinatorialMap:
    """A rooted, optionally pointed, planar map.

    ``pointed`` is any dart whose origin is the pointed vertex.
    """

    alpha: Tuple[int, ...]
    sigma: Tuple[int, ...]
    root: int = 0
    pointed: Optional[int] = None

    def __post_init__(self) -> None:
        alpha, sigma = tuple(self.alpha), tuple(self.sigma)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "sigma", sigma)
        n = len(alpha)
        if n == 0 or n % 2 or len(sigma) != n:
            raise MapError(f"need an even, matching number of darts, got {n} and {len(sigma)}")
        if sorted(sigma) != list(range(n)):
            raise MapError("sigma is not a permutation of the darts")
        for d, e in enumerate(alpha):
            if not 0 <= e < n or e == d or alpha[e] != d:
                raise MapError(f"alpha is not a fixed-point-free involution at dart {d}")
        for name, d in (("root", self.root), ("pointed", self.pointed)):
            if d is not None and not 0 <= d < n:
                raise MapError(f"{name} dart {d} out of range")
        if not self._connected():
            raise MapError("map is not connected")

    def _connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            d = queue.popleft()
            for e in (self.alpha[d], self.sigma[d]):
                if e not in seen:
                    seen.add(e)
                    queue.append(e)
        return len(seen) == len(self.alpha)

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_edge_list(
        cls,
        edges: Sequence[Tuple[object, object]],
        rotations: Mapping[object, Sequence[int]],
        root: int = 0,
        pointed: object = None,
    ) -> "CombinatorialMap":
        """Build a map from labelled edges and counterclockwise rotations.

        Edge ``i = (u, v)`` owns dart ``2i`` from ``u`` to ``v`` and dart
        ``2i + 1`` back. ``rotations[u]`` lists the darts leaving ``u``.
        ``pointed`` is a vertex label.
        """
        n = 2 * len(edges)
        alpha = [d ^ 1 for d in range(n)]
        sigma = [-1] * n
        origin = {}
        for i, (u, v) in enumerate(edges):
            origin[2 * i] = u
            origin[2 * i + 1] = v
        for vertex, darts in rotations.items():
            for j, d in enumerate(darts):
                if origin.get(d) != vertex:
                    raise MapError(f"dart {d} does not leave vertex {vertex!r}")
                if sigma[d] != -1:
                    raise MapError(f"dart {d} listed twice")
                sigma[d] = darts[(j + 1) % len(darts)]
        if -1 in sigma:
            raise MapError(f"darts missing from the rotations: {[d for d in range(n) if sigma[d] == -1]}")
        pointed_dart = None
        if pointed is not None:
            pointed_dart = rotations[pointed][0]
        return cls(tuple(alpha), tuple(sigma), root, pointed_dart)

    def with_root(self, root: int) -> "CombinatorialMap":
        return replace(self, root=root)

    def with_pointed(self, dart: Optional[int]) -> "CombinatorialMap":
        return replace(self, pointed=dart)

    def relabel(self, perm: Sequence[int]) -> "CombinatorialMap":
        """The same map with dart ``d`` renamed ``perm[d]``."""
        n = len(self.alpha)
        alpha = [0] * n
        sigma = [0] * n
        for d in range(n):
            alpha[perm[d]] = perm[self.alpha[d]]
            sigma[perm[d]] = perm[self.sigma[d]]
        pointed = perm[self.pointed] if self.pointed is not None else None
        return CombinatorialMap(tuple(alpha), tuple(sigma), perm[self.root], pointed)

    # ------------------------------------------------------------------
    # permutations and cells
    # ------------------------------------------------------------------
    @property
    def dart_count(self) -> int:
        return len(self.alpha)

    @property
    def edge_count(self) -> int:
        return len(self.alpha) // 2

    def phi(self, d: int) -> int:
        return self.sigma[self.alpha[d]]

    @cached_property
    def sigma_inverse(self) -> Tuple[int, ...]:
        inv = [0] * len(self.sigma)
        for d, e in enumerate(self.sigma):
            inv[e] = d
        return tuple(inv)

    @cached_property
    def vertices(self) -> Tuple[Tuple[int, ...], ...]:
        """Counterclockwise dart cycles, one per vertex."""
        return _orbits(self.sigma)

    @cached_property
    def faces(self) -> Tuple[Tuple[int, ...], ...]:
        return _orbits([self.sigma[self.alpha[d]] for d in range(len(self.alpha))])

    @cached_property
    def vertex_of(self) -> Tuple[int, ...]:
        out = [0] * len(self.alpha)
        for v, cycle in enumerate(self.vertices):
            for d in cycle:
                out[d] = v
        return tuple(out)

    @cached_property
    def face_of(self) -> Tuple[int, ...]:
        out = [0] * len(self.alpha)
        for f, cycle in enumerate(self.faces):
            for d in cycle:
                out[d] = f
        return tuple(out)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    def is_planar(self) -> bool:
        return self.euler_characteristic() == 2

    def face_degrees(self) -> List[int]:
        return [len(f) for f in self.faces]

    def origin(self, d: int) -> int:
        return self.vertex_of[d]

    def head(self, d: int) -> int:
        return self.vertex_of[self.alpha[d]]

    def edge_key(self, d: int) -> int:
        """One id per edge: the smaller of its two darts."""
        return min(d, self.alpha[d])

    def rotation(self, d: int) -> List[int]:
        """Darts around the origin of ``d``, counterclockwise, starting at ``d``."""
        out = [d]
        e = self.sigma[d]
        while e != d:
            out.append(e)
            e = self.sigma[e]
        return out

    def face_cycle(self, d: int) -> List[int]:
        out = [d]
        e = self.phi(d)
        while e != d:
            out.append(e)
            e = self.phi(e)
        return out

    @property
    def root_vertex(self) -> int:
        return self.origin(self.root)

    @property
    def root_endpoint(self) -> int:
        return self.head(self.root)

    @property
    def root_face(self) -> int:
        return self.face_of[self.root]

    @property
    def pointed_vertex(self) -> Optional[int]:
        return self.origin(self.pointed) if self.pointed is not None else None

    # ------------------------------------------------------------------
    # graph view
    # ------------------------------------------------------------------
    @cached_property
    def graph(self) -> nx.MultiGraph:
        """Underlying multigraph; one edge per dart pair, keyed by ``edge_key``."""
        G = nx.MultiGraph()
        G.add_nodes_from(range(self.vertex_count))
        for d in range(len(self.alpha)):
            if d < self.alpha[d]:
                G.add_edge(self.origin(d), self.head(d), key=d, darts=(d, self.alpha[d]))
        return G

    def distances_from(self, vertex: int) -> Dict[int, int]:
        return dict(nx.single_source_shortest_path_length(self.graph, vertex))

    def pointed_distances(self) -> Dict[int, int]:
        if self.pointed is None:
            raise MapError("map is not pointed")
        return self.distances_from(self.pointed_vertex)


def root_edge_map() -> CombinatorialMap:
    """The single-edge map: two vertices, one face of degree 2."""
    return CombinatorialMap((1, 0), (0, 1), root=0, pointed=1)


def kept_darts(m: CombinatorialMap, faces: Iterable[int]) -> List[int]:
    """Darts of the edges bordering at least one of ``faces``, in increasing order."""
    region = set(faces)
    keep = set()
    for d in range(m.dart_count):
        if m.face_of[d] in region:
            keep.add(d)
            keep.add(m.alpha[d])
    return sorted(keep)


def restrict(m: CombinatorialMap, faces: Iterable[int], root: int) -> CombinatorialMap:
    """The submap made of ``faces``; everything outside merges into new boundary faces.

    Dart ``kept_darts(m, faces)[i]`` becomes dart ``i``. Faces of the region
    keep their cycles; ``root`` must border the region.
    """
    darts = kept_darts(m, faces)
    if not darts:
        raise MapError("cannot restrict to an empty set of faces")
    new_id = {d: i for i, d in enumerate(darts)}
    if root not in new_id:
        raise MapError(f"root dart {root} does not border the region")
    alpha = tuple(new_id[m.alpha[d]] for d in darts)
    sigma = []
    for d in darts:
        e = m.sigma[d]
        while e not in new_id:
            e = m.sigma[e]
        sigma.append(new_id[e])
    pointed = new_id.get(m.pointed) if m.pointed is not None else None
    return CombinatorialMap(alpha, tuple(sigma), new_id[root], pointed)


def flood_faces(m: CombinatorialMap, seed: int, blocked_edges: Iterable[int],
                stop_faces: Iterable[int] = ()) -> frozenset:
    """Faces reachable from ``seed`` without crossing ``blocked_edges`` (edge keys)."""
    blocked = set(blocked_edges)
    stop = set(stop_faces)
    if seed in stop:
        raise MapError(f"seed face {seed} is excluded")
    seen = {seed}
    queue = deque([seed])
    while queue:
        f = queue.popleft()
        for d in m.faces[f]:
            if m.edge_key(d) in blocked:
                continue
            g = m.face_of[m.alpha[d]]
            if g not in seen and g not in stop:
                seen.add(g)
                queue.append(g)
    return frozenset(seen)
