"""The dividing line of a slice and the lower part it cuts off."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

from maplab.combinatorial_map import flood_faces
from maplab.errors import ConstructionError, MapError
from maplab.slices import SliceView

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DividingLine:
    """Vertices ``x_0, v_0, x_1, v_1, ..., x_p, v_p`` and the darts joining them.

    ``darts`` runs ``x_0 -> v_0, v_0 -> x_1, x_1 -> v_1, ...``; the ``x_i``
    sit at distance ``ell - 1`` from the apex, the ``v_i`` at ``ell - 2``.
    ``situation`` is ``"b"`` when ``x_p`` lies on the left boundary.
    """

    x: Tuple[int, ...]
    v: Tuple[int, ...]
    darts: Tuple[int, ...]
    situation: str = "a"

    @property
    def p(self) -> int:
        return len(self.x) - 1

    @property
    def vertices(self) -> Tuple[int, ...]:
        out: List[int] = []
        for xi, vi in zip(self.x, self.v):
            out += [xi, vi]
        return tuple(out)

    def edge_keys(self, s: SliceView) -> FrozenSet[int]:
        return frozenset(s.map.edge_key(d) for d in self.darts)


def _two_step(s: SliceView, ref: int, x_prev: int, v_prev: int) -> Tuple[int, int]:
    """Leftmost ``v -> x -> v'`` from the origin of ``ref``, both steps scanned clockwise."""
    m = s.map
    dist = s.distances
    ell = s.ell
    d1 = m.sigma_inverse[ref]
    while d1 != ref:
        if dist[m.head(d1)] == ell - 1 and m.head(d1) != x_prev:
            back = m.alpha[d1]
            d2 = m.sigma_inverse[back]
            while d2 != back:
                if dist[m.head(d2)] == ell - 2 and m.head(d2) != v_prev:
                    return d1, d2
                d2 = m.sigma_inverse[d2]
        d1 = m.sigma_inverse[d1]
    raise ConstructionError(f"no two-step continuation from vertex {m.origin(ref)}")


def dividing_line(s: SliceView) -> DividingLine:
    """Trace the line from the right boundary to the left one and check Property 1."""
    if s.ell < 2:
        raise MapError(f"dividing line needs ell >= 2, got {s.ell}")
    m = s.map
    first = s.right_boundary[0]
    x0, v0 = m.origin(first), m.head(first)
    if s.ell == 2:
        line = DividingLine((x0,), (v0,), (first,), "a")
        check_property_one(s, line)
        return line

    target = s.left_vertex(2)
    dist = s.distances
    xs, vs, darts = [x0], [v0], [first]
    ref = m.alpha[first]
    seen = {x0, v0}
    while vs[-1] != target:
        if len(darts) > 2 * m.vertex_count:
            raise ConstructionError("dividing line does not terminate")
        d1, d2 = _two_step(s, ref, xs[-1], vs[-1])
        x_next, v_next = m.head(d1), m.head(d2)
        if x_next in seen or v_next in seen:
            raise ConstructionError(f"dividing line loops back at step {len(xs)}")
        seen |= {x_next, v_next}
        xs.append(x_next)
        vs.append(v_next)
        darts += [d1, d2]
        ref = m.alpha[d2]

    for i, d in enumerate(darts):
        want = (s.ell - 1, s.ell - 2) if i % 2 == 0 else (s.ell - 2, s.ell - 1)
        if (dist[m.origin(d)], dist[m.head(d)]) != want:
            raise ConstructionError(f"line dart {i} does not alternate distances")
    situation = "b" if xs[-1] == s.left_vertex(1) else "a"
    line = DividingLine(tuple(xs), tuple(vs), tuple(darts), situation)
    check_property_one(s, line)
    logger.debug("dividing line with p=%d, situation %s", line.p, situation)
    return line


def lower_part(s: SliceView, line: DividingLine) -> FrozenSet[int]:
    """Faces on the root side of the line."""
    m = s.map
    return flood_faces(m, m.face_of[m.alpha[m.root]], line.edge_keys(s), (m.root_face,))


def interior_vertices(s: SliceView, faces: FrozenSet[int], exclude: FrozenSet[int]) -> List[int]:
    """Vertices all of whose corners lie in ``faces``, minus ``exclude``."""
    m = s.map
    return [
        v for v, darts in enumerate(m.vertices)
        if v not in exclude and all(m.face_of[d] in faces for d in darts)
    ]


def check_property_one(s: SliceView, line: DividingLine) -> None:
    """No edge inside the lower part joins two line vertices, and no vertex
    strictly inside it neighbours two distinct ``v_i``."""
    m = s.map
    lower = lower_part(s, line)
    on_line = frozenset(line.vertices)
    line_keys = line.edge_keys(s)
    for d in range(m.dart_count):
        if d > m.alpha[d] or m.edge_key(d) in line_keys:
            continue
        if m.face_of[d] in lower and m.face_of[m.alpha[d]] in lower:
            if m.origin(d) in on_line and m.head(d) in on_line:
                raise ConstructionError(
                    f"edge {m.origin(d)}-{m.head(d)} joins line vertices inside the lower part"
                )
    v_set = frozenset(line.v)
    for w in interior_vertices(s, lower, on_line):
        touched = {m.head(d) for d in m.vertices[w]} & v_set
        if len(touched) > 1:
            raise ConstructionError(f"vertex {w} neighbours line vertices {sorted(touched)}")

