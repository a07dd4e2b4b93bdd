"""Decomposition of a slice along its dividing line.

Above the line, leftmost geodesics from the ``x_i`` cut ``p`` smaller slices.
Below it, the connections from the root vertex to the line (single edges to
some ``x_i``, two-step paths through some ``y`` to a ``v_j``) cut a sequence
of blocks; stripping the bundles along each block's left frontier leaves a
quadrangulation with a simple boundary satisfying Property 2.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from maplab.combinatorial_map import (
    CombinatorialMap,
    flood_faces,
    kept_darts,
    restrict,
    root_edge_map,
)
from maplab.dividing_line import DividingLine, dividing_line, lower_part
from maplab.errors import ConstructionError, MapError
from maplab.slices import SliceView, extract_slice, leftmost_geodesic, slice_from_root, validate_slice
from maplab.tally import pointed_rooted_maps
from maplab.trees import MAX_EDGES
from series import BiSeries
from twopoint.baseline import T_family, solve_R_family
from twopoint.kernel import solve_phi
from twopoint.recursion import block_weights, general_phi

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Frontier:
    """One connection from the root vertex to the line.

    ``kind`` is 1 for an edge to some ``x_i`` and 2 for a two-step path
    through ``head`` to some ``v_j``; darts are taken at both ends of the
    bundles performing the connection.
    """

    head: int
    kind: int
    rightmost: int
    leftmost: int
    v: Optional[int] = None
    v_rightmost: Optional[int] = None
    v_leftmost: Optional[int] = None

    def cut_darts(self) -> Tuple[int, ...]:
        darts = (self.rightmost, self.leftmost)
        if self.kind == 2:
            darts += (self.v_rightmost, self.v_leftmost)
        return darts


@dataclass(frozen=True)
class Block:
    """A stripped block: its type ``(a, a')`` and the submap left once the
    bundles of its left frontier are cut out. ``kept`` maps block darts back
    to slice darts. ``bundle_count`` is ``a'``, single edges included;
    ``nontrivial_bundles`` counts those holding at least one face."""

    types: Tuple[int, int]
    map: CombinatorialMap
    kept: Tuple[int, ...]
    bundle_count: int
    nontrivial_bundles: int

    @property
    def half_boundary(self) -> int:
        return len(self.map.face_cycle(self.map.root)) // 2

    @property
    def upper_slices(self) -> int:
        """Line steps ``v -> x`` on this block's boundary."""
        return self.half_boundary - self.types[1]


@dataclass(frozen=True)
class BlockDecomposition:
    a_sequence: Tuple[int, ...]
    blocks: Tuple[Block, ...]
    upper_slices: Tuple[SliceView, ...]
    leading_bundle: CombinatorialMap
    bundles: Tuple[CombinatorialMap, ...] = ()
    situation: str = "a"
    frontiers: Tuple[Frontier, ...] = ()

    @property
    def kind_counts(self) -> Tuple[int, int]:
        kinds = Counter(self.a_sequence[1:])
        return kinds[1], kinds[2]

    @property
    def heads(self) -> Tuple[int, ...]:
        """Frontier heads ``y_0, y_1, ...`` in slice vertex ids, ``y_0 = x_0``."""
        return tuple(fr.head for fr in self.frontiers)


def _frontiers(s: SliceView, line: DividingLine) -> List[Frontier]:
    m = s.map
    dist = s.distances
    ell = s.ell
    x_set, v_set = frozenset(line.x), frozenset(line.v)

    order: List[int] = []
    first: Dict[int, int] = {}
    last: Dict[int, int] = {}
    for d in m.rotation(m.root):
        w = m.head(d)
        if dist[w] != ell - 1:
            continue
        if w not in first:
            order.append(w)
            first[w] = d
        last[w] = d
    if not order or order[0] != line.x[0] or order[-1] != s.left_vertex(1):
        raise ConstructionError("root vertex connections do not run from x_0 to the left boundary")

    out = []
    for w in order:
        if w in x_set:
            out.append(Frontier(w, 1, first[w], last[w]))
            continue
        right = _scan(m, m.alpha[first[w]], v_set, clockwise=False)
        left = _scan(m, m.alpha[last[w]], v_set, clockwise=True)
        if m.head(right) != m.head(left):
            raise ConstructionError(f"vertex {w} reaches two line vertices")
        out.append(Frontier(w, 2, first[w], last[w], m.head(right), right, left))
    return out


def _scan(m: CombinatorialMap, start: int, targets: FrozenSet[int], clockwise: bool) -> int:
    step = m.sigma_inverse if clockwise else m.sigma
    d = step[start]
    while d != start:
        if m.head(d) in targets:
            return d
        d = step[d]
    raise ConstructionError(f"vertex {m.origin(start)} has no neighbour on the line")


def _region_map(m: CombinatorialMap, seed_dart: int, root: int, blocked: Iterable[int],
                stop: Iterable[int]) -> Tuple[FrozenSet[int], CombinatorialMap, Tuple[int, ...]]:
    faces = flood_faces(m, m.face_of[m.alpha[seed_dart]], blocked, stop)
    return faces, restrict(m, faces, root), tuple(kept_darts(m, faces))


def check_property_two(block: CombinatorialMap, black: Set[int]) -> None:
    """Simple boundary, inner faces of degree 4, no inner edge between boundary
    vertices and no inner vertex next to two black boundary vertices."""
    outer = block.root_face
    boundary = block.face_cycle(block.root)
    on_boundary = {block.origin(d) for d in boundary}
    if len(on_boundary) != len(boundary):
        raise ConstructionError("block boundary is not simple")
    for f, darts in enumerate(block.faces):
        if f != outer and len(darts) != 4:
            raise ConstructionError(f"block face of degree {len(darts)}")
    for d in range(block.dart_count):
        if block.face_of[d] == outer or block.face_of[block.alpha[d]] == outer:
            continue
        if block.origin(d) in on_boundary and block.head(d) in on_boundary:
            raise ConstructionError("inner edge joins two boundary vertices of a block")
    black_boundary = black & on_boundary
    for w, darts in enumerate(block.vertices):
        if w in on_boundary:
            continue
        if len({block.head(d) for d in darts} & black_boundary) > 1:
            raise ConstructionError(f"inner vertex {w} neighbours two black boundary vertices")


def _upper_part(s: SliceView, line: DividingLine, lower: FrozenSet[int]) -> Tuple[List[SliceView], Set[int]]:
    m = s.map
    dist = s.distances
    paths = [leftmost_geodesic(m, line.darts[2 * i], dist) for i in range(line.p + 1)]
    if tuple(paths[0]) != s.right_boundary:
        raise ConstructionError("first upper path is not the right boundary")
    blocked = set(line.edge_keys(s))
    for path in paths:
        blocked |= {m.edge_key(d) for d in path}

    views = []
    covered: Set[int] = set()
    for j in range(1, line.p + 1):
        root = m.alpha[line.darts[2 * j - 1]]
        faces, sub, _ = _region_map(m, root, root, blocked, (m.root_face,))
        if faces & lower or faces & covered:
            raise ConstructionError(f"upper slice {j} overlaps another region")
        covered |= faces
        view = slice_from_root(sub)
        check = validate_slice(view)
        if not check:
            raise ConstructionError(f"upper slice {j} is not a slice: {check.reason}")
        if not 2 <= view.ell <= s.ell - 1:
            raise ConstructionError(f"upper slice {j} has ell={view.ell}")
        views.append(view)
    return views, covered


def decompose(s: SliceView, line: Optional[DividingLine] = None) -> BlockDecomposition:
    """Cut ``s`` into upper slices, a leading bundle, bundles and stripped blocks."""
    if s.ell < 2:
        raise MapError(f"decomposition needs ell >= 2, got {s.ell}")
    line = dividing_line(s) if line is None else line
    m = s.map
    stop = (m.root_face,)
    lower = lower_part(s, line)
    views, upper = _upper_part(s, line, lower)

    frontiers = _frontiers(s, line)
    cut = set(line.edge_keys(s))
    for fr in frontiers:
        cut |= {m.edge_key(d) for d in fr.cut_darts()}

    covered: Set[int] = set()

    def take(faces: FrozenSet[int]) -> None:
        if faces & covered or not faces <= lower:
            raise ConstructionError("lower regions overlap or leave the lower part")
        covered.update(faces)

    leading = root_edge_map()
    if m.edge_key(m.root) != m.edge_key(frontiers[0].leftmost):
        faces, leading, _ = _region_map(m, m.root, m.root, cut, stop)
        take(faces)

    bundles = []
    for fr in frontiers[1:]:
        pairs = [(fr.rightmost, fr.leftmost)]
        if fr.kind == 2:
            pairs.append((fr.v_rightmost, fr.v_leftmost))
        for right, left in pairs:
            if m.edge_key(right) == m.edge_key(left):
                continue
            faces, bundle, _ = _region_map(m, right, right, cut, stop)
            take(faces)
            bundles.append(bundle)

    dist = s.distances
    a = [2] + [fr.kind for fr in frontiers[1:]]
    blocks = []
    for i in range(1, len(frontiers)):
        root = frontiers[i - 1].leftmost
        faces, sub, kept = _region_map(m, root, root, cut, stop)
        take(faces)
        black = {w for w, darts in enumerate(sub.vertices)
                 if dist[m.origin(kept[darts[0]])] % 2 == s.ell % 2}
        check_property_two(sub, black)
        fr = frontiers[i]
        nontrivial = 0
        if m.edge_key(fr.rightmost) != m.edge_key(fr.leftmost):
            nontrivial += 1
        if fr.kind == 2 and m.edge_key(fr.v_rightmost) != m.edge_key(fr.v_leftmost):
            nontrivial += 1
        blocks.append(Block((a[i - 1], a[i]), sub, kept, a[i], nontrivial))

    if covered != lower:
        raise ConstructionError("lower regions do not cover the lower part")
    inner = {f for f in range(m.face_count) if f != m.root_face}
    if covered | upper != inner:
        raise ConstructionError("upper and lower regions do not cover the slice")
    if sum(b.upper_slices for b in blocks) != line.p:
        raise ConstructionError("block boundaries do not account for every upper slice")
    if a[-1] != (1 if line.situation == "b" else 2):
        raise ConstructionError(f"sequence ends with {a[-1]} in situation {line.situation}")

    return BlockDecomposition(
        a_sequence=tuple(a),
        blocks=tuple(blocks),
        upper_slices=tuple(views),
        leading_bundle=leading,
        bundles=tuple(bundles),
        situation=line.situation,
        frontiers=tuple(frontiers),
    )


# ----------------------------------------------------------------------
# aggregate statistics against the general recursion
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SliceStats:
    ell: int
    blocks: int
    kinds: Tuple[int, int]
    upper: int
    situation: str


@dataclass(frozen=True)
class CountRow:
    k: int
    statistic: str
    value: Tuple[int, ...]
    count: int
    series_coefficient: int

    @property
    def match(self) -> bool:
        return self.count == self.series_coefficient


@dataclass
class DecompositionCounts:
    faces: int
    rows: List[CountRow] = field(default_factory=list)
    situations: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(row.match for row in self.rows)

    def mismatches(self) -> List[CountRow]:
        return [row for row in self.rows if not row.match]


def slice_statistics(n: int, max_faces: int = MAX_EDGES) -> List[SliceStats]:
    """Decompose every slice with ``n`` inner faces and ``ell >= 2``."""
    stats = []
    for qmap in pointed_rooted_maps(n, max_faces, first_category=True):
        view = extract_slice(qmap)
        if view.ell < 2:
            continue
        line = dividing_line(view)
        dec = decompose(view, line)
        stats.append(SliceStats(view.ell, len(dec.blocks), dec.kind_counts,
                                len(dec.upper_slices), dec.situation))
    logger.info("decomposed %d slices with %d faces", len(stats), n)
    return stats


def decomposition_counts(n: int, K: Optional[int] = None,
                         stats: Optional[List[SliceStats]] = None) -> DecompositionCounts:
    """Histograms of block count, block kinds and upper slice count for slices
    with ``2 <= ell <= k``, against the marked expansion of the general recursion."""
    K = n + 1 if K is None else K
    stats = slice_statistics(n) if stats is None else stats
    N = n
    R = solve_R_family(max(K, 2), N)
    T = T_family(R)
    R1 = R.entries[1]
    Phi = general_phi(solve_phi(N, N), R1)
    u = BiSeries.outer_variable_series("g", N, N, "u")

    out = DecompositionCounts(faces=n, situations=dict(Counter(st.situation for st in stats)))
    for k in range(2, K + 1):
        chosen = [st for st in stats if st.ell <= k]
        T_prev = T.entries[k - 1]
        weights = block_weights(Phi, R1, T_prev)
        X = weights.X

        out.rows.append(CountRow(k, "total", (), len(chosen), int(T.entries[k][n])))

        by_blocks = Counter(st.blocks for st in chosen)
        for b in range(1, n + 1):
            coefficient = int((R1 * X ** b)[n])
            if coefficient or by_blocks[b]:
                out.rows.append(CountRow(k, "blocks", (b,), by_blocks[b], coefficient))

        by_kinds = Counter(st.kinds for st in chosen)
        for b in range(1, n + 1):
            for m1 in range(b + 1):
                m2 = b - m1
                term = R1 * weights.W1 ** m1 * weights.W2 ** m2 * comb(b, m1)
                coefficient = int(term[n])
                if coefficient or by_kinds[(m1, m2)]:
                    out.rows.append(CountRow(k, "kinds", (m1, m2), by_kinds[(m1, m2)], coefficient))

        Phi_u = BiSeries(Phi.outer_degree,
                         tuple(Phi.coefficient(j) * T_prev ** j for j in range(Phi.outer_degree + 1)),
                         "u")
        X_u = u * (Phi_u * (R1 * T_prev)) + Phi_u * (R1 * R1)
        marked = (X_u * R1) / (1 - X_u)
        by_upper = Counter(st.upper for st in chosen)
        for p in range(0, n + 1):
            coefficient = int(marked.coefficient(p)[n])
            if coefficient or by_upper[p]:
                out.rows.append(CountRow(k, "upper", (p,), by_upper[p], coefficient))

    if not out.ok:
        logger.warning("%d decomposition count mismatches at n=%d", len(out.mismatches()), n)
    return out
