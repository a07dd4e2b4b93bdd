"""Exhaustive tallies of pointed rooted quadrangulations by root distance."""
from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from maplab.canonical import canonical_code
from maplab.closure import cvs_closure
from maplab.combinatorial_map import CombinatorialMap
from maplab.errors import ConstructionError
from maplab.trees import MAX_EDGES, LabeledPlaneTree, enumerate_trees
from series import SeriesFamily
from twopoint.baseline import pointed_rooted_count, rooted_quadrangulation_count

logger = logging.getLogger(__name__)


@dataclass
class TwoPointTally:
    """Deduplicated counts at a fixed number of faces.

    ``by_distance[k]`` counts maps with the root vertex at distance ``k >= 1``
    from the pointed vertex; ``first_category[k]`` those among them whose
    root edge points towards the pointed vertex.
    """

    faces: int
    by_distance: Dict[int, int] = field(default_factory=dict)
    first_category: Dict[int, int] = field(default_factory=dict)
    distance_zero: int = 0
    total: int = 0
    rooted_total: int = 0


@dataclass(frozen=True)
class TallyRow:
    n: int
    k: int
    count: int
    series_coefficient: int

    @property
    def match(self) -> bool:
        return self.count == self.series_coefficient


def _classify(m: CombinatorialMap) -> Tuple[int, bool]:
    dist = m.pointed_distances()
    k = dist[m.root_vertex]
    return k, k >= 1 and dist[m.root_endpoint] == k - 1


def _close_chunk(trees: List[LabeledPlaneTree]) -> Tuple[Dict[bytes, Tuple[int, bool]], set]:
    pointed: Dict[bytes, Tuple[int, bool]] = {}
    rooted = set()
    for tree in trees:
        m = cvs_closure(tree)
        pointed[canonical_code(m)] = _classify(m)
        rooted.add(canonical_code(m, pointed=False))
    return pointed, rooted


def _chunks(items: List[LabeledPlaneTree], parts: int) -> List[List[LabeledPlaneTree]]:
    parts = max(1, parts)
    return [items[i::parts] for i in range(parts)]


def tally_two_point(n: int, workers: int = 4, max_faces: int = MAX_EDGES) -> TwoPointTally:
    """Close every labeled tree with ``n`` edges, dedupe and tally by distance.

    The tree stream is split across a thread pool; partial code tables are
    merged at the end. Totals are checked against the closed-form counts.
    """
    trees = list(enumerate_trees(n, max_faces))
    codes: Dict[bytes, Tuple[int, bool]] = {}
    rooted = set()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        for part_codes, part_rooted in executor.map(_close_chunk, _chunks(trees, workers)):
            codes.update(part_codes)
            rooted |= part_rooted

    tally = TwoPointTally(faces=n)
    by_distance: Counter = Counter()
    first: Counter = Counter()
    for k, is_first in codes.values():
        if k == 0:
            tally.distance_zero += 1
            continue
        by_distance[k] += 1
        if is_first:
            first[k] += 1
    tally.by_distance = dict(sorted(by_distance.items()))
    tally.first_category = dict(sorted(first.items()))
    tally.total = len(codes)
    tally.rooted_total = len(rooted)

    if tally.total != pointed_rooted_count(n):
        raise ConstructionError(
            f"{tally.total} pointed rooted maps with {n} faces, expected {pointed_rooted_count(n)}"
        )
    if tally.rooted_total != rooted_quadrangulation_count(n):
        raise ConstructionError(
            f"{tally.rooted_total} rooted maps with {n} faces, "
            f"expected {rooted_quadrangulation_count(n)}"
        )
    logger.info("tallied %d pointed rooted maps with %d faces", tally.total, n)
    return tally


def tally_rows(tally: TwoPointTally, G: SeriesFamily) -> List[TallyRow]:
    """Per-distance comparison with ``[g^n] G_k`` for ``k = 1..n+1``."""
    n = tally.faces
    rows = []
    for k in range(1, n + 2):
        coefficient = int(G[k][n]) if k <= G.K else 0
        rows.append(TallyRow(n, k, tally.by_distance.get(k, 0), coefficient))
    return rows


def slice_rows(tally: TwoPointTally, R: SeriesFamily) -> List[TallyRow]:
    """First-category counts against ``[g^n](R_k - R_{k-1})``."""
    n = tally.faces
    rows = []
    for k in range(1, n + 2):
        coefficient = int(R[k][n] - R[k - 1][n]) if k <= R.K else 0
        rows.append(TallyRow(n, k, tally.first_category.get(k, 0), coefficient))
    return rows


def pointed_rooted_maps(n: int, max_faces: int = MAX_EDGES,
                        first_category: Optional[bool] = None) -> Iterator[CombinatorialMap]:
    """Deduplicated closures with ``n`` faces, optionally filtered by category."""
    seen = set()
    for tree in enumerate_trees(n, max_faces):
        m = cvs_closure(tree)
        code = canonical_code(m)
        if code in seen:
            continue
        seen.add(code)
        if first_category is not None and _classify(m)[1] != first_category:
            continue
        yield m
