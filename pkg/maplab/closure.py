"""Closure of a well-labeled tree into a pointed rooted quadrangulation.

Every corner of label ``l`` is joined to the next corner of label ``l - 1``
along the contour, or to an extra vertex of label 0 when ``l = 1``; the tree
edges are then dropped. The contour runs with the tree's outer face on its
right, so inside one corner the received chords come first, by decreasing
contour offset, and the emitted chord comes last.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Optional

from maplab.combinatorial_map import CombinatorialMap
from maplab.errors import ConstructionError
from maplab.trees import LabeledPlaneTree

logger = logging.getLogger(__name__)


def _successors(labels: List[int]) -> List[Optional[int]]:
    m = len(labels)
    out: List[Optional[int]] = []
    for i, label in enumerate(labels):
        if label == 1:
            out.append(None)
            continue
        for step in range(1, m):
            j = (i + step) % m
            if labels[j] == label - 1:
                out.append(j)
                break
        else:
            raise ConstructionError(f"corner {i} with label {label} has no successor")
    return out


def cvs_closure(tree: LabeledPlaneTree) -> CombinatorialMap:
    """Close ``tree``; the result is checked to be a planar quadrangulation whose
    BFS distances from the pointed vertex are the tree labels.

    Chord ``i`` leaves corner ``i`` as dart ``2i`` and arrives as ``2i + 1``.
    With ``epsilon = +1`` the root is the chord of the root corner pointing
    towards its successor, with ``epsilon = -1`` the reverse dart.
    """
    corners = tree.contour()
    m = len(corners)
    labels = [tree.labels[v] for v in corners]
    succ = _successors(labels)

    received: Dict[int, List[int]] = {i: [] for i in range(m)}
    for i, j in enumerate(succ):
        if j is not None:
            received[j].append(i)

    pointed = len(tree.labels)
    rotations: Dict[int, List[int]] = {v: [] for v in range(pointed + 1)}
    for i, v in enumerate(corners):
        incoming = sorted(received[i], key=lambda c: (c - i) % m, reverse=True)
        rotations[v].extend(2 * c + 1 for c in incoming)
        rotations[v].append(2 * i)
    rotations[pointed] = [2 * i + 1 for i in range(m - 1, -1, -1) if succ[i] is None]

    alpha = [d ^ 1 for d in range(2 * m)]
    sigma = [0] * (2 * m)
    for darts in rotations.values():
        for k, d in enumerate(darts):
            sigma[d] = darts[(k + 1) % len(darts)]
    root = 0 if tree.epsilon == 1 else 1
    qmap = CombinatorialMap(tuple(alpha), tuple(sigma), root, rotations[pointed][0])

    if not qmap.is_planar():
        raise ConstructionError(f"closure has Euler characteristic {qmap.euler_characteristic()}")
    if any(deg != 4 for deg in qmap.face_degrees()):
        raise ConstructionError(f"closure has face degrees {qmap.face_degrees()}")
    if qmap.face_count != tree.edge_count:
        raise ConstructionError(f"closure has {qmap.face_count} faces for {tree.edge_count} tree edges")
    dist = qmap.pointed_distances()
    for v in range(pointed):
        if dist[qmap.origin(rotations[v][0])] != tree.labels[v]:
            raise ConstructionError(f"tree vertex {v} sits at distance "
                                    f"{dist[qmap.origin(rotations[v][0])]}, label {tree.labels[v]}")
    return qmap
