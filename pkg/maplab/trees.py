"""Well-labeled plane trees, the input side of the closure bijection."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from maplab.errors import MapError

logger = logging.getLogger(__name__)

MAX_EDGES = 8


@dataclass(frozen=True)
class LabeledPlaneTree:
    """Plane tree rooted at vertex 0 with ordered children and integer labels.

    ``root_corner`` indexes the contour; ``epsilon`` orients the root edge of
    the closed map.
    """

    children: Tuple[Tuple[int, ...], ...]
    labels: Tuple[int, ...]
    epsilon: int = 1
    root_corner: int = 0

    def __post_init__(self) -> None:
        if len(self.children) != len(self.labels):
            raise MapError("one label per vertex is required")
        if self.epsilon not in (1, -1):
            raise MapError(f"epsilon must be +1 or -1, got {self.epsilon}")
        for v, kids in enumerate(self.children):
            for c in kids:
                if abs(self.labels[c] - self.labels[v]) > 1:
                    raise MapError(f"labels jump by more than 1 on edge {v}-{c}")
        if min(self.labels) != 1:
            raise MapError(f"minimum label must be 1, got {min(self.labels)}")
        if not 0 <= self.root_corner < max(1, 2 * self.edge_count):
            raise MapError(f"root corner {self.root_corner} out of range")

    @property
    def edge_count(self) -> int:
        return len(self.children) - 1

    def contour(self) -> List[int]:
        """Vertices of the ``2n`` corners in contour order, starting at the root corner."""
        tour = [0]
        stack = [(0, iter(self.children[0]))]
        while stack:
            v, it = stack[-1]
            child = next(it, None)
            if child is None:
                stack.pop()
                if stack:
                    tour.append(stack[-1][0])
            else:
                tour.append(child)
                stack.append((child, iter(self.children[child])))
        corners = tour[:-1]
        return corners[self.root_corner:] + corners[: self.root_corner]


def plane_trees(n: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """All plane trees with ``n`` edges as child tuples, via Dyck words."""

    def dyck(opened: int, closed: int, word: List[int]) -> Iterator[List[int]]:
        if closed == n:
            yield word
            return
        if opened < n:
            yield from dyck(opened + 1, closed, word + [1])
        if closed < opened:
            yield from dyck(opened, closed + 1, word + [-1])

    for word in dyck(0, 0, []):
        children: List[List[int]] = [[]]
        stack = [0]
        for step in word:
            if step == 1:
                children.append([])
                child = len(children) - 1
                children[stack[-1]].append(child)
                stack.append(child)
            else:
                stack.pop()
        yield tuple(tuple(c) for c in children)


def _parents(children: Tuple[Tuple[int, ...], ...]) -> List[int]:
    parent = [-1] * len(children)
    for v, kids in enumerate(children):
        for c in kids:
            parent[c] = v
    return parent


def enumerate_trees(n: int, max_edges: int = MAX_EDGES) -> Iterator[LabeledPlaneTree]:
    """Every well-labeled plane tree with ``n`` edges, with both signs.

    Yields ``Catalan(n) * 3^n * 2`` trees.
    """
    if not 1 <= n <= min(max_edges, MAX_EDGES):
        raise MapError(f"tree size must lie in 1..{min(max_edges, MAX_EDGES)}, got {n}")
    count = 0
    for children in plane_trees(n):
        parent = _parents(children)
        # children are numbered after their parent, so one pass fixes all labels
        for steps in itertools.product((-1, 0, 1), repeat=n):
            raw = [0] * (n + 1)
            for v in range(1, n + 1):
                raw[v] = raw[parent[v]] + steps[v - 1]
            shift = 1 - min(raw)
            labels = tuple(x + shift for x in raw)
            for epsilon in (1, -1):
                count += 1
                yield LabeledPlaneTree(children, labels, epsilon)
    logger.debug("enumerated %d labeled trees with %d edges", count, n)
