"""Canonical codes for rooted (and pointed) maps."""
from __future__ import annotations

from maplab.combinatorial_map import CombinatorialMap


def canonical_code(m: CombinatorialMap, pointed: bool = True) -> bytes:
    """Breadth-first renumbering of the darts from the root.

    Two maps get the same code iff they are isomorphic as rooted maps (and as
    pointed maps when ``pointed`` is set and the map carries a pointed vertex).
    """
    order = {m.root: 0}
    queue = [m.root]
    rows = []
    i = 0
    while i < len(queue):
        d = queue[i]
        i += 1
        for e in (m.sigma[d], m.alpha[d]):
            if e not in order:
                order[e] = len(queue)
                queue.append(e)
        rows.append(f"{order[m.sigma[d]]},{order[m.alpha[d]]}")
    mark = -1
    if pointed and m.pointed is not None:
        mark = min(order[d] for d in m.rotation(m.pointed))
    return (";".join(rows) + f"|{mark}").encode()
