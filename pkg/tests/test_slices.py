"""Tests for the dividing line and the block decomposition of slices."""

import os
import sys
from collections import Counter

import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from maplab import CombinatorialMap, ConstructionError, MapError, root_edge_map
from maplab.decomposition import (
    check_property_two,
    decompose,
    decomposition_counts,
    slice_statistics,
)
from maplab.dividing_line import dividing_line, lower_part
from maplab.export import slice_to_dot
from maplab.slices import extract_slice, slice_from_root, validate_slice
from maplab.tally import pointed_rooted_maps


def slices(n):
    return [extract_slice(m) for m in pointed_rooted_maps(n, first_category=True)]


@pytest.fixture(scope="module")
def small_slices():
    """Every slice with ell >= 2 and at most three inner faces."""
    out = []
    for n in (1, 2, 3):
        out += [s for s in slices(n) if s.ell >= 2]
    return out


@pytest.fixture(scope="module")
def four_face_slices():
    return [s for s in slices(4) if s.ell >= 2]


def hexagon_with_diagonal():
    """A hexagon split into two squares by a chord between opposite corners."""
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 3)]
    rotations = {0: [0, 12, 11], 1: [2, 1], 2: [4, 3], 3: [13, 5, 6], 4: [8, 7], 5: [10, 9]}
    return CombinatorialMap.from_edge_list(edges, rotations, root=0)


def square():
    edges = [(i, (i + 1) % 4) for i in range(4)]
    rotations = {0: [0, 7], 1: [2, 1], 2: [4, 3], 3: [6, 5]}
    return CombinatorialMap.from_edge_list(edges, rotations, root=0)


# ----------------------------------------------------------------------
# dividing line
# ----------------------------------------------------------------------
def test_line_needs_ell_two():
    """The single-edge slice has no dividing line."""
    with pytest.raises(MapError):
        dividing_line(slice_from_root(root_edge_map()))


def test_ell_two_line_is_right_boundary(small_slices):
    """For ell=2 the line is the single right-boundary edge."""
    for s in small_slices:
        if s.ell != 2:
            continue
        line = dividing_line(s)
        assert line.p == 0
        assert line.darts == s.right_boundary
        assert line.v == (s.apex,)


@pytest.mark.parametrize("which", ["small", "four"])
def test_line_structure(which, small_slices, four_face_slices):
    """Alternating distances, a simple path from x_0 ending on the left boundary."""
    pool = small_slices if which == "small" else four_face_slices
    seen_long = 0
    for s in pool:
        line = dividing_line(s)
        m = s.map
        dist = s.distances
        assert line.x[0] == s.root_endpoint
        assert line.v[-1] == s.left_vertex(2)
        assert all(dist[x] == s.ell - 1 for x in line.x)
        assert all(dist[v] == s.ell - 2 for v in line.v)
        assert len(set(line.vertices)) == len(line.vertices)
        assert len(line.darts) == 2 * line.p + 1
        for d, (a, b) in zip(line.darts, zip(line.vertices, line.vertices[1:])):
            assert (m.origin(d), m.head(d)) == (a, b)
        if s.ell >= 3:
            seen_long += 1
    assert seen_long > 0


def test_lower_part_holds_the_root(small_slices):
    """The root vertex's faces are all below the line."""
    for s in small_slices:
        m = s.map
        lower = lower_part(s, dividing_line(s))
        for d in m.vertices[s.root_vertex]:
            if m.face_of[d] != m.root_face:
                assert m.face_of[d] in lower


def test_situation_matches_left_boundary(four_face_slices):
    """Situation (b) exactly when x_p is the left-boundary vertex at distance ell - 1."""
    situations = Counter()
    for s in four_face_slices:
        line = dividing_line(s)
        situations[line.situation] += 1
        assert (line.situation == "b") == (line.x[-1] == s.left_vertex(1))
    assert sum(situations.values()) == len(four_face_slices)


# ----------------------------------------------------------------------
# decomposition
# ----------------------------------------------------------------------
def test_decompose_needs_ell_two():
    """The single-edge slice has nothing to decompose."""
    with pytest.raises(MapError):
        decompose(slice_from_root(root_edge_map()))


@pytest.mark.parametrize("which", ["small", "four"])
def test_decomposition_structure(which, small_slices, four_face_slices):
    """a_0 = 2, p upper slices of length 2..ell-1, one block per later frontier."""
    pool = small_slices if which == "small" else four_face_slices
    for s in pool:
        line = dividing_line(s)
        dec = decompose(s, line)
        assert dec.a_sequence[0] == 2
        assert set(dec.a_sequence) <= {1, 2}
        assert len(dec.blocks) == len(dec.a_sequence) - 1 >= 1
        assert len(dec.upper_slices) == line.p
        for view in dec.upper_slices:
            assert validate_slice(view).ok
            assert 2 <= view.ell <= s.ell - 1
        for i, block in enumerate(dec.blocks):
            assert block.types == (dec.a_sequence[i], dec.a_sequence[i + 1])
            assert block.half_boundary >= 2
        assert sum(b.upper_slices for b in dec.blocks) == line.p


def test_ell_two_blocks_are_squares(small_slices, four_face_slices):
    """With ell=2 every frontier is a two-step path and every block a square."""
    for s in small_slices + four_face_slices:
        if s.ell != 2:
            continue
        dec = decompose(s)
        assert set(dec.a_sequence) == {2}
        assert all(b.half_boundary == 2 for b in dec.blocks)


def test_faces_are_shared_out(four_face_slices):
    """Blocks, bundles and upper slices account for every inner face."""
    for s in four_face_slices:
        dec = decompose(s)
        faces = sum(b.map.face_count - 1 for b in dec.blocks)
        faces += sum(b.face_count - 1 for b in dec.bundles)
        faces += dec.leading_bundle.face_count - 1
        faces += sum(v.map.face_count - 1 for v in dec.upper_slices)
        assert faces == s.map.face_count - 1


def test_blocks_record_every_stripped_bundle(small_slices, four_face_slices):
    """A block strips a' bundles, single edges included; heads run from x_0 to the left boundary."""
    saw_single_edge = False
    for s in small_slices + four_face_slices:
        line = dividing_line(s)
        dec = decompose(s, line)
        assert len(dec.heads) == len(dec.a_sequence)
        assert dec.heads[0] == line.x[0]
        assert dec.heads[-1] == s.left_vertex(1)
        for block in dec.blocks:
            assert block.bundle_count == block.types[1]
            assert 0 <= block.nontrivial_bundles <= block.bundle_count
            saw_single_edge |= block.nontrivial_bundles < block.bundle_count
        assert sum(b.nontrivial_bundles for b in dec.blocks) == len(dec.bundles)
    assert saw_single_edge


def test_property_two_rejects_inner_chord():
    """An edge across the block between boundary vertices is forbidden."""
    hexagon = hexagon_with_diagonal()
    assert sorted(hexagon.face_degrees()) == [4, 4, 6]
    with pytest.raises(ConstructionError):
        check_property_two(hexagon, set())


def test_property_two_accepts_square():
    """A single square with its outer face passes."""
    check_property_two(square(), {0, 2})


def test_line_export(small_slices):
    """Line edges are drawn in red."""
    s = next(s for s in small_slices if s.ell >= 2)
    text = slice_to_dot(s, dividing_line(s))
    assert "red" in text


# ----------------------------------------------------------------------
# aggregate counts against the general recursion
# ----------------------------------------------------------------------
@pytest.mark.parametrize("n", [1, 2, 3])
def test_decomposition_counts_match(n):
    """Block, kind and upper-slice histograms equal the marked expansion."""
    counts = decomposition_counts(n)
    assert counts.rows
    assert counts.ok, counts.mismatches()
    totals = {row.k: row.count for row in counts.rows if row.statistic == "total"}
    assert sorted(totals) == list(range(2, n + 2))


def test_decomposition_counts_four_faces():
    """Same comparison at four faces, reusing one pass of statistics."""
    stats = slice_statistics(4)
    counts = decomposition_counts(4, stats=stats)
    assert counts.ok, counts.mismatches()
    assert sum(counts.situations.values()) == len(stats)
