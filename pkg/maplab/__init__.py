"""Explicit planar maps: enumeration, tallies, slices and their decomposition."""

from maplab.closure import cvs_closure
from maplab.combinatorial_map import CombinatorialMap, restrict, root_edge_map
from maplab.decomposition import BlockDecomposition, decompose, decomposition_counts
from maplab.dividing_line import DividingLine, dividing_line
from maplab.errors import ConstructionError, MapError
from maplab.slices import SliceCheck, SliceView, extract_slice, validate_slice
from maplab.tally import TwoPointTally, tally_two_point
from maplab.trees import LabeledPlaneTree, enumerate_trees

__all__ = [
    "BlockDecomposition",
    "CombinatorialMap",
    "ConstructionError",
    "DividingLine",
    "LabeledPlaneTree",
    "MapError",
    "SliceCheck",
    "SliceView",
    "TwoPointTally",
    "cvs_closure",
    "decompose",
    "decomposition_counts",
    "dividing_line",
    "enumerate_trees",
    "extract_slice",
    "restrict",
    "root_edge_map",
    "tally_two_point",
    "validate_slice",
]
