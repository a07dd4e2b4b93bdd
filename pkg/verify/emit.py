"""Coefficient tables and map exports written to flat files."""
from __future__ import annotations

import csv
import logging
from io import StringIO
from pathlib import Path
from typing import List

from maplab.dividing_line import dividing_line
from maplab.export import export_tally_csv, map_to_dot, slice_to_dot, write_dot
from maplab.slices import extract_slice
from maplab.tally import pointed_rooted_maps, tally_rows, tally_two_point
from series import PowerSeries, SeriesFamily
from series.schemas import FamilyPayload, KernelPayload
from twopoint.baseline import assemble_G, solve_R_family
from twopoint.closed_forms import x_of_g
from twopoint.kernel import C_binomial_series, build_kernel, h_table, solve_phi
from twopoint.recursion import iterate_t
from verify import config

logger = logging.getLogger(__name__)

TARGETS = ("R", "G", "t", "h", "C", "x", "kernel")
FORMATS = ("json", "csv")
MAP_KINDS = ("all", "slices", "lines")
SERIES_COLUMNS = ("k", "n", "coefficient")
MAX_EXPORT_FACES = 5

# first index written per target; h is indexed by half the boundary length
FIRST_INDEX = {"R": 1, "G": 1, "t": 1, "h": 2, "C": 0, "x": 0}


def _check_target(target: str, order: int, kmax: int) -> None:
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}, choose from {', '.join(TARGETS)}")
    if not 0 <= order <= config.MAX_ORDER:
        raise ValueError(f"--order must be in 0..{config.MAX_ORDER}, got {order}")
    if not 1 <= kmax <= config.MAX_KMAX:
        raise ValueError(f"--kmax must be in 1..{config.MAX_KMAX}, got {kmax}")
    if target == "kernel" and order < 2:
        raise ValueError("target kernel needs --order >= 2")
    if target in ("t", "h", "C", "x") and order < 1:
        raise ValueError(f"target {target} needs --order >= 1")


def build_kernel_payload(order: int, kmax: int) -> KernelPayload:
    """The kernel bundle with ``h_4 .. h_{2 kmax}`` at G-order ``order``."""
    _check_target("kernel", order, kmax)
    return KernelPayload.from_bundle(build_kernel(max(kmax - 2, 0), order))


def build_target(target: str, order: int, kmax: int) -> SeriesFamily:
    """The family behind ``target``; single series come back as a one-entry family."""
    _check_target(target, order, kmax)
    if target == "kernel":
        raise ValueError("target kernel is a bundle, not a family")

    if target == "R":
        return solve_R_family(kmax, order)
    if target == "G":
        return assemble_G(solve_R_family(kmax + 1, order))
    if target == "t":
        return iterate_t(kmax, order)
    if target == "h":
        table = h_table(solve_phi(max(kmax - 2, 0), order))
        zero = PowerSeries.zero("G", order)
        return SeriesFamily("h", (zero, zero) + table)
    if target == "C":
        return SeriesFamily("C", (C_binomial_series(order),))
    return SeriesFamily("x", (x_of_g(order),))


def series_rows(target: str, family: SeriesFamily) -> List[dict]:
    rows = []
    for k in range(FIRST_INDEX[target], family.K + 1):
        for n, c in enumerate(family.entries[k].coefficients):
            rows.append({"k": k, "n": n, "coefficient": str(c)})
    return rows


def emit_series(target: str, order: int, kmax: int, fmt: str = "json",
                out: Path | None = None) -> str:
    """Write the coefficient table of ``target``; returns the text written.

    With ``out`` unset the text is only returned. The ``kernel`` target
    is JSON only.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, choose from {', '.join(FORMATS)}")
    if target == "kernel":
        if fmt != "json":
            raise ValueError("target kernel is written as json only")
        text = build_kernel_payload(order, kmax).model_dump_json(indent=2) + "\n"
        return _write(text, target, fmt, out)
    family = build_target(target, order, kmax)
    if fmt == "json":
        text = FamilyPayload.from_family(family).model_dump_json(indent=2) + "\n"
    else:
        text = _csv_text(series_rows(target, family))
    return _write(text, target, fmt, out)


def _write(text: str, target: str, fmt: str, out: Path | None) -> str:
    if out is not None:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        logger.info("wrote %s table (%s) to %s", target, fmt, path)
    return text


def _csv_text(rows: List[dict]) -> str:
    buffer = StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SERIES_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def emit_maps(faces: int, what: str = "all", out_dir: Path = Path("maps")) -> List[Path]:
    """One DOT file per deduplicated object with ``faces`` faces.

    ``all`` writes every pointed rooted map plus a tally CSV, ``slices``
    every extracted slice, ``lines`` every slice with ``ell >= 2`` with its
    dividing line in red.
    """
    if what not in MAP_KINDS:
        raise ValueError(f"unknown export {what!r}, choose from {', '.join(MAP_KINDS)}")
    cap = min(MAX_EXPORT_FACES, config.QP_MAX_FACES)
    if not 1 <= faces <= cap:
        raise ValueError(f"--faces must be in 1..{cap} for map export, got {faces}")
    out_dir = Path(out_dir)
    written: List[Path] = []
    if what == "all":
        for i, m in enumerate(pointed_rooted_maps(faces)):
            name = f"map_{faces}_{i:04d}"
            written.append(write_dot(out_dir / f"{name}.dot", map_to_dot(m, name=name)))
        G = assemble_G(solve_R_family(faces + 2, faces))
        export_tally_csv(tally_rows(tally_two_point(faces, workers=config.QP_WORKERS), G),
                         out_dir / f"tally_{faces}.csv")
    else:
        for i, m in enumerate(pointed_rooted_maps(faces, first_category=True)):
            view = extract_slice(m)
            if what == "lines" and view.ell < 2:
                continue
            line = dividing_line(view) if what == "lines" else None
            name = f"{what[:-1]}_{faces}_{i:04d}"
            written.append(write_dot(out_dir / f"{name}.dot", slice_to_dot(view, line, name)))
    logger.info("wrote %d %s files to %s", len(written), what, out_dir)
    return written
