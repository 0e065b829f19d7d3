"""JSON documents for cuboids, codes and results.

Cuboid documents store cells flat, coordinate 1 fastest (the order of a
nested ``[xd]...[x1]`` listing), symbols 0-based, ``null`` for empty cells::

    {"sizes": [3, 2, 2], "class": 2, "order": 6, "cells": [0, 1, 2, ...]}

Code documents list words as integer arrays::

    {"alphabets": [3, 3, 2], "words": [[0, 0, 0], [1, 2, 0], ...]}
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any

from .bounds import BoundReport, ExistenceVerdict
from .codes import CodeMetrics, Endomorphism, MixedCode
from .core import EMPTY, CuboidShape, Hypercuboid, ValidationReport
from .enumeration import CountResult
from .errors import DataError, LatinError

COUNT_COLUMNS = ("sizes", "class", "semiReduced", "total", "nodes", "millis")


def load_json(path: str | Path) -> Any:
    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path} is not valid JSON: {exc}") from exc


def cuboid_to_doc(c: Hypercuboid, one_based: bool = False) -> dict:
    shift = 1 if one_based else 0
    return {
        "sizes": list(c.sizes),
        "class": c.cls,
        "order": c.order,
        "cells": [None if v == EMPTY else v + shift for v in c.cells],
    }


def cuboid_from_doc(doc: Any) -> Hypercuboid:
    try:
        shape = CuboidShape(tuple(doc["sizes"]), int(doc["class"]))
        order = int(doc.get("order", shape.order))
        cells = tuple(EMPTY if v is None else int(v) for v in doc["cells"])
        return Hypercuboid(shape, order, cells)
    except LatinError as exc:
        raise DataError(f"bad cuboid document: {exc}") from exc
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DataError(f"bad cuboid document: {exc!r}") from exc


def code_to_doc(code: MixedCode, one_based: bool = False) -> dict:
    shift = 1 if one_based else 0
    return {"alphabets": list(code.alphabets),
            "words": [[x + shift for x in w] for w in code.sorted_words()]}


def code_from_doc(doc: Any) -> MixedCode:
    try:
        return MixedCode.of(doc["alphabets"], doc["words"])
    except LatinError as exc:
        raise DataError(f"bad code document: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"bad code document: {exc!r}") from exc


def report_to_doc(report: ValidationReport) -> dict:
    doc: dict[str, Any] = {"valid": report.valid}
    v = report.first_violation
    if v is not None:
        doc["violation"] = {
            "varying": [i + 1 for i in v.selector.varying],
            "fixed": {str(i + 1): x for i, x in v.selector.fixed},
            "symbol": v.symbol,
            "kind": v.kind,
            "positions": [list(p) for p in v.positions],
        }
    return doc


def verdict_to_doc(shape: CuboidShape, v: ExistenceVerdict) -> dict:
    return {"sizes": list(shape.sizes), "class": shape.cls, "lhs": v.lhs, "rhs": v.rhs,
            "satisfied": v.satisfied, "ethierMax": v.ethier_max}


def bound_report_to_doc(b: BoundReport) -> dict:
    return {"alphabets": list(b.alphabets), "delta": b.delta, "singleton": b.singleton,
            "hamming": b.hamming, "spherePacking": b.sphere_packing,
            "plotkin": b.plotkin, "plotkinRho": str(b.plotkin_rho),
            "trivialFloor": b.trivial_floor, "trivialCeil": b.trivial_ceil}


def metrics_to_doc(m: CodeMetrics) -> dict:
    return {"size": m.size, "distanceSet": sorted(m.distance_set),
            "minDistance": m.min_distance, "isAdditive": m.is_additive,
            "minWeight": m.min_weight}


def endomorphism_to_doc(e: Endomorphism) -> dict:
    return {"sizes": list(e.sizes), "distanceSet": sorted(e.distance_set),
            "map": list(e.mapping), "rank": e.rank,
            "kernelSizes": sorted(len(k) for k in e.kernel_classes())}


def count_to_row(res: CountResult) -> dict:
    return {"sizes": list(res.shape.sizes), "class": res.shape.cls,
            "semiReduced": res.semi_reduced, "total": res.total,
            "nodes": res.nodes_visited, "millis": round(res.elapsed * 1000, 3)}


def count_to_doc(res: CountResult) -> dict:
    doc = count_to_row(res)
    doc["totalFactor"] = res.total_factor
    doc["truncated"] = res.truncated
    return doc


def rows_to_csv(rows: list[dict], columns=COUNT_COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["x".join(map(str, v)) if isinstance(v, list) else v
                         for v in (row[c] for c in columns)])
    return buf.getvalue()


def csv_to_rows(text: str) -> list[dict]:
    """Parse :func:`rows_to_csv` output back into count rows."""
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append({
            "sizes": [int(x) for x in rec["sizes"].split("x")],
            "class": int(rec["class"]),
            "semiReduced": int(rec["semiReduced"]),
            "total": int(rec["total"]),
            "nodes": int(rec["nodes"]),
            "millis": float(rec["millis"]),
        })
    return rows


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2)
