"""
Theory-curve CSV: header `p,method,rho,alpha_c`, one row per grid point.
"""

import csv
from collections import OrderedDict
from pathlib import Path
from typing import Dict, IO, List, Sequence, Tuple, Union

from ..errors import RecordFormatError
from ..replica import CurveMethod, PNorm, ThresholdCurve

CURVE_HEADER = ["p", "method", "rho", "alpha_c"]

CurveKey = Tuple[PNorm, CurveMethod]


def write_curves(curves: Sequence[ThresholdCurve], handle: IO[str]) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for curve in curves:
        for rho, alpha in curve.points:
            writer.writerow([curve.p.p, curve.method.value, repr(float(rho)), repr(float(alpha))])


def save_curves(curves: Sequence[ThresholdCurve], path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        write_curves(curves, handle)


def load_curves(paths: Sequence[Union[str, Path]]) -> Dict[CurveKey, List[Tuple[float, float]]]:
    """Points of every (norm, method) found across the files, in file order"""
    found: Dict[CurveKey, List[Tuple[float, float]]] = OrderedDict()
    for path in paths:
        try:
            with open(path, newline="", encoding="utf-8") as handle:
                rows = list(csv.reader(handle))
        except OSError as exc:
            raise RecordFormatError(f"cannot read {path}: {exc}") from exc
        if not rows:
            raise RecordFormatError(f"{path} is empty", line=1)
        if rows[0] != CURVE_HEADER:
            raise RecordFormatError(f"{path}: unexpected header {rows[0]}", line=1)
        if len(rows) == 1:
            raise RecordFormatError(f"{path} has no data rows", line=2)

        for number, row in enumerate(rows[1:], start=2):
            if len(row) != len(CURVE_HEADER):
                raise RecordFormatError(f"{path}: expected 4 fields, got {len(row)}", line=number)
            try:
                key = (PNorm.from_p(row[0]), CurveMethod(row[1]))
            except ValueError as exc:
                raise RecordFormatError(f"{path}: {exc}", line=number, field="p/method") from exc
            try:
                point = (float(row[2]), float(row[3]))
            except ValueError as exc:
                raise RecordFormatError(f"{path}: non-numeric value", line=number, field="rho/alpha_c") from exc
            found.setdefault(key, []).append(point)
    return found
