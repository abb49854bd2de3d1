"""
CSV persistence for trial records and critical-point estimates.

Both files are UTF-8 with LF line endings. Floats are written with repr()
so a load/save cycle reproduces the file byte for byte. The trials file is
append-only: an interrupted sweep leaves a prefix of the full file, which
`prepare_resume` trims to whole rows before the sweep continues.
"""

import csv
import math
from pathlib import Path
from typing import IO, List, Optional, Set, Union

from loguru import logger

from ..ensembles import derive_trial_seed
from ..errors import ConfigError, RecordFormatError
from .estimates import CriticalPointEstimate
from .trials import TrialKey, TrialRecord

logger = logger.bind(name="Storage")

TRIALS_HEADER = ["n", "p_rows", "trial_index", "seed", "success", "objective", "residual", "status"]
ESTIMATES_HEADER = ["rho", "n", "alpha_c_n", "stderr", "trials_total"]

PathLike = Union[str, Path]


def _float(value: float) -> str:
    return repr(float(value))


def _trial_row(record: TrialRecord) -> List[str]:
    return [
        str(record.n),
        str(record.p_rows),
        str(record.trial_index),
        str(record.seed),
        "1" if record.success else "0",
        _float(record.objective),
        _float(record.residual),
        record.status,
    ]


def _parse_field(row: List[str], index: int, header: List[str], line: int, cast):
    field = header[index]
    try:
        return cast(row[index])
    except (ValueError, IndexError) as exc:
        raise RecordFormatError(f"bad value {row[index] if index < len(row) else ''!r}", line=line,
                                field=field) from exc


def _parse_success(text: str) -> bool:
    if text not in ("0", "1"):
        raise ValueError(text)
    return text == "1"


def _read_rows(path: PathLike, header: List[str]) -> List[List[str]]:
    """Data rows after a validated header; row k sits on line k + 2"""
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
    except OSError as exc:
        raise RecordFormatError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise RecordFormatError(f"{path} is empty", line=1)
    if rows[0] != header:
        raise RecordFormatError(f"unexpected header {rows[0]}, expected {header}", line=1)
    for number, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise RecordFormatError(f"expected {len(header)} fields, got {len(row)}", line=number)
    return rows[1:]


class TrialWriter:
    """Single writer for a trials CSV; rows are flushed as they arrive"""

    def __init__(self, path: PathLike, append: bool = False):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not append or not self.path.exists() or self.path.stat().st_size == 0
        self._handle: IO[str] = open(self.path, "w" if fresh else "a", newline="", encoding="utf-8")
        self._writer = csv.writer(self._handle, lineterminator="\n")
        if fresh:
            self._writer.writerow(TRIALS_HEADER)
        self.written = 0

    def write(self, record: TrialRecord) -> None:
        self._writer.writerow(_trial_row(record))
        self._handle.flush()
        self.written += 1

    def close(self) -> None:
        if not self._handle.closed:
            self._handle.close()

    def __enter__(self) -> "TrialWriter":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def save_trials(records: List[TrialRecord], path: PathLike) -> None:
    with TrialWriter(path) as writer:
        for record in records:
            writer.write(record)
    logger.debug(f"Saved {len(records)} trial records to {path}")


def load_trials(path: PathLike) -> List[TrialRecord]:
    records = []
    for number, row in enumerate(_read_rows(path, TRIALS_HEADER), start=2):
        records.append(TrialRecord(
            n=_parse_field(row, 0, TRIALS_HEADER, number, int),
            p_rows=_parse_field(row, 1, TRIALS_HEADER, number, int),
            trial_index=_parse_field(row, 2, TRIALS_HEADER, number, int),
            seed=_parse_field(row, 3, TRIALS_HEADER, number, int),
            success=_parse_field(row, 4, TRIALS_HEADER, number, _parse_success),
            objective=_parse_field(row, 5, TRIALS_HEADER, number, float),
            residual=_parse_field(row, 6, TRIALS_HEADER, number, float),
            status=row[7],
        ))
    return records


def prepare_resume(path: PathLike, master_seed: Optional[int] = None) -> Set[TrialKey]:
    """
    Drop a partially written last row, then return the keys already on file.
    A missing or empty file resumes from nothing. With `master_seed`, every
    record on file must carry the seed this sweep would derive for its key.
    """
    path = Path(path)
    if not path.exists() or path.stat().st_size == 0:
        return set()

    data = path.read_bytes()
    if not data.endswith(b"\n"):
        cut = data.rfind(b"\n") + 1
        logger.warning(f"Discarding incomplete trailing row of {path} ({len(data) - cut} bytes)")
        with open(path, "r+b") as handle:
            handle.truncate(cut)
        if cut == 0:
            return set()

    records = load_trials(path)
    if master_seed is not None:
        for record in records:
            expected = derive_trial_seed(master_seed, *record.key)
            if record.seed != expected:
                raise ConfigError(
                    f"{path} was written by a different sweep: trial {record.key} has seed {record.seed}, "
                    f"master_seed={master_seed} gives {expected}"
                )
    keys = {record.key for record in records}
    logger.info(f"{path} already holds {len(keys)} trial records")
    return keys


def save_estimates(estimates: List[CriticalPointEstimate], path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(ESTIMATES_HEADER)
        for estimate in estimates:
            writer.writerow([
                _float(estimate.rho),
                str(estimate.n),
                _float(estimate.alpha_c_n),
                _float(estimate.stderr),
                str(estimate.trials_total),
            ])
    logger.debug(f"Saved {len(estimates)} estimates to {path}")


def load_estimates(path: PathLike) -> List[CriticalPointEstimate]:
    """Read an estimates CSV; the per-P tables behind each estimate are not stored"""
    estimates = []
    for number, row in enumerate(_read_rows(path, ESTIMATES_HEADER), start=2):
        alpha = _parse_field(row, 2, ESTIMATES_HEADER, number, float)
        if not math.isfinite(alpha):
            raise RecordFormatError("alpha_c_n must be finite", line=number, field="alpha_c_n")
        estimates.append(CriticalPointEstimate(
            rho=_parse_field(row, 0, ESTIMATES_HEADER, number, float),
            n=_parse_field(row, 1, ESTIMATES_HEADER, number, int),
            alpha_c_n=alpha,
            stderr=_parse_field(row, 3, ESTIMATES_HEADER, number, float),
            recorded_trials=_parse_field(row, 4, ESTIMATES_HEADER, number, int),
        ))
    return estimates

