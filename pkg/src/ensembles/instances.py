"""
Problem instances (F, x0, y = F x0) and their plain-text dump format.

Format: a `key=value` header (n, p_rows, ensemble, rho, nonzero_law,
support_mode, seed), then an `F` line followed by p_rows rows of n values,
an `x0` line followed by one row of n values and a `y` line followed by one
row of p_rows values. Values are written with repr() so they round-trip.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Union

import numpy as np
from loguru import logger

from ..errors import InstanceFormatError
from .matrices import MatrixEnsemble, sample_matrix
from .priors import NonzeroLaw, SignalPrior, SupportMode, sample_signal
from .rng import StreamLabel, make_rng

HEADER = "# lpthreshold instance v1"
_HEADER_KEYS = ("n", "p_rows", "ensemble", "rho", "nonzero_law", "support_mode", "seed")


@dataclass
class ProblemInstance:
    """One sampled trial: y is stored as computed, never recomputed"""
    F: np.ndarray
    x0: np.ndarray
    y: np.ndarray
    seed: int
    ensemble: MatrixEnsemble
    prior: SignalPrior

    @property
    def n(self) -> int:
        return self.F.shape[1]

    @property
    def p_rows(self) -> int:
        return self.F.shape[0]


def make_instance(ensemble: MatrixEnsemble, n: int, p_rows: int, prior: SignalPrior,
                  seed: int) -> ProblemInstance:
    """Deterministic function of its arguments"""
    F = sample_matrix(ensemble, p_rows, n, make_rng(seed, StreamLabel.MATRIX))
    x0 = sample_signal(n, prior, make_rng(seed, StreamLabel.SIGNAL))
    return ProblemInstance(F=F, x0=x0, y=F @ x0, seed=int(seed), ensemble=ensemble, prior=prior)


def _row(values: np.ndarray) -> str:
    return " ".join(repr(float(v)) for v in values)


def dump_instance(instance: ProblemInstance, path: Union[str, Path]) -> None:
    """Write an instance in the columnar text format"""
    header = {
        "n": instance.n,
        "p_rows": instance.p_rows,
        "ensemble": instance.ensemble.value,
        "rho": repr(float(instance.prior.rho)),
        "nonzero_law": instance.prior.nonzero_law.value,
        "support_mode": instance.prior.support_mode.value,
        "seed": instance.seed,
    }
    lines = [HEADER]
    lines += [f"{key}={header[key]}" for key in _HEADER_KEYS]
    lines.append("F")
    lines += [_row(row) for row in instance.F]
    lines.append("x0")
    lines.append(_row(instance.x0))
    lines.append("y")
    lines.append(_row(instance.y))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug(f"Wrote {instance.p_rows}x{instance.n} instance seed={instance.seed} to {path}")


def _parse_row(text: str, expected: int, line: int, field: str) -> np.ndarray:
    try:
        values = np.array([float(token) for token in text.split()])
    except ValueError as exc:
        raise InstanceFormatError(f"non-numeric value: {exc}", line=line, field=field) from exc
    if len(values) != expected:
        raise InstanceFormatError(f"expected {expected} values, got {len(values)}", line=line, field=field)
    return values


def load_instance(path: Union[str, Path]) -> ProblemInstance:
    """Read an instance written by dump_instance"""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise InstanceFormatError("missing instance header", line=1)

    header: Dict[str, str] = {}
    cursor = 1
    for key in _HEADER_KEYS:
        if cursor >= len(lines) or "=" not in lines[cursor]:
            raise InstanceFormatError("truncated header", line=cursor + 1, field=key)
        name, value = lines[cursor].split("=", 1)
        if name.strip() != key:
            raise InstanceFormatError(f"expected '{key}', got '{name.strip()}'", line=cursor + 1, field=key)
        header[key] = value.strip()
        cursor += 1

    try:
        n = int(header["n"])
        p_rows = int(header["p_rows"])
        seed = int(header["seed"])
        ensemble = MatrixEnsemble(header["ensemble"])
        prior = SignalPrior(
            rho=float(header["rho"]),
            nonzero_law=NonzeroLaw(header["nonzero_law"]),
            support_mode=SupportMode(header["support_mode"]),
        )
    except (KeyError, ValueError) as exc:
        raise InstanceFormatError(f"invalid header value: {exc}", line=cursor) from exc

    def expect(label: str) -> None:
        nonlocal cursor
        if cursor >= len(lines) or lines[cursor].strip() != label:
            raise InstanceFormatError(f"expected section '{label}'", line=cursor + 1, field=label)
        cursor += 1

    def take(count: int, field: str) -> np.ndarray:
        nonlocal cursor
        if cursor >= len(lines):
            raise InstanceFormatError("unexpected end of file", line=cursor + 1, field=field)
        row = _parse_row(lines[cursor], count, cursor + 1, field)
        cursor += 1
        return row

    expect("F")
    rows: List[np.ndarray] = [take(n, "F") for _ in range(p_rows)]
    expect("x0")
    x0 = take(n, "x0")
    expect("y")
    y = take(p_rows, "y")

    F = np.vstack(rows) if rows else np.zeros((0, n))
    return ProblemInstance(F=F, x0=x0, y=y, seed=seed, ensemble=ensemble, prior=prior)
