"""Plain-text coin sequences, one ``t q theta phi`` line per step.

Values are written with 17 significant digits, which round-trips every
float64 exactly, so a sequence exported here replays bit-for-bit elsewhere.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from .coins import CoinParams
from .errors import DomainError
from .schedule import CoinSequence


class SequenceParseError(DomainError):
    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_sequence(seq: CoinSequence) -> str:
    return "".join(
        f"{t} {_fmt(q)} {_fmt(th)} {_fmt(ph)}\n" for t, (q, th, ph) in enumerate(seq.params, start=1)
    )


def export_sequence(seq: CoinSequence, path: Union[str, Path]) -> None:
    Path(path).write_text(format_sequence(seq), encoding="utf-8", newline="\n")


def parse_sequence(text: str, source="<string>") -> CoinSequence:
    """Inverse of :func:`format_sequence`.  Blank lines and ``#`` comments
    are skipped; step indices must run 1, 2, 3, ... without gaps."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise SequenceParseError(source, lineno, f"expected 4 fields, got {len(fields)}")
        try:
            t = int(fields[0])
            q, theta, phi = (float(f) for f in fields[1:])
        except ValueError as exc:
            raise SequenceParseError(source, lineno, str(exc)) from None
        if t != len(rows) + 1:
            raise SequenceParseError(source, lineno, f"expected step {len(rows) + 1}, got {t}")
        try:
            CoinParams(q, theta, phi)
        except DomainError as exc:
            raise SequenceParseError(source, lineno, str(exc)) from None
        rows.append((q, theta, phi))
    if not rows:
        raise SequenceParseError(source, 0, "no coin lines")
    params = np.array(rows, dtype=float)
    params.flags.writeable = False
    return CoinSequence(params, None, (), f"imported({source})")


def import_sequence(path: Union[str, Path]) -> CoinSequence:
    return parse_sequence(Path(path).read_text(encoding="utf-8"), source=str(path))
