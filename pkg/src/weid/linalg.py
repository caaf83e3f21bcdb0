"""Exact rank of sparse integer matrices over Q or a prime field."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping

__all__ = ["FieldConfig", "QQ", "rank"]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldConfig:
    """Coefficient field: the rationals (``p == 0``) or ``F_p``."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldConfig":
        """Accepts ``q``/``Q`` for the rationals and ``fp:<p>`` for a prime field."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(0)
        if t.startswith("fp:"):
            return cls(int(t[3:]))
        raise ValueError(f"unknown field {text!r}; use 'q' or 'fp:<p>'")

    def __str__(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"


QQ = FieldConfig(0)

Row = dict[int, int]


def _reduce_q(row: Row, pivots: dict[int, Row]) -> Row:
    while row:
        lead = min(row)
        piv = pivots.get(lead)
        if piv is None:
            return row
        a, b = piv[lead], row[lead]
        out: Row = {}
        for c, v in row.items():
            out[c] = a * v
        for c, v in piv.items():
            w = out.get(c, 0) - b * v
            if w:
                out[c] = w
            else:
                out.pop(c, None)
        if out:
            g = 0
            for v in out.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                out = {c: v // g for c, v in out.items()}
        row = out
    return row


def _reduce_p(row: Row, pivots: dict[int, Row], p: int) -> Row:
    while row:
        lead = min(row)
        piv = pivots.get(lead)
        if piv is None:
            inv = pow(row[lead], -1, p)
            return {c: v * inv % p for c, v in row.items()}
        b = row[lead]
        out = dict(row)
        for c, v in piv.items():
            w = (out.get(c, 0) - b * v) % p
            if w:
                out[c] = w
            else:
                out.pop(c, None)
        row = out
    return row


def rank(rows: Iterable[Mapping[int, int]], field: FieldConfig = QQ) -> int:
    """Rank of the matrix whose rows are sparse ``{column: entry}`` maps."""
    pivots: dict[int, Row] = {}
    p = field.p
    for r in rows:
        if p:
            row = {c: v % p for c, v in r.items() if v % p}
            row = _reduce_p(row, pivots, p)
        else:
            row = {c: v for c, v in r.items() if v}
            row = _reduce_q(row, pivots)
        if row:
            pivots[min(row)] = row
    return len(pivots)
