"""GF(2) row reduction on int bitsets."""

from __future__ import annotations

from typing import Iterable


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of rows given as int bitsets."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = row
                break
            row ^= pivot
    return len(pivots)


def pack(columns: Iterable[int]) -> int:
    """Bitset with the given column indices set; repeated indices cancel."""
    row = 0
    for c in columns:
        row ^= 1 << c
    return row
