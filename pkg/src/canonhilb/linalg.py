"""Exact linear algebra over the rationals.

Matrices are plain nested lists of ``int`` or ``fractions.Fraction``.  Rank and
determinant run fraction-free (Bareiss) on integer matrices; rational input is
first cleared of denominators row by row, which changes neither rank nor the
vanishing of a determinant.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence["int | Fraction"]]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num"`` or ``"num/den"``; decimals and exponents are refused."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational of the form num or num/den: {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: "int | Fraction") -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _integer_rows(a: Matrix) -> list[list[int]]:
    rows = []
    for row in a:
        dens = [Fraction(v).denominator for v in row]
        scale = lcm(*dens) if dens else 1
        rows.append([int(Fraction(v) * scale) for v in row])
    return rows


def _bareiss(rows: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place. Returns (rank, sign of row swaps)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank, prev, sign = 0, 1, 1
    for c in range(n):
        if rank == m:
            break
        piv = next((r for r in range(rank, m) if rows[r][c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            sign = -sign
        pr = rows[rank]
        pv = pr[c]
        for r in range(rank + 1, m):
            row = rows[r]
            f = row[c]
            if f == 0:
                for cc in range(c + 1, n):
                    row[cc] = (pv * row[cc]) // prev
            else:
                for cc in range(c + 1, n):
                    row[cc] = (pv * row[cc] - f * pr[cc]) // prev
            row[c] = 0
        prev = pv
        rank += 1
    return rank, sign


def rank(a: Matrix) -> int:
    """Exact rank of a rational matrix."""
    if not a or not a[0]:
        return 0
    return _bareiss(_integer_rows(a))[0]


def det(a: Matrix) -> Fraction:
    """Exact determinant of a square rational matrix (1 for the 0x0 matrix)."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("det needs a square matrix")
    if n == 0:
        return Fraction(1)
    scales = []
    rows = []
    for row in a:
        s = lcm(*(Fraction(v).denominator for v in row))
        scales.append(s)
        rows.append([int(Fraction(v) * s) for v in row])
    r, sign = _bareiss(rows)
    if r < n:
        return Fraction(0)
    total = 1
    for s in scales:
        total *= s
    return Fraction(sign * rows[n - 1][n - 1], total)


def transpose(a: Matrix) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matvec(a: Matrix, v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def is_skew_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == -a[j][i] for i in range(n) for j in range(i, n))


class _PfaffianMinors:
    """Pfaffians of principal submatrices, memoised on the index bitmask."""

    def __init__(self, a: Matrix):
        self.a = a
        self.memo: dict[int, "int | Fraction"] = {0: 1}

    def __call__(self, mask: int) -> "int | Fraction":
        if mask in self.memo:
            return self.memo[mask]
        idx = [i for i in range(len(self.a)) if mask >> i & 1]
        if len(idx) % 2:
            self.memo[mask] = 0
            return 0
        first = idx[0]
        rest = mask & ~(1 << first)
        total = 0
        for pos, j in enumerate(idx[1:]):
            entry = self.a[first][j]
            if entry == 0:
                continue
            term = entry * self(rest & ~(1 << j))
            total = total + term if pos % 2 == 0 else total - term
        self.memo[mask] = total
        return total


def pfaffian(a: Matrix) -> "int | Fraction":
    """Pfaffian by expansion along the first row; intended for small matrices."""
    n = len(a)
    if not is_skew_symmetric(a):
        raise ValueError("pfaffian needs a skew-symmetric matrix")
    return _PfaffianMinors(a)((1 << n) - 1)


def pfaffian_rank(a: Matrix) -> int:
    """Rank of a skew-symmetric matrix from its principal Pfaffian minors.

    The rank is the largest ``2r`` for which some principal ``2r x 2r``
    Pfaffian is nonzero.  Shares no code with :func:`rank`.
    """
    n = len(a)
    if not is_skew_symmetric(a):
        raise ValueError("pfaffian_rank needs a skew-symmetric matrix")
    pf = _PfaffianMinors(a)
    for size in range(n - n % 2, 0, -2):
        for subset in combinations(range(n), size):
            mask = 0
            for i in subset:
                mask |= 1 << i
            if pf(mask) != 0:
                return size
    return 0
