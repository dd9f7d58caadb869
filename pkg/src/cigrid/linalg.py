"""Exact linear algebra over the rationals (plus a prime-field shadow).

Matrices are plain lists of lists of `Fraction`.  Everything here is small
dense Gaussian elimination; answers are exact, never floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Mat = list[list[Fraction]]

# Prime used for the optional mod-p rank pre-filter.  A full-rank answer mod p
# certifies full rank over Q; anything else falls back to exact arithmetic.
SHADOW_PRIME = 2**31 - 1


def mat(rows: Sequence[Sequence]) -> Mat:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(d: int, n: int) -> Mat:
    return [[Fraction(0)] * n for _ in range(d)]


def identity(n: int) -> Mat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[Fraction]]) -> Mat:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Mat:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def column_submatrix(m: Sequence[Sequence[Fraction]], cols: Iterable[int]) -> Mat:
    """Columns selected by 1-based indices, in increasing order."""
    idx = sorted(set(cols))
    return [[row[j - 1] for j in idx] for row in m]


def row_submatrix(m: Sequence[Sequence[Fraction]], rows: Iterable[int]) -> Mat:
    idx = sorted(set(rows))
    return [list(m[i - 1]) for i in idx]


def is_zero_matrix(m: Sequence[Sequence[Fraction]]) -> bool:
    return all(x == 0 for row in m for x in row)


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by fraction Gaussian elimination."""
    work = [list(row) for row in m]
    if not work or not work[0]:
        return 0
    nrows, ncols = len(work), len(work[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][c]
        for i in range(r + 1, nrows):
            f = work[i][c] * inv
            if f:
                row_i, row_r = work[i], work[r]
                for j in range(c, ncols):
                    row_i[j] -= f * row_r[j]
        r += 1
        if r == nrows:
            break
    return r


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    work = [list(row) for row in m]
    n = len(work)
    if any(len(row) != n for row in work):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            sign = -sign
        result *= work[c][c]
        inv = 1 / work[c][c]
        for i in range(c + 1, n):
            f = work[i][c] * inv
            if f:
                for j in range(c, n):
                    work[i][j] -= f * work[c][j]
    return sign * result


def rref(m: Sequence[Sequence[Fraction]]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and the 0-based pivot column list."""
    work = [list(row) for row in m]
    if not work or not work[0]:
        return work, []
    nrows, ncols = len(work), len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work, pivots


def kernel_basis(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right kernel {v : m v = 0}."""
    if not m:
        return []
    ncols = len(m[0])
    reduced, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f]
        basis.append(v)
    return basis


def rank_mod_p(m: Sequence[Sequence[Fraction]], p: int = SHADOW_PRIME) -> int | None:
    """Rank of the matrix reduced mod p, or None when p divides a denominator.

    Column scaling by denominator lcms keeps the rank unchanged, so the mod-p
    rank never exceeds the exact rank; equality with the column count
    certifies linear independence over Q.
    """
    if not m or not m[0]:
        return 0
    cols = transpose(m)
    reduced: list[list[int]] = []
    for col in cols:
        scale = lcm(*(x.denominator for x in col)) if col else 1
        if scale % p == 0:
            return None
        reduced.append([(x.numerator * (scale // x.denominator)) % p for x in col])
    work = [list(row) for row in zip(*reduced)]
    nrows, ncols = len(work), len(work[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i][c] % p), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = pow(work[r][c], -1, p)
        for i in range(r + 1, nrows):
            f = (work[i][c] * inv) % p
            if f:
                for j in range(c, ncols):
                    work[i][j] = (work[i][j] - f * work[r][j]) % p
        r += 1
        if r == nrows:
            break
    return r


def matrix_to_text(m: Sequence[Sequence[Fraction]]) -> str:
    """`d n` header, then one row of rationals per line."""
    d = len(m)
    n = len(m[0]) if m else 0
    lines = [f"{d} {n}"]
    for row in m:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> Mat:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matrix text")
    d, n = (int(t) for t in lines[0].split())
    if len(lines) != d + 1:
        raise ValueError(f"expected {d} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = [Fraction(t) for t in ln.split()]
        if len(row) != n:
            raise ValueError("row width mismatch")
        rows.append(row)
    return rows
