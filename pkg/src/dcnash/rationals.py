"""Exact rational scalars and the small dense linear algebra used everywhere.

The whole package runs on ``fractions.Fraction``: arbitrary-precision
integer numerator, positive denominator, canonical (gcd-reduced) after
every operation, exact total order.  No floating point enters any
computation; floats are rejected at the parsing boundary.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

RationalLike = Union[Fraction, int, str]

Vec = Tuple[Fraction, ...]
Mat = Tuple[Vec, ...]


def rat(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" / "p" string to an exact Fraction.

    Floats are deliberately not accepted: every coefficient in this
    package must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r} ({type(value).__name__})")


def rat_str(q: Fraction) -> str:
    """Render canonically: "p" when integral, otherwise "p/q"."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable[RationalLike]) -> Vec:
    return tuple(rat(v) for v in values)


def zeros(n: int) -> Vec:
    return (Fraction(0),) * n


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dot: length mismatch {len(a)} vs {len(b)}")
    total = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def mat(rows: Iterable[Iterable[RationalLike]]) -> Mat:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("mat: ragged rows")
    return out


def mat_vec(m: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> Vec:
    return tuple(dot(row, x) for row in m)


def is_symmetric(m: Sequence[Sequence[Fraction]]) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def submatrix(m: Sequence[Sequence[Fraction]], idx: Sequence[int]) -> Mat:
    return tuple(tuple(m[i][j] for j in idx) for i in idx)


def is_psd_ldlt(m: Sequence[Sequence[Fraction]]) -> bool:
    """Exact positive-semidefiniteness test via LDL^T with symmetric pivoting.

    At each step the largest remaining diagonal entry is chosen as pivot.
    A negative diagonal entry refutes PSD immediately; a zero diagonal
    with a nonzero off-diagonal entry in the same row refutes it too
    (a PSD matrix with a zero diagonal entry has a zero row).  The input
    must be symmetric.
    """
    n = len(m)
    a: List[List[Fraction]] = [list(map(Fraction, row)) for row in m]
    active = list(range(n))
    while active:
        piv = max(active, key=lambda i: a[i][i])
        if a[piv][piv] < 0:
            return False
        if a[piv][piv] == 0:
            # all remaining diagonal entries are <= 0, hence == 0 unless refuted
            for i in active:
                if a[i][i] < 0:
                    return False
                for j in active:
                    if a[i][j] != 0:
                        return False
            return True
        d = a[piv][piv]
        active.remove(piv)
        for i in active:
            f = a[i][piv] / d
            if f == 0:
                continue
            for j in active:
                a[i][j] -= f * a[piv][j]
        for i in active:
            a[i][piv] = Fraction(0)
            a[piv][i] = Fraction(0)
    return True


def is_psd_minors(m: Sequence[Sequence[Fraction]]) -> bool:
    """PSD by exhaustive principal minors; intended for blocks of size <= 4."""
    n = len(m)
    idx = list(range(n))
    for size in range(1, n + 1):
        for combo in _combinations(idx, size):
            if determinant(submatrix(m, combo)) < 0:
                return False
    return True


def _combinations(items: Sequence[int], k: int):
    if k == 0:
        yield ()
        return
    for i in range(len(items) - k + 1):
        for rest in _combinations(items[i + 1 :], k - 1):
            yield (items[i],) + rest


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(m)
    a = [list(map(Fraction, row)) for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f == 0:
                continue
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
    return det


def solve_linear_system(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[Vec]:
    """Particular solution of ``rows . y = rhs`` with free unknowns pinned to 0.

    Returns None when the equations are inconsistent.  Exact Gaussian
    elimination with partial (first-nonzero) pivoting.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(m)]
    pivot_cols: List[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    y = [Fraction(0)] * n
    for row_i, c in enumerate(pivot_cols):
        y[c] = a[row_i][n]
    return tuple(y)
