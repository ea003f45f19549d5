"""Exact Gauss-Jordan elimination over ``Fraction`` with sparse rows."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence


class SingularSystemError(ArithmeticError):
    pass


def solve_sparse(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``A x = b`` where ``rows[i]`` maps column index to ``A[i][col]``."""
    n = len(rows)
    if len(rhs) != n:
        raise ValueError("row count and right-hand side length differ")
    a = [{c: Fraction(v) for c, v in r.items() if v != 0} for r in rows]
    b = [Fraction(v) for v in rhs]
    # column -> set of rows with a nonzero entry there, kept up to date
    occ: dict[int, set[int]] = {}
    for i, r in enumerate(a):
        for c in r:
            if not 0 <= c < n:
                raise ValueError(f"column {c} out of range")
            occ.setdefault(c, set()).add(i)
    used = [False] * n
    pivot_of = [0] * n
    for col in range(n):
        candidates = [i for i in occ.get(col, ()) if not used[i]]
        if not candidates:
            raise SingularSystemError(f"no pivot for column {col}")
        piv = min(candidates, key=lambda i: (len(a[i]), i))
        used[piv] = True
        pivot_of[col] = piv
        prow = a[piv]
        inv = 1 / prow[col]
        for c in prow:
            prow[c] *= inv
        b[piv] *= inv
        for i in list(occ[col]):
            if i == piv:
                continue
            row = a[i]
            factor = row[col]
            for c, v in prow.items():
                new = row.get(c, 0) - factor * v
                if new:
                    if c not in row:
                        occ.setdefault(c, set()).add(i)
                    row[c] = new
                elif c in row:
                    del row[c]
                    occ[c].discard(i)
            b[i] -= factor * b[piv]
    return [b[pivot_of[col]] for col in range(n)]
