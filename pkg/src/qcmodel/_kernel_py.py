"""Pure-Python integer Gauss-Jordan elimination.

This is the reference implementation of the row-reduction kernel; the
compiled module ``_kernel`` exposes the same function and must return
identical output.
"""

from __future__ import annotations

from math import gcd


def _primitive(row: list[int], pivot: int) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if row[pivot] < 0:
        g = -g
    if g not in (0, 1):
        row = [x // g for x in row]
    return row


def echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduce integer rows to canonical reduced echelon form.

    Every returned row is primitive (content 1) with a positive pivot, and
    each pivot column is zero outside its pivot row.  Zero rows are dropped,
    so the result is a canonical basis of the row space.
    """
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    top = 0
    n = len(work)
    for c in range(ncols):
        if top == n:
            break
        best = -1
        best_abs = 0
        for k in range(top, n):
            v = work[k][c]
            if v:
                a = -v if v < 0 else v
                if best < 0 or a < best_abs:
                    best, best_abs = k, a
                    if a == 1:
                        break
        if best < 0:
            continue
        work[top], work[best] = work[best], work[top]
        prow = _primitive(work[top], c)
        work[top] = prow
        a = prow[c]
        for k in range(n):
            if k == top:
                continue
            row = work[k]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            m1 = a // g
            m2 = b // g
            new = [m1 * x - m2 * y for x, y in zip(row, prow)]
            # rows below may become zero; keep them, they are skipped later
            lead = next((j for j, x in enumerate(new) if x), None)
            work[k] = _primitive(new, lead) if lead is not None else new
        pivots.append(c)
        top += 1
    out = []
    for k in range(top):
        row = work[k]
        out.append(_primitive(row, pivots[k]))
    return out, pivots
