"""Exact integer and rational linear algebra at desk scale.

Column-style Hermite reduction ``A U = H`` with ``U`` unimodular gives both
the integer kernel of ``A`` (trailing columns of ``U``) and an integer solver
for ``A c = b``.  Rational feasibility of ``{z >= 0, M z = b}`` is decided by
a phase-one simplex over :class:`fractions.Fraction` with Bland's rule.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class HermiteSystem:
    """Precomputed reduction of an integer matrix for repeated solves."""

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int):
        m = len(rows)
        self.nrows, self.ncols = m, ncols
        H = [[rows[i][j] for i in range(m)] for j in range(ncols)]
        U = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
        pivot_rows = []
        p = 0
        for r in range(m):
            if p == ncols:
                break
            while True:
                nz = [j for j in range(p, ncols) if H[j][r] != 0]
                if not nz:
                    break
                k = min(nz, key=lambda j: abs(H[j][r]))
                if len(nz) == 1:
                    break
                hk, uk = H[k], U[k]
                for j in nz:
                    if j == k:
                        continue
                    q = H[j][r] // hk[r]
                    if q:
                        hj, uj = H[j], U[j]
                        for i in range(r, m):
                            if hk[i]:
                                hj[i] -= q * hk[i]
                        for i in range(ncols):
                            if uk[i]:
                                uj[i] -= q * uk[i]
            if not nz:
                continue
            H[p], H[k] = H[k], H[p]
            U[p], U[k] = U[k], U[p]
            if H[p][r] < 0:
                H[p] = [-x for x in H[p]]
                U[p] = [-x for x in U[p]]
            pivot_rows.append(r)
            p += 1
        self.rank = p
        self.H = H
        self.U = U
        self.pivot_rows = pivot_rows

    def kernel(self) -> list[list[int]]:
        """Lattice basis of the integer kernel."""
        return [list(col) for col in self.U[self.rank:]]

    def solve(self, b: Sequence[int]) -> list[int] | None:
        """Some integer ``c`` with ``A c = b``, or ``None``."""
        res = list(b)
        z = []
        prev = -1
        for p, row in enumerate(self.pivot_rows):
            if any(res[i] for i in range(prev + 1, row)):
                return None
            h = self.H[p]
            q, rem = divmod(res[row], h[row])
            if rem:
                return None
            if q:
                for i in range(row, self.nrows):
                    if h[i]:
                        res[i] -= q * h[i]
            z.append(q)
            prev = row
        if any(res):
            return None
        c = [0] * self.ncols
        for p, q in enumerate(z):
            if q:
                u = self.U[p]
                for i in range(self.ncols):
                    if u[i]:
                        c[i] += q * u[i]
        return c


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    return HermiteSystem(rows, ncols).kernel()


def feasible_nonneg(M: Sequence[Sequence[int | Fraction]], b: Sequence[int | Fraction]) -> list[Fraction] | None:
    """A rational ``z >= 0`` with ``M z = b``, or ``None`` if none exists."""
    m = len(M)
    n = len(M[0]) if m else 0
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in M[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    total = n + m
    basis = [n + i for i in range(m)]
    # phase-one objective: minimise the sum of artificials
    cost = [Fraction(0)] * (total + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[total] -= row[total]
    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[total] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded cannot happen in phase one
            break
        i = best[1]
        piv = rows[i][enter]
        rows[i] = [x / piv for x in rows[i]]
        for k, row in enumerate(rows):
            if k != i and row[enter]:
                f = row[enter]
                rows[k] = [x - f * y for x, y in zip(row, rows[i])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, rows[i])]
        basis[i] = enter
    if cost[total] != 0:
        return None
    z = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            z[j] = rows[i][total]
    return z
