"""Exact linear algebra over the rationals: determinants and a simplex LP solver."""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionError, JNormError


class LPError(JNormError):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


def _matrix(M) -> list[list[Fraction]]:
    rows = [[Fraction(v) for v in row] for row in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant needs a square matrix")
    return rows


def det_oracle(M) -> Fraction:
    """Determinant by Bareiss fraction-free elimination (every division is exact)."""
    A = _matrix(M)
    n = len(A)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
            A[i][k] = Fraction(0)
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def det_cofactor(M) -> Fraction:
    """Laplace expansion along the first row; exponential, for small checks only."""
    A = _matrix(M)
    n = len(A)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return A[0][0]
    total = Fraction(0)
    for j, a in enumerate(A[0]):
        if a == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        total += (-1) ** j * a * det_cofactor(minor)
    return total


class _Tableau:
    """Dense simplex tableau for  min c.x  s.t.  A x = b, x >= 0, b >= 0."""

    def __init__(self, A, b, basis):
        self.A = [list(r) for r in A]
        self.b = list(b)
        self.basis = list(basis)

    def pivot(self, r: int, col: int):
        A, b = self.A, self.b
        piv = A[r][col]
        A[r] = [v / piv for v in A[r]]
        b[r] = b[r] / piv
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [u - f * v for u, v in zip(A[i], A[r])]
                b[i] = b[i] - f * b[r]
        self.basis[r] = col

    def reduced_costs(self, c):
        cb = [c[j] for j in self.basis]
        n = len(c)
        return [c[j] - sum(cb[i] * self.A[i][j] for i in range(len(self.A)))
                for j in range(n)]

    def run(self, c, allowed):
        """Bland's rule: lowest-index entering column, lowest-index leaving basic."""
        while True:
            rc = self.reduced_costs(c)
            entering = next((j for j in range(len(c)) if allowed[j] and rc[j] < 0), None)
            if entering is None:
                return
            best = None
            for i, row in enumerate(self.A):
                if row[entering] > 0:
                    ratio = self.b[i] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise Unbounded("objective unbounded below")
            self.pivot(best[1], entering)


def linprog_exact(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()):
    """Minimise c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0, exactly.

    Two-phase simplex over Fractions.  Returns (optimum, x).
    """
    c = [Fraction(v) for v in c]
    n = len(c)
    rows, rhs, kinds = [], [], []
    for row, val in zip(A_ub, b_ub):
        rows.append([Fraction(v) for v in row])
        rhs.append(Fraction(val))
        kinds.append("ub")
    for row, val in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in row])
        rhs.append(Fraction(val))
        kinds.append("eq")
    if any(len(r) != n for r in rows):
        raise DimensionError("constraint rows must match the objective length")
    m = len(rows)
    n_slack = kinds.count("ub")
    width = n + n_slack + m  # originals, slacks, artificials
    A, b = [], []
    s = 0
    for i, (row, val, kind) in enumerate(zip(rows, rhs, kinds)):
        full = row + [Fraction(0)] * (n_slack + m)
        if kind == "ub":
            full[n + s] = Fraction(1)
            s += 1
        if val < 0:
            full = [-v for v in full]
            val = -val
        full[n + n_slack + i] = Fraction(1)
        A.append(full)
        b.append(val)
    tab = _Tableau(A, b, [n + n_slack + i for i in range(m)])

    phase1 = [Fraction(0)] * (n + n_slack) + [Fraction(1)] * m
    tab.run(phase1, [True] * width)
    if sum(tab.b[i] for i, j in enumerate(tab.basis) if j >= n + n_slack) != 0:
        raise Infeasible("constraints admit no nonnegative solution")
    # drive zero-level artificials out of the basis where possible
    for i, j in enumerate(list(tab.basis)):
        if j >= n + n_slack:
            col = next((k for k in range(n + n_slack) if tab.A[i][k] != 0), None)
            if col is not None:
                tab.pivot(i, col)

    phase2 = c + [Fraction(0)] * (n_slack + m)
    allowed = [True] * (n + n_slack) + [False] * m
    tab.run(phase2, allowed)
    x = [Fraction(0)] * width
    for i, j in enumerate(tab.basis):
        x[j] = tab.b[i]
    sol = x[:n]
    return sum((ci * xi for ci, xi in zip(c, sol)), Fraction(0)), sol
