"""Exact linear algebra over the rationals.

Systems are cleared to integer form row by row and reduced with Bareiss
fraction-free elimination, so intermediate entries stay integral and every
division in the forward pass is exact.
"""

from fractions import Fraction
from math import lcm


class SingularMatrix(ArithmeticError):
    pass


def _integer_rows(a, b):
    # ints and Fractions both expose numerator/denominator
    rows = []
    for arow, brow in zip(a, b):
        entries = (*arow, *brow)
        scale = lcm(*{x.denominator for x in entries})
        rows.append([x.numerator * (scale // x.denominator) if x else 0 for x in entries])
    return rows


def solve(a, b):
    """Solve ``a @ x = b`` exactly.

    ``a`` is an n x n sequence of rationals, ``b`` an n x k sequence (one
    column per right-hand side). Returns x as a list of n rows of Fractions.
    Pivots are taken as the first nonzero entry in row order.
    """
    n = len(a)
    if n == 0:
        return []
    k = len(b[0])
    m = _integer_rows(a, b)
    width = n + k
    prev = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix(f"no pivot in column {col}")
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
        p = m[col]
        pc = p[col]
        for r in range(col + 1, n):
            row = m[r]
            rc = row[col]
            if rc == 0:
                for j in range(col + 1, width):
                    row[j] = row[j] * pc // prev
            else:
                for j in range(col + 1, width):
                    row[j] = (row[j] * pc - rc * p[j]) // prev
            row[col] = 0
        prev = pc

    # prev is now det(a) up to the row scaling; det * x is integral
    # (Cramer), so back substitution stays in the integers.
    det = prev
    X = [None] * n
    for i in range(n - 1, -1, -1):
        row = m[i]
        acc = [det * row[n + c] for c in range(k)]
        for j in range(i + 1, n):
            rj = row[j]
            if rj:
                Xj = X[j]
                for c in range(k):
                    acc[c] -= rj * Xj[c]
        X[i] = [v // row[i] for v in acc]
    return [[Fraction(v, det) for v in r] for r in X]


def solve_vector(a, rhs):
    return [r[0] for r in solve(a, [[v] for v in rhs])]


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]
