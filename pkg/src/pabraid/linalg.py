"""Exact integer matrices: characteristic polynomials, irreducibility, and
rigorous Perron-root enclosures for nonnegative matrices.

The convention throughout is that column ``j`` holds the image of the j-th
basis vector, so a matrix acts on coefficient vectors by left multiplication.

The characteristic polynomial is computed without floating point: the
determinant ``det(xI - M)`` is evaluated by fraction-free Bareiss elimination
at the integer points ``x = 0..dim`` and the coefficients are recovered by
exact Newton interpolation on that grid.  The result is asserted to be
integral and monic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .poly import IntPolynomial
from .spectral import RootEnclosure, to_witness


class IntMatrix:
    """A square matrix of arbitrary-precision integers."""

    __slots__ = ("dim", "entries")

    def __init__(self, entries: Iterable[Iterable[int]]):
        rows = [tuple(int(x) for x in row) for row in entries]
        if not rows:
            raise ValueError("matrix must have dimension >= 1")
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.dim = n
        self.entries: tuple[tuple[int, ...], ...] = tuple(rows)

    @classmethod
    def from_json_data(cls, data: dict) -> "IntMatrix":
        m = cls(data["entries"])
        if m.dim != data.get("dim", m.dim):
            raise ValueError("declared dim does not match entries")
        return m

    def to_json_data(self) -> dict:
        return {"dim": self.dim, "entries": [list(r) for r in self.entries]}

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.entries]!r})"

    def mul_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.dim:
            raise ValueError("vector length must equal matrix dimension")
        return tuple(sum(row[j] * v[j] for j in range(self.dim)) for row in self.entries)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.entries for x in row)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[self.entries[i][j] for j in cols] for i in rows])


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination with row pivoting.

    Every interior division in the recurrence is exact, so the computation
    stays in the integers.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def char_poly(m: IntMatrix) -> IntPolynomial:
    """Exact monic characteristic polynomial ``det(tI - M)``, ascending coefficients."""
    n = m.dim
    values = []
    for x in range(n + 1):
        shifted = [
            [(x if i == j else 0) - m.entries[i][j] for j in range(n)] for i in range(n)
        ]
        values.append(bareiss_determinant(shifted))
    coeffs = _interpolate_on_integer_grid(values)
    poly = IntPolynomial(coeffs)
    if poly.degree != n or not poly.is_monic():
        raise ArithmeticError("interpolated characteristic polynomial is not monic of full degree")
    return poly


def _interpolate_on_integer_grid(values: Sequence[int]) -> list[int]:
    """Coefficients of the unique degree-<len polynomial taking ``values`` at 0..d.

    Newton's forward-difference form: the divided difference at depth k is the
    k-th finite difference divided by k!.  The basis product ``x(x-1)..(x-k+1)``
    is accumulated exactly as an integer polynomial.
    """
    d = len(values) - 1
    diffs = list(values)
    acc = [Fraction(0)] * (d + 1)
    basis = IntPolynomial.one()
    factorial = 1
    for k in range(d + 1):
        if k > 0:
            factorial *= k
            diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        top = diffs[0]
        if top:
            scale = Fraction(top, factorial)
            for i, c in enumerate(basis.coeffs):
                acc[i] += scale * c
        if k < d:
            basis = basis * IntPolynomial([-k, 1])
    if any(c.denominator != 1 for c in acc):
        raise ArithmeticError("interpolation produced non-integer coefficients")
    return [int(c) for c in acc]


def is_irreducible(m: IntMatrix) -> bool:
    """Whether the directed graph with an edge ``i -> j`` for every nonzero
    entry ``M[i][j]`` is strongly connected.  Signs are ignored: the support
    is what matters.  A 1x1 matrix is irreducible iff its entry is nonzero.
    """
    n = m.dim
    if n == 1:
        return m.entries[0][0] != 0
    forward = [[j for j in range(n) if m.entries[i][j] != 0] for i in range(n)]
    backward = [[] for _ in range(n)]
    for i in range(n):
        for j in forward[i]:
            backward[j].append(i)

    def reaches_all(adj) -> bool:
        seen = [False] * n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    stack.append(v)
        return count == n

    return reaches_all(forward) and reaches_all(backward)


def perron_root(m: IntMatrix, tol: float) -> RootEnclosure:
    """Rigorous enclosure of the Perron-Frobenius eigenvalue of a nonnegative
    irreducible matrix, width at most ``tol``.

    Power iteration on ``M + I`` (the identity shift makes the iteration
    aperiodic without moving the Perron root by more than the exact +1) with
    the classical min/max ratio bounds: for any positive vector ``x``,
    ``min_i (Ax)_i / x_i <= rho(A) <= max_i (Ax)_i / x_i``.  All ratios are
    exact rationals, so the enclosure is certified by construction.

    Matrices with a negative entry, and reducible matrices, are rejected;
    for those the characteristic-polynomial route must be used instead.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not m.is_nonnegative():
        raise ValueError("perron_root requires a nonnegative matrix")
    if not is_irreducible(m):
        raise ValueError("perron_root requires an irreducible matrix")
    width = Fraction(tol)
    n = m.dim
    if n == 1:
        c = m.entries[0][0]
        lo, hi = Fraction(c) - width / 2, Fraction(c) + width / 2
        return RootEnclosure(lo, hi, to_witness(Fraction(c)), certified=False)
    shifted = IntMatrix([[m.entries[i][j] + (i == j) for j in range(n)] for i in range(n)])
    x = [1] * n
    best_lo = Fraction(0)
    best_hi = None
    for _ in range(100000):
        y = shifted.mul_vector(x)
        ratios = [Fraction(y[i], x[i]) for i in range(n)]
        lo, hi = min(ratios), max(ratios)
        if lo > best_lo:
            best_lo = lo
        if best_hi is None or hi < best_hi:
            best_hi = hi
        if best_hi - best_lo <= width / 2:
            # pad so the interval stays open even when the ratio bounds
            # collapse onto the eigenvalue exactly
            lower = best_lo - 1 - width / 8
            upper = best_hi - 1 + width / 8
            mid = (lower + upper) / 2
            return RootEnclosure(lower, upper, to_witness(mid), certified=False)
        g = gcd(*y)
        x = [v // g for v in y] if g > 1 else list(y)
    raise ArithmeticError("power iteration did not reach the requested width")
