"""Constant term of the regularized I-series of a complete intersection in G(n, n+k).

The coefficient of ``t**(d0*d)`` is

    prod_{i=0..l} (d_i d)! / (d!)**(k+n) * S(d)

where ``S(d)`` sums, over integer grids ``s[i][j]`` (``1 <= i < k``,
``1 <= j < n``) with ``s[k][j] = s[i][n] = d``, the product of
``C(s[i+1][j], s[i][j]) * C(s[i][j+1], s[i][j])``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .quiver import ModelSpec


@dataclass(frozen=True)
class SeriesPrefix:
    coefficients: tuple[int, ...]
    spec: ModelSpec | None = None

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)

    def to_dict(self) -> dict:
        out = {}
        if self.spec is not None:
            out["spec"] = self.spec.to_dict()
        out["coefficients"] = [str(c) for c in self.coefficients]
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def fano_index(spec: ModelSpec) -> int:
    return spec.k + spec.n - sum(spec.degrees)


def grid_sum_naive(k: int, n: int, d: int) -> int:
    """``S(d)`` by enumerating all ``(d+1)**((k-1)(n-1))`` grids."""
    cells = [(i, j) for i in range(1, k) for j in range(1, n)]

    def s(grid, i, j):
        return d if i == k or j == n else grid[(i, j)]

    total = 0
    for values in itertools.product(range(d + 1), repeat=len(cells)):
        grid = dict(zip(cells, values))
        term = 1
        for i, j in cells:
            x = grid[(i, j)]
            term *= comb(s(grid, i + 1, j), x) * comb(s(grid, i, j + 1), x)
            if not term:
                break
        total += term
    return total


def grid_sum(k: int, n: int, d: int) -> int:
    """``S(d)`` by a cell-by-cell transfer over columns ``n-1, ..., 1``.

    The state holds one value per row ``1..k-1``: rows already handled in the
    current column hold their new value, the others still hold the value of
    the column to the right.  Only nonzero states are kept, and since
    ``s[i][j] <= min(s[i+1][j], s[i][j+1])`` there are few of them.
    """
    if k > n:
        k, n = n, k  # the sum is symmetric under transposing the grid
    rows = k - 1
    states: dict[tuple[int, ...], int] = {(d,) * rows: 1}
    for _ in range(n - 1):
        for i in range(rows - 1, -1, -1):
            nxt: dict[tuple[int, ...], int] = {}
            for state, weight in states.items():
                below = state[i + 1] if i + 1 < rows else d
                right = state[i]
                for x in range(min(below, right) + 1):
                    w = weight * comb(below, x) * comb(right, x)
                    key = state[:i] + (x,) + state[i + 1:]
                    nxt[key] = nxt.get(key, 0) + w
            states = nxt
    return sum(states.values())


def iseries_coefficient(spec: ModelSpec, d: int, naive: bool = False) -> int:
    """Coefficient of ``t**(d0*d)``."""
    d0 = fano_index(spec)
    numerator = factorial(d0 * d)
    for di in spec.degrees:
        numerator *= factorial(di * d)
    inner = (grid_sum_naive if naive else grid_sum)(spec.k, spec.n, d)
    value = Fraction(numerator * inner, factorial(d) ** (spec.k + spec.n))
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral I-series coefficient {value} at d={d} for {spec}")
    return value.numerator


def iseries(spec: ModelSpec, order: int) -> SeriesPrefix:
    if order < 0:
        raise ValueError("order must be nonnegative")
    d0 = fano_index(spec)
    coeffs = [0] * (order + 1)
    for d in range(order // d0 + 1):
        coeffs[d0 * d] = iseries_coefficient(spec, d)
    return SeriesPrefix(tuple(coeffs), spec)
