"""Exact integer linear algebra: Smith normal form and finitely generated
abelian groups, plus the Mayer-Vietoris computation for Dehn fillings of the
twisted interval bundle over the Klein bottle.

Matrices are plain lists of lists of Python ints, so entries never overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .lens_core import Basis, TorusClass

IntMatrix = List[List[int]]

__all__ = [
    "IntMatrix", "AbelianGroup", "identity", "matmul", "determinant",
    "smith_normal_form", "cokernel", "attached_disc_quotient", "inclusion_map_H1", "dehn_filling_H1",
]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _as_matrix(m: Sequence[Sequence[int]], cols: int = None) -> IntMatrix:
    rows = [[int(x) for x in row] for row in m]
    width = len(rows[0]) if rows else (cols or 0)
    if any(len(row) != width for row in rows):
        raise ValueError("ragged integer matrix")
    return rows


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    inner = len(b)
    width = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(width)]
            for row in a]


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]], cols: int = None
                      ) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U @ m @ V == D.

    U and V are unimodular and D is diagonal with non-negative entries
    d_1 | d_2 | ... .  Pivots are chosen as the entry of smallest absolute
    value in the remaining block, first in row-major order, so the output is
    deterministic.  ``cols`` is only needed for a matrix with no rows.
    """
    d = _as_matrix(m, cols)
    nrows = len(d)
    ncols = len(d[0]) if d else (cols or 0)
    u = identity(nrows)
    v = identity(ncols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def smallest(t):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    for t in range(min(nrows, ncols)):
        found = smallest(t)
        if found is None:
            break
        _, i, j = found
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // d[t][t]))
                    dirty |= d[i][t] != 0
            for j in range(t + 1, ncols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // d[t][t]))
                    dirty |= d[t][j] != 0
            if dirty:
                # a remainder survived; move the smallest one into the pivot
                best = None
                for i in range(t, nrows):
                    x = d[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t, ncols):
                    x = d[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            pivot = d[t][t]
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if d[i][j] % pivot), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z_{d_1} + ... + Z_{d_k} with d_1 | ... | d_k, all d_i >= 2."""

    torsion: Tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if any(x < 2 for x in t):
            raise ValueError(f"invariant factors must be >= 2: {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {t}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @classmethod
    def from_diagonal(cls, diag: Sequence[int], ngens: int) -> "AbelianGroup":
        diag = [abs(x) for x in diag]
        nonzero = [x for x in diag if x]
        return cls(tuple(x for x in nonzero if x > 1), ngens - len(nonzero))

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls((n,) if n > 1 else ())

    @property
    def order(self) -> float:
        """Group order; ``math.inf`` when the free rank is positive."""
        if self.free_rank:
            return math.inf
        return math.prod(self.torsion)

    @property
    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.torsion) <= 1

    @property
    def is_trivial(self) -> bool:
        return not self.free_rank and not self.torsion

    @property
    def generator_count(self) -> int:
        return self.free_rank + len(self.torsion)

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def cokernel(relations: Sequence[Sequence[int]], ambient: AbelianGroup) -> AbelianGroup:
    """Quotient of ``ambient`` by the subgroup generated by the given rows.

    Coordinates: the free generators of ``ambient`` first, then one generator
    per torsion factor.
    """
    ngens = ambient.generator_count
    rows = _as_matrix(relations, ngens)
    if any(len(row) != ngens for row in rows):
        raise ValueError(f"relations need {ngens} columns to match {ambient}")
    for i, order in enumerate(ambient.torsion):
        row = [0] * ngens
        row[ambient.free_rank + i] = order
        rows.append(row)
    if not rows:
        return AbelianGroup((), ngens)
    _, d, _ = smith_normal_form(rows, ngens)
    diag = [d[i][i] for i in range(min(len(d), ngens))]
    return AbelianGroup.from_diagonal(diag, ngens)


def inclusion_map_H1(c: TorusClass) -> Tuple[int, int]:
    """H_1(T) -> H_1(nu K) = Z + Z_2,  (n, l) -> (2n, l mod 2)."""
    if c.basis is not Basis.NUK_BOUNDARY:
        raise ValueError(f"expected a class on the boundary of nu K, got {c.basis.value}")
    return 2 * c.mu, c.lam % 2


NUK_H1 = AbelianGroup((2,), 1)


def attached_disc_quotient(n: int, ell: int) -> AbelianGroup:
    """(Z + Z_2) / <(2n, l mod 2)>, with no primitivity requirement."""
    image = inclusion_map_H1(TorusClass(n, ell, Basis.NUK_BOUNDARY))
    return cokernel([list(image)], NUK_H1)


def dehn_filling_H1(n: int, ell: int) -> AbelianGroup:
    """First homology after attaching a meridian disc along (n, l)."""
    if math.gcd(n, ell) != 1:
        raise ValueError(f"attaching class not primitive: gcd({n}, {ell}) != 1")
    return attached_disc_quotient(n, ell)
