"""Dense linear algebra over Z_p for small primes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

Vector = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class MatModP:
    p: int
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        arr = arr % self.p
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], cols: int | None = None) -> "MatModP":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(p, np.zeros((0, cols or 0), dtype=np.int64))
        return cls(p, np.array(rows, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def row_tuples(self) -> list[Vector]:
        return [tuple(int(x) for x in r) for r in self.data]

    def __matmul__(self, other: "MatModP") -> "MatModP":
        return MatModP(self.p, (self.data @ other.data) % self.p)

    @property
    def T(self) -> "MatModP":
        return MatModP(self.p, self.data.T)

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MatModP) and self.p == other.p
                and self.data.shape == other.data.shape and bool((self.data == other.data).all()))

    def __repr__(self) -> str:
        return f"MatModP(p={self.p}, {self.rows}x{self.cols})"


def rref(mat: MatModP) -> tuple[MatModP, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns."""
    p = mat.p
    a = mat.data.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return MatModP(p, a), r, pivots


def rank(mat: MatModP) -> int:
    return rref(mat)[1]


def nullspace_basis(mat: MatModP) -> list[Vector]:
    """Basis of {x : mat @ x = 0}, one vector per free column, in column order."""
    red, rk, pivots = rref(mat)
    p, cols = mat.p, mat.cols
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = int(-red.data[i, f]) % p
        out.append(tuple(v))
    return out


def row_space_basis(mat: MatModP) -> list[Vector]:
    red, rk, _ = rref(mat)
    return red.row_tuples()[:rk]


@dataclass(frozen=True)
class BasisZpn:
    """Ordered basis of Z_p^n whose first ``split`` vectors span a designated subspace."""

    p: int
    n: int
    vectors: tuple[Vector, ...]
    split: int

    def __post_init__(self):
        if len(self.vectors) != self.n or any(len(v) != self.n for v in self.vectors):
            raise ValueError("basis must consist of n vectors of length n")
        if rank(MatModP.from_rows(self.p, self.vectors, self.n)) != self.n:
            raise ValueError("basis vectors are linearly dependent")

    @cached_property
    def _inverse(self) -> np.ndarray:
        # columns of B are the basis vectors; coordinates solve B a = alpha
        n, p = self.n, self.p
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        B = np.array(self.vectors, dtype=np.int64).T
        aug = MatModP(p, np.hstack([B, np.eye(n, dtype=np.int64)]))
        red, _, _ = rref(aug)
        return red.data[:, n:].copy()

    def coordinates(self, alpha: Sequence[int]) -> Vector:
        if len(alpha) != self.n:
            raise ValueError("vector length does not match the basis")
        if self.n == 0:
            return ()
        a = (self._inverse @ np.asarray(alpha, dtype=np.int64)) % self.p
        return tuple(int(x) for x in a)

    def project(self, alpha: Sequence[int]) -> Vector:
        """Trailing coordinates: the coset of the designated subspace containing alpha."""
        return self.coordinates(alpha)[self.split:]


def coordinates(basis: BasisZpn, alpha: Sequence[int]) -> Vector:
    return basis.coordinates(alpha)


def extend_to_basis(span: Sequence[Sequence[int]], p: int, n: int) -> BasisZpn:
    """Keep ``span`` as the leading block, then add e_1, e_2, ... greedily."""
    vecs = [tuple(int(x) % p for x in v) for v in span]
    if vecs and rank(MatModP.from_rows(p, vecs, n)) != len(vecs):
        raise ValueError("spanning vectors are linearly dependent")
    out = list(vecs)
    for i in range(n):
        if len(out) == n:
            break
        e = tuple(1 if j == i else 0 for j in range(n))
        if rank(MatModP.from_rows(p, out + [e], n)) == len(out) + 1:
            out.append(e)
    return BasisZpn(p, n, tuple(out), len(vecs))
