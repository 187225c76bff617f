"""Linear codes over Z_p: Goppa and binary BCH constructions, generator/parity
conversion and brute-force minimum distance certification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .fplinalg import MatModP, Vector, nullspace_basis, rank, rref
from .gf import FieldContext, FieldElement, poly_mul

INF = math.inf
DEFAULT_CODEWORD_BUDGET = 1 << 20


class DistanceBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DistanceCert:
    """Minimum distance ``d`` (``INF`` for the zero code).

    ``exact`` is True for enumerated distances; otherwise ``d`` is a proven
    lower bound from the construction.
    """

    d: float
    method: str
    exact: bool = True


@dataclass(frozen=True)
class LinearCode:
    p: int
    n: int
    k: int
    generator: MatModP
    parity: MatModP = field(compare=False)  # derived from the generator
    provenance: str = "explicit"
    distance: DistanceCert | None = None

    def __post_init__(self):
        if self.generator.rows != self.k or self.generator.cols != self.n:
            raise ValueError("generator shape does not match (k, n)")
        if self.parity.rows != self.n - self.k or self.parity.cols != self.n:
            raise ValueError("parity shape does not match (n-k, n)")
        if not (self.generator @ self.parity.T).is_zero():
            raise ValueError("generator and parity matrices do not annihilate")
        if rank(self.generator) != self.k or rank(self.parity) != self.n - self.k:
            raise ValueError("generator or parity matrix is rank deficient")

    @property
    def size(self) -> int:
        return self.p ** self.k

    def contains(self, vec: Sequence[int]) -> bool:
        if self.n == 0:
            return True
        return not ((self.parity.data @ np.asarray(vec, dtype=np.int64)) % self.p).any()

    def codewords(self) -> Iterator[Vector]:
        G = self.generator.data
        for coeffs in product(range(self.p), repeat=self.k):
            if self.k:
                yield tuple(int(x) for x in (np.asarray(coeffs) @ G) % self.p)
            else:
                yield (0,) * self.n

    def basis(self) -> list[Vector]:
        return self.generator.row_tuples()

    def with_distance(self, cert: DistanceCert) -> "LinearCode":
        return replace(self, distance=cert)

    def distance_at_least(self, d: int) -> bool:
        """True only when a certificate proves minimum distance >= d."""
        return self.distance is not None and self.distance.d >= d


# ---------------------------------------------------------------------------
# generator / parity conversion


def _dual_generator(mat: MatModP) -> MatModP:
    """Generator of the dual of row(mat), through standard form with column bookkeeping.

    Row-reduce to get pivots; permuting pivot columns to the front gives
    [I_k | A], the dual is [-A^T | I_{n-k}], and the permutation is undone.
    """
    p, n = mat.p, mat.cols
    red, k, pivots = rref(mat)
    free = [c for c in range(n) if c not in pivots]
    perm = pivots + free
    A = red.data[:k][:, free]
    dual_std = np.hstack([(-A.T) % p, np.eye(n - k, dtype=np.int64)]) if n - k else np.zeros((0, n), dtype=np.int64)
    out = np.zeros((n - k, n), dtype=np.int64)
    for j, c in enumerate(perm):
        out[:, c] = dual_std[:, j]
    return MatModP(p, out)


def parity_from_generator(gen: MatModP) -> MatModP:
    return _dual_generator(gen)


def generator_from_parity(par: MatModP) -> MatModP:
    return _dual_generator(par)


def _full_rank(mat: MatModP) -> MatModP:
    red, rk, _ = rref(mat)
    return MatModP(mat.p, red.data[:rk])


def code_from_generator(gen: MatModP, provenance: str = "explicit") -> LinearCode:
    g = _full_rank(gen)
    return LinearCode(gen.p, gen.cols, g.rows, g, parity_from_generator(g), provenance)


def code_from_parity(par: MatModP, provenance: str = "explicit") -> LinearCode:
    h = _full_rank(par)
    gen = generator_from_parity(h)
    return LinearCode(par.p, par.cols, gen.rows, gen, h, provenance)


def trivial_code(p: int, n: int) -> LinearCode:
    """The zero code {0}; its distance is the infinite sentinel."""
    gen = MatModP(p, np.zeros((0, n), dtype=np.int64))
    par = MatModP(p, np.eye(n, dtype=np.int64))
    return LinearCode(p, n, 0, gen, par, "trivial", DistanceCert(INF, "trivial"))


def repetition_code(n: int, p: int = 2) -> LinearCode:
    return code_from_generator(MatModP.from_rows(p, [[1] * n]), f"repetition n={n}")


# ---------------------------------------------------------------------------
# distance


def min_distance_bruteforce(code: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> DistanceCert:
    if code.k == 0:
        return DistanceCert(INF, "trivial")
    if code.size > budget:
        raise DistanceBudgetExceeded(f"{code.size} codewords exceed the budget of {budget}")
    G = code.generator.data
    best = code.n
    # row 0 of coeffs is the zero vector; enumerate the rest in chunks
    coeffs = np.array(list(product(range(code.p), repeat=code.k)), dtype=np.int64)[1:]
    for start in range(0, len(coeffs), 1 << 16):
        words = (coeffs[start:start + (1 << 16)] @ G) % code.p
        w = int(np.count_nonzero(words, axis=1).min())
        best = min(best, w)
    return DistanceCert(best, "enumeration")


def certify(code: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> LinearCode:
    return code.with_distance(min_distance_bruteforce(code, budget))


# ---------------------------------------------------------------------------
# Goppa codes


@dataclass(frozen=True)
class GoppaInputs:
    ctx: FieldContext
    g: tuple[FieldElement, ...]  # little-endian coefficients in GF(p^m)
    L: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(set(self.L)) != len(self.L):
            raise ValueError("support L contains repeated elements")
        for a in self.L:
            if not any(self.ctx.eval_poly(self.g, a)):
                raise ValueError(f"support element {a} is a root of g")

    @property
    def degree(self) -> int:
        deg = len(self.g) - 1
        while deg >= 0 and not any(self.g[deg]):
            deg -= 1
        return deg


def monomial(ctx: FieldContext, r: int) -> tuple[FieldElement, ...]:
    """Coefficients of x^r over GF(p^m)."""
    return tuple([ctx.zero] * r + [ctx.one])


def goppa_parity_matrix(inputs: GoppaInputs) -> MatModP:
    """Expanded check matrix: rows i = 0..r-1 of alpha_j^i / g(alpha_j), each
    GF(p^m) entry written as m rows over Z_p."""
    ctx = inputs.ctx
    r = inputs.degree
    if r < 1:
        raise ValueError("Goppa polynomial must have degree >= 1")
    cols = []
    for a in inputs.L:
        ginv = ctx.inv(ctx.eval_poly(inputs.g, a))
        col = []
        power = ctx.one
        for _ in range(r):
            col.extend(ctx.mul(power, ginv))
            power = ctx.mul(power, a)
        cols.append(col)
    data = np.array(cols, dtype=np.int64).T if cols else np.zeros((r * ctx.m, 0), dtype=np.int64)
    return MatModP(ctx.p, data)


def goppa(inputs: GoppaInputs, budget: int = DEFAULT_CODEWORD_BUDGET) -> LinearCode:
    """Goppa code D(g, L) over Z_p.

    The distance certificate is enumerated when p^k fits the budget and is
    otherwise the construction bound d >= deg(g) + 1.
    """
    ctx = inputs.ctx
    r, n = inputs.degree, len(inputs.L)
    H = goppa_parity_matrix(inputs)
    gen_rows = nullspace_basis(H)
    k = len(gen_rows)
    if k < n - r * ctx.m:
        raise AssertionError("rank bound k >= n - r*m violated")
    gen = MatModP.from_rows(ctx.p, gen_rows, n)
    par = _full_rank(H)
    prov = (f"goppa p={ctx.p} m={ctx.m} modulus={list(ctx.modulus)} r={r} n={n} rows=0..{r - 1}")
    code = LinearCode(ctx.p, n, k, gen, par, prov)
    if code.size <= budget:
        return certify(code, budget)
    return code.with_distance(DistanceCert(r + 1, "goppa_bound", exact=False))


# ---------------------------------------------------------------------------
# binary BCH codes


def minimal_polynomial(ctx: FieldContext, beta: FieldElement) -> list[int]:
    """Minimal polynomial over GF(p) of beta, as little-endian Z_p coefficients."""
    conj = []
    c = beta
    while c not in conj:
        conj.append(c)
        c = ctx.pow(c, ctx.p)
    poly = [ctx.one]
    for root in conj:
        # multiply by (x - root)
        shifted = [ctx.zero] + poly
        scaled = [ctx.mul(ctx.neg(root), a) for a in poly] + [ctx.zero]
        poly = [ctx.add(a, b) for a, b in zip(shifted, scaled)]
    out = []
    for coeff in poly:
        if any(coeff[1:]):
            raise AssertionError("minimal polynomial has coefficients outside GF(p)")
        out.append(coeff[0])
    return out


def bch_generator_polynomial(m: int, t: int) -> list[int]:
    ctx = FieldContext.build(2, m)
    alpha = ctx.primitive
    g = [1]
    seen: set[FieldElement] = set()
    for i in range(1, 2 * t + 1):
        beta = ctx.pow(alpha, i)
        if beta in seen:
            continue
        mp = minimal_polynomial(ctx, beta)
        c = beta
        while c not in seen:
            seen.add(c)
            c = ctx.pow(c, 2)
        g = poly_mul(g, mp, 2)
    return g


def bch(m: int, t: int, budget: int = DEFAULT_CODEWORD_BUDGET) -> LinearCode:
    """Narrow-sense binary BCH code of length 2^m - 1 and designed distance 2t + 1."""
    if m < 3 or not 0 <= t < 2 ** (m - 1):
        raise ValueError("BCH parameters require m >= 3 and 0 <= t < 2^(m-1)")
    n = 2 ** m - 1
    g = bch_generator_polynomial(m, t)
    k = n - (len(g) - 1)
    rows = [[0] * i + g + [0] * (n - len(g) - i) for i in range(k)]
    gen = MatModP.from_rows(2, rows, n)
    code = LinearCode(2, n, k, gen, parity_from_generator(gen), f"bch m={m} t={t} g={g}")
    if k < n - m * t:
        raise AssertionError("BCH rank bound violated")
    if code.size <= budget:
        code = certify(code, budget)
        if code.distance.d < 2 * t + 1:
            raise AssertionError("BCH designed distance violated")
        return code
    return code.with_distance(DistanceCert(2 * t + 1, "bch_bound", exact=False))

