"""GF(p) and GF(p^m) arithmetic.

GF(p^m) elements are coefficient tuples of length m, little-endian in the
powers of the generator symbol x, reduced modulo a monic irreducible of
degree m.  Polynomials over Z_p outside a field context are plain
little-endian coefficient lists with no trailing zeros (``[]`` is zero).

Enumeration order for polynomials and field elements is by the integer
``sum(c_i * p**i)``, so e.g. the first irreducible cubic over Z_2 is
x^3 + x + 1 and the first element of GF(9) = Z_3[x]/(x^2+1) of full order
is x + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

Poly = list[int]
FieldElement = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over Z_p


def trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[Poly, Poly]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = r[-1] * inv_lead % p
        q[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - c * bi) % p
        r = trim(r)
    return trim(q), r


def poly_from_index(idx: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        idx, c = divmod(idx, p)
        out.append(c)
    return out


def monic_polys(p: int, degree: int) -> Iterator[Poly]:
    """Monic polynomials of the given degree in enumeration order."""
    for idx in range(p ** degree):
        yield poly_from_index(idx, p, degree) + [1]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg(f)//2.

    For degree <= 3 this is exactly the root test.
    """
    f = trim(f)
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in monic_polys(p, d):
            if not poly_divmod(f, q, p)[1]:
                return False
    return True


def find_irreducible(p: int, m: int) -> Poly:
    """First monic irreducible of degree m over Z_p in enumeration order."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be at least 1")
    for f in monic_polys(p, m):
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


def format_poly(f: Sequence[int]) -> str:
    return " ".join(str(c) for c in f)


def parse_poly(text: str) -> Poly:
    return [int(t) for t in text.split()]


# ---------------------------------------------------------------------------
# extension fields


@dataclass(frozen=True)
class FieldContext:
    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {list(self.modulus)} is reducible over Z_{self.p}")

    @classmethod
    def build(cls, p: int, m: int) -> "FieldContext":
        return cls(p, m, tuple(find_irreducible(p, m)))

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def zero(self) -> FieldElement:
        return (0,) * self.m

    @property
    def one(self) -> FieldElement:
        return (1,) + (0,) * (self.m - 1)

    @property
    def x(self) -> FieldElement:
        """The generator symbol (equal to a constant when m = 1)."""
        return self.element([0, 1])

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        r = poly_divmod([c % self.p for c in coeffs], self.modulus, self.p)[1]
        return tuple(r) + (0,) * (self.m - len(r))

    def from_index(self, idx: int) -> FieldElement:
        return tuple(poly_from_index(idx, self.p, self.m))

    def index(self, a: FieldElement) -> int:
        return sum(c * self.p ** i for i, c in enumerate(a))

    def elements(self) -> Iterator[FieldElement]:
        for idx in range(self.q):
            yield self.from_index(idx)

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: FieldElement) -> FieldElement:
        return tuple(-x % self.p for x in a)

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.element(poly_mul(trim(a), trim(b), self.p))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: FieldElement) -> FieldElement:
        if not any(a):
            raise ZeroDivisionError("inverse of zero in GF(p^m)")
        return self.pow(a, self.q - 2)

    def order(self, a: FieldElement) -> int:
        """Multiplicative order of a non-zero element."""
        if not any(a):
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == self.one:
                n //= r
        return n

    @cached_property
    def primitive(self) -> FieldElement:
        return find_primitive(self)

    def eval_poly(self, coeffs: Sequence[FieldElement], a: FieldElement) -> FieldElement:
        """Horner evaluation of a polynomial with coefficients in this field."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, a), c)
        return acc


def find_primitive(ctx: FieldContext) -> FieldElement:
    """First non-zero element (enumeration order) of order p^m - 1."""
    for idx in range(1, ctx.q):
        a = ctx.from_index(idx)
        if ctx.order(a) == ctx.q - 1:
            return a
    raise AssertionError("unreachable: the multiplicative group is cyclic")


def to_vector(ctx: FieldContext, a: FieldElement) -> tuple[int, ...]:
    return tuple(a)


def all_vectors(p: int, n: int) -> Iterator[tuple[int, ...]]:
    """Z_p^n in lexicographic order."""
    return product(range(p), repeat=n)
