"""End-to-end pipelines: clique reduction through a Goppa quotient, recovery of
omega, the chromatic gadget, the approximation driver and the cubelike
embedding."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .cayley import (
    CayleySpec,
    CaveatRegime,
    ElementaryGroup,
    FreeQuotient,
    chromatic_number_cayley,
    clique_down,
    clique_number,
    free_quotient,
    verify_induced_copy,
)
from .codes import DEFAULT_CODEWORD_BUDGET, GoppaInputs, LinearCode, bch, goppa, monomial
from .gf import FieldContext, format_poly
from .graph import DEFAULT_MAX_NODES, Check, Graph, has_clique_of_size, max_clique, pad_isolated

GOPPA_DEGREE = 6


class SmallInstance(ValueError):
    """v < p^2: the reduction is not defined and omega should be solved directly."""


def choose_m(v: int, p: int) -> int:
    """Largest m in (log_p v, 2 log_p v], i.e. the largest m with p^m <= v^2."""
    if v < p * p:
        raise SmallInstance(f"v={v} is below p^2={p * p}")
    m = 0
    while p ** (m + 1) <= v * v:
        m += 1
    assert p ** m > v, "v >= p guarantees p^m > v"
    return m


@dataclass
class ReductionReport:
    v: int
    edges: int
    p: int
    m: int | None
    modulus: tuple[int, ...] | None
    support_exponents: tuple[int, ...]
    code: LinearCode
    quotient: FreeQuotient
    omega_quotient: int | None = None
    omega_input: int | None = None
    caveat_path: str = "none"
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def spec(self) -> CayleySpec:
        return self.quotient.spec

    @property
    def quotient_dim(self) -> int:
        return self.v - self.code.k

    @property
    def within_poly_bound(self) -> bool:
        """p^(v-k) <= v^12; only meaningful once v >= p^2."""
        return self.p ** self.quotient_dim <= self.v ** 12

    def lines(self) -> list[tuple[str, str]]:
        d = self.code.distance
        out = [
            ("v", str(self.v)),
            ("edges", str(self.edges)),
            ("p", str(self.p)),
            ("m", "none" if self.m is None else str(self.m)),
            ("modulus", "none" if self.modulus is None else format_poly(self.modulus)),
            ("support", " ".join(f"a^{e}" for e in self.support_exponents) or "none"),
            ("code_n", str(self.code.n)),
            ("code_k", str(self.code.k)),
            ("code_d", "none" if d is None else ("inf" if d.d == float("inf") else str(int(d.d)))),
            ("code_d_method", "none" if d is None else d.method + ("" if d.exact else " (lower bound)")),
            ("quotient_dim", str(self.quotient_dim)),
            ("quotient_order", str(self.p ** self.quotient_dim)),
            ("within_v12_bound", str(self.within_poly_bound).lower()),
            ("conn_size", str(len(self.quotient.free.connection))),
            ("quotient_conn_size", str(len(self.spec.connection))),
            ("omega_quotient", "none" if self.omega_quotient is None else str(self.omega_quotient)),
            ("omega_input", "none" if self.omega_input is None else str(self.omega_input)),
            ("caveat_path", self.caveat_path),
        ]
        out += [(f"time_{k}", f"{v:.4f}") for k, v in self.timings.items()]
        return out

    def to_text(self) -> str:
        body = "\n".join(f"{k}={v}" for k, v in self.lines())
        c, cq = len(self.quotient.free.connection), len(self.spec.connection)
        rel = "=" if c == cq else "<"
        return body + f"\n|C'| {rel} |C|: {cq} {rel} {c}\n"


def reduce_clique(
    x: Graph,
    p: int,
    allow_small: bool = False,
    solve: bool = True,
    budget: int = DEFAULT_CODEWORD_BUDGET,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> ReductionReport:
    """Build Z_p(X)_D for the Goppa code with g = x^6 and L = alpha^1..alpha^v.

    With ``allow_small`` a graph with v < p^2 gets the trivial code instead of
    raising ``SmallInstance``.  With ``solve`` the quotient's clique number is
    computed through the identity neighbourhood and mapped back to omega(X).
    """
    v = x.order
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    try:
        m = choose_m(v, p)
    except SmallInstance:
        if not allow_small:
            raise
        m = None
    if m is None:
        fq = free_quotient(x, p)
        modulus, exps = None, ()
        timings["build"] = time.perf_counter() - t0
    else:
        ctx = FieldContext.build(p, m)
        alpha = ctx.primitive
        exps = tuple(range(1, v + 1))
        support = tuple(ctx.pow(alpha, e) for e in exps)
        code = goppa(GoppaInputs(ctx, monomial(ctx, GOPPA_DEGREE), support), budget)
        timings["code"] = time.perf_counter() - t0
        t1 = time.perf_counter()
        fq = free_quotient(x, p, code)
        modulus = ctx.modulus
        timings["quotient"] = time.perf_counter() - t1
    rep = ReductionReport(v, x.size, p, m, modulus, exps, fq.code, fq, timings=timings)
    if solve:
        t2 = time.perf_counter()
        rep.omega_quotient = clique_number(rep.spec, max_nodes)[0]
        rep.omega_input, rep.caveat_path = recover_omega(rep.omega_quotient, p, x)
        timings["omega"] = time.perf_counter() - t2
    return rep


def recover_omega(omega_q: int, p: int, x: Graph) -> tuple[int, str]:
    """omega(X) from the clique number of a distance >= 7 quotient.

    Returns the value and the caveat path taken.
    """
    if p == 2 and omega_q == 4:
        return (4 if has_clique_of_size(x, 4) is not None else 3), "p2_check34"
    if p == 3 and omega_q == 3:
        return (3 if has_clique_of_size(x, 3) is not None else 2), "p3_check23"
    return omega_q, "none"


def recover_clique(t: list[tuple[int, ...]], fq: FreeQuotient) -> list[int]:
    """A clique of X from a clique of the quotient, falling back to exhaustive
    search in the caveat regimes.  Only a 4-clique for p = 2 can shrink (to 3)."""
    try:
        return list(clique_down(t, fq).image)
    except CaveatRegime:
        target = len(t)
        if fq.p == 2 and target == 4:
            target = recover_omega(4, 2, fq.graph)[0]
        found = has_clique_of_size(fq.graph, target)
        if found is None:
            raise
        return sorted(found)


# ---------------------------------------------------------------------------
# chromatic gadget


@dataclass(frozen=True)
class GadgetSpec:
    base: CayleySpec
    level: int
    spec: CayleySpec

    @property
    def p(self) -> int:
        return self.base.group.p

    @property
    def n(self) -> int:
        return self.base.group.n


def gadget(base: CayleySpec, i: int) -> GadgetSpec:
    """Gamma_i over Z_p^(i+n): coordinates are (x in Z_p^i, y in Z_p^n).

    K gives K_{p^i} box K_{p^n}; the extra elements (x, c) with x != 0 and c a
    non-zero non-neighbour of Gamma join copies along non-edges of Gamma.
    """
    group = base.group
    if not isinstance(group, ElementaryGroup):
        raise TypeError("gadget base must be a Z_p^n spec")
    p, n = group.p, group.n
    if not 1 <= i <= n:
        raise ValueError(f"level {i} outside 1..{n}")
    zero_i, zero_n = (0,) * i, (0,) * n
    xs = [a for a in product(range(p), repeat=i) if a != zero_i]
    ys = [b for b in product(range(p), repeat=n) if b != zero_n]
    cset = base.connection_set()
    non_nbrs = [c for c in ys if c not in cset]
    conn = [a + zero_n for a in xs] + [zero_i + b for b in ys] + [a + c for a in xs for c in non_nbrs]
    return GadgetSpec(base, i, CayleySpec(ElementaryGroup(p, n + i), tuple(conn)))


# ---------------------------------------------------------------------------
# approximation driver

ChromaOracle = Callable[[CayleySpec, int], int]


def default_oracle(max_nodes: int = DEFAULT_MAX_NODES) -> ChromaOracle:
    """Certified Cayley chromatic number; values above ``threshold`` may be lower bounds."""
    def oracle(spec: CayleySpec, threshold: int) -> int:
        return chromatic_number_cayley(spec, resolve_above=threshold, max_nodes=max_nodes)
    return oracle


@dataclass
class DriverResult:
    p: int
    n: int
    y: int
    levels: list[tuple[int, int]]
    gamma: CayleySpec
    omega_gamma: int | None
    caveat: str

    @property
    def bound(self) -> int:
        return self.p ** self.y

    def bracket_ok(self) -> bool | None:
        if self.omega_gamma is None:
            return None
        return self.p ** self.y <= self.omega_gamma < self.p ** (self.y + 1)


def approx_clique_driver(
    x: Graph,
    p: int,
    oracle: ChromaOracle | None = None,
    compute_omega: bool = True,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> DriverResult:
    """Find y = floor(log_p omega(Gamma)) using only a chromatic-number oracle.

    Gamma is the reduction quotient (the free Cayley graph when v < p^2).
    Levels are scanned upwards and the scan stops at the first level with
    chi(Gamma_i) > p^n; since chi(Gamma_i) = p^n exactly when omega >= p^i,
    this returns the same y as a full sweep.
    """
    oracle = oracle or default_oracle(max_nodes)
    rep = reduce_clique(x, p, allow_small=True, solve=False)
    gamma = rep.spec
    n = gamma.group.n
    target = p ** n
    y, levels = 0, []
    for i in range(1, n + 1):
        chi = oracle(gadget(gamma, i).spec, target)
        levels.append((i, chi))
        if chi != target:
            break
        y = i
    omega = clique_number(gamma, max_nodes)[0] if compute_omega else None
    caveat = "none"
    if p == 2:
        caveat = "omega(Gamma)=4 may come from omega(X)=3"
    elif p == 3:
        caveat = "omega(Gamma)=3 may come from omega(X)=2"
    return DriverResult(p, n, y, levels, gamma, omega, caveat)


# ---------------------------------------------------------------------------
# cubelike embedding


@dataclass
class Embedding:
    x: Graph
    m: int
    padded: int
    code: LinearCode
    quotient: FreeQuotient
    induced: Check

    @property
    def spec(self) -> CayleySpec:
        return self.quotient.spec

    @property
    def size(self) -> int:
        return 2 ** (self.padded - self.code.k)

    @property
    def size_bound(self) -> int:
        return (self.padded + 1) ** 2

    @property
    def image(self) -> list[tuple[int, ...]]:
        return [self.quotient.vertex_image(i) for i in range(self.x.order)]

    @property
    def ok(self) -> bool:
        return self.induced.ok and self.size <= self.size_bound


def embed_cubelike(x: Graph, budget: int = DEFAULT_CODEWORD_BUDGET) -> Embedding:
    """Induced copy of X in a cubelike graph on at most (v'+1)^2 vertices,
    v' = 2^m - 1 the padded order, via the quotient by BCH(m, 2)."""
    m = 3
    while 2 ** m - 1 < x.order:
        m += 1
    padded = 2 ** m - 1
    code = bch(m, 2, budget)
    fq = free_quotient(pad_isolated(x, padded), 2, code)
    check = verify_induced_copy(fq)
    if not check.ok:
        raise AssertionError(f"induced copy failed: {check.reason}")
    return Embedding(x, m, padded, code, fq, check)


def omega_exact(x: Graph, max_nodes: int = DEFAULT_MAX_NODES) -> int:
    return max_clique(x, max_nodes)[0]
