"""Cayley graphs given by connection sets.

Two group families are supported: the elementary Abelian groups Z_p^n, whose
elements are digit tuples, and powers G^n of a finite group given by a
multiplication table, whose elements are tuples of table indices.  Adjacency
is ``a ~ b`` iff ``a * b^-1`` lies in the connection set.

Graphs are kept implicit.  Clique questions go through the neighbourhood
of the identity, which has only ``|C|`` vertices; materialising the whole
Cayley graph is capped.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Iterable, Sequence, Union

import numpy as np

from .codes import LinearCode, trivial_code
from .fplinalg import BasisZpn, extend_to_basis
from .gf import is_prime
from .graph import (
    DEFAULT_MAX_NODES,
    Check,
    Graph,
    Partition,
    VertexMap,
    chromatic_number,
    is_r_fold_cover,
    max_clique,
    triangle_graph,
)

Element = tuple[int, ...]
DEFAULT_MAX_VERTICES = 1 << 16


class SizeCapExceeded(RuntimeError):
    pass


class CaveatRegime(RuntimeError):
    """Clique recovery is not guaranteed at this size; the
    caller must fall back to an exhaustive small-clique search."""


class InternalConsistencyError(AssertionError):
    pass


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class GroupTable:
    """Finite group by multiplication table; ``table[a][b]`` is ``a*b`` and 0 is the identity."""

    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise ValueError("group table must be square and non-empty")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise ValueError("group table entry out of range")
        for a in range(n):
            if self.table[0][a] != a or self.table[a][0] != a:
                raise ValueError("index 0 is not a two-sided identity")
        inv = []
        for a in range(n):
            row = self.table[a]
            cands = [b for b in range(n) if row[b] == 0 and self.table[b][a] == 0]
            if not cands:
                raise ValueError(f"element {a} has no inverse")
            inv.append(cands[0])
        object.__setattr__(self, "inverse", tuple(inv))
        self._check_associative()

    def _check_associative(self, seed: int = 0) -> None:
        n, t = self.order, self.table
        if n <= 64:
            triples = product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(10 * n * n))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(f"table is not associative at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, a: int, e: int) -> int:
        out = 0
        for _ in range(e % self.element_order(a)):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k


def cyclic_group(n: int) -> GroupTable:
    return GroupTable(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def symmetric_group(k: int) -> GroupTable:
    """S_k with the identity permutation first; ``(s*t)(i) = s(t(i))``."""
    perms = list(permutations(range(k)))
    index = {s: i for i, s in enumerate(perms)}
    table = tuple(tuple(index[tuple(s[t[i]] for i in range(k))] for t in perms) for s in perms)
    return GroupTable(table)


@dataclass(frozen=True)
class ElementaryGroup:
    """Z_p^n."""

    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def order(self) -> int:
        return self.p ** self.n

    @property
    def identity(self) -> Element:
        return (0,) * self.n

    def mul(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def inv(self, a: Element) -> Element:
        return tuple(-x % self.p for x in a)

    def div(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def elements(self) -> list[Element]:
        return list(product(range(self.p), repeat=self.n))

    def is_element(self, a: Element) -> bool:
        return len(a) == self.n and all(0 <= x < self.p for x in a)

    def codes(self, elems: Sequence[Element]) -> np.ndarray:
        if not len(elems):
            return np.zeros(0, dtype=np.int64)
        weights = self.p ** np.arange(self.n, dtype=np.int64)
        return (np.asarray(elems, dtype=np.int64).reshape(len(elems), self.n) @ weights)


@dataclass(frozen=True)
class PowerGroup:
    """G^n for a group given by its table."""

    table: GroupTable
    n: int

    @property
    def order(self) -> int:
        return self.table.order ** self.n

    @property
    def identity(self) -> Element:
        return (0,) * self.n

    def mul(self, a: Element, b: Element) -> Element:
        t = self.table.table
        return tuple(t[x][y] for x, y in zip(a, b))

    def inv(self, a: Element) -> Element:
        return tuple(self.table.inverse[x] for x in a)

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def elements(self) -> list[Element]:
        return list(product(range(self.table.order), repeat=self.n))

    def is_element(self, a: Element) -> bool:
        return len(a) == self.n and all(0 <= x < self.table.order for x in a)


Group = Union[ElementaryGroup, PowerGroup]


@dataclass(frozen=True)
class CayleySpec:
    """Cayley graph X(group, connection); the connection set is stored sorted."""

    group: Group
    connection: tuple[Element, ...]
    _cset: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        conn = tuple(sorted({tuple(c) for c in self.connection}))
        object.__setattr__(self, "connection", conn)
        cset = frozenset(conn)
        object.__setattr__(self, "_cset", cset)
        g = self.group
        for c in conn:
            if not g.is_element(c):
                raise ValueError(f"{c} is not an element of the group")
            if c == g.identity:
                raise ValueError("identity in the connection set would give loops")
            if g.inv(c) not in cset:
                raise ValueError(f"connection set not closed under inversion at {c}")

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def degree(self) -> int:
        return len(self.connection)

    def connection_set(self) -> frozenset[Element]:
        return self._cset

    def adjacent(self, a: Element, b: Element) -> bool:
        return self.group.div(a, b) in self.connection_set()


def neighbor_query(spec: CayleySpec, g: Element) -> list[Element]:
    return [spec.group.mul(c, g) for c in spec.connection]


def element_list(spec: CayleySpec) -> list[Element]:
    return spec.group.elements()


def materialize(spec: CayleySpec, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    """Explicit graph; vertex i is ``element_list(spec)[i]``."""
    if spec.order > max_vertices:
        raise SizeCapExceeded(f"{spec.order} vertices exceed the cap of {max_vertices}")
    elems = spec.group.elements()
    index = {e: i for i, e in enumerate(elems)}
    edges = []
    for i, e in enumerate(elems):
        for nb in neighbor_query(spec, e):
            j = index[nb]
            if i < j:
                edges.append((i, j))
    return Graph(len(elems), edges)


def _graph_on(group: Group, elems: Sequence[Element], conn: Iterable[Element]) -> Graph:
    """Graph on ``elems`` with u ~ w iff u * w^-1 is in ``conn``."""
    elems = list(elems)
    k = len(elems)
    if k == 0:
        return Graph(0)
    if isinstance(group, ElementaryGroup):
        E = np.asarray(elems, dtype=np.int64).reshape(k, group.n)
        diffs = (E[:, None, :] - E[None, :, :]) % group.p
        weights = group.p ** np.arange(group.n, dtype=np.int64)
        codes = diffs @ weights
        adj = np.isin(codes, group.codes(list(conn)))
        np.fill_diagonal(adj, False)
        masks = [int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little") for row in adj]
        return Graph.from_masks(masks)
    cset = set(conn)
    return Graph(k, [(i, j) for i, j in combinations(range(k), 2) if group.div(elems[i], elems[j]) in cset])


def neighborhood_of_identity(spec: CayleySpec) -> Graph:
    """Graph induced on the connection set; vertex i is ``spec.connection[i]``."""
    return _graph_on(spec.group, spec.connection, spec.connection)


def clique_number(spec: CayleySpec, max_nodes: int = DEFAULT_MAX_NODES) -> tuple[int, list[Element]]:
    """omega via vertex transitivity: 1 + omega of the identity's neighbourhood.

    The witness is a maximum clique containing the identity.
    """
    size, wit = max_clique(neighborhood_of_identity(spec), max_nodes)
    return size + 1, [spec.group.identity] + [spec.connection[i] for i in wit]


def complement_spec(spec: CayleySpec) -> CayleySpec:
    cset = spec.connection_set()
    ident = spec.group.identity
    return CayleySpec(spec.group, tuple(e for e in spec.group.elements() if e != ident and e not in cset))


def independence_number(spec: CayleySpec, max_nodes: int = DEFAULT_MAX_NODES) -> tuple[int, list[Element]]:
    return clique_number(complement_spec(spec), max_nodes)


def is_clique_in(spec: CayleySpec, elems: Sequence[Element]) -> bool:
    cset = spec.connection_set()
    return len(set(elems)) == len(elems) and all(
        spec.group.div(a, b) in cset for a, b in combinations(elems, 2))


# ---------------------------------------------------------------------------
# chromatic number of Cayley graphs


@dataclass(frozen=True)
class ChromaticBounds:
    lower: int
    upper: int | None
    colouring: dict[Element, int] | None
    alpha: int

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper


def _tile(spec: CayleySpec, coclique: Sequence[Element]) -> dict[Element, int] | None:
    """Greedy tiling of the group by right translates of a coclique containing
    the identity.  Translates are automorphic images, hence cocliques, so a
    tiling is a proper colouring with one colour per translate."""
    group = spec.group
    colour: dict[Element, int] = {}
    c = 0
    for g in group.elements():
        if g in colour:
            continue
        block = [group.mul(s, g) for s in coclique]
        if any(b in colour for b in block):
            return None
        for b in block:
            colour[b] = c
        c += 1
    return colour


def chromatic_bounds(spec: CayleySpec, max_nodes: int = DEFAULT_MAX_NODES) -> ChromaticBounds:
    """Certified bounds: ceil(|G| / alpha) from an exact independence number,
    and a colouring from tiling by a maximum coclique when one exists."""
    n = spec.order
    alpha, coclique = independence_number(spec, max_nodes)
    lower = -(-n // alpha)
    colouring = _tile(spec, coclique)
    upper = None if colouring is None else max(colouring.values()) + 1
    return ChromaticBounds(lower, upper, colouring, alpha)


def chromatic_number_cayley(
    spec: CayleySpec,
    resolve_above: int | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> int:
    """Chromatic number of a Cayley graph.

    When the coclique bound is met by a tiling the answer is certified without
    search.  Otherwise, if ``resolve_above`` is given and the certified lower
    bound already exceeds it, that lower bound is returned (callers that only
    need to know whether chi exceeds a threshold use this).  Failing both, the
    graph is materialised and solved exactly.
    """
    b = chromatic_bounds(spec, max_nodes)
    if b.exact:
        return b.lower
    if resolve_above is not None and b.lower > resolve_above:
        return b.lower
    return chromatic_number(materialize(spec, max_vertices), max_nodes)[0]


# ---------------------------------------------------------------------------
# free Cayley graphs for Z_p and their quotients


def unit_vector(n: int, i: int) -> Element:
    return tuple(1 if j == i else 0 for j in range(n))


def arc_element(p: int, n: int, i: int, j: int) -> Element:
    """e_i - e_j in Z_p^n."""
    v = [0] * n
    v[i] = 1
    v[j] = (v[j] - 1) % p
    return tuple(v)


def free_connection_set(x: Graph, p: int) -> CayleySpec:
    """Connection set {e_i - e_j : ij an edge of x} in Z_p^v (e_i + e_j for p = 2)."""
    v = x.order
    conn = []
    for i, j in x.edges():
        conn.append(arc_element(p, v, i, j))
        conn.append(arc_element(p, v, j, i))
    return CayleySpec(ElementaryGroup(p, v), tuple(conn))


def expected_free_omega(omega_x: int, p: int) -> int:
    """Clique number of Z_p(X) (or of a distance >= 7 quotient) predicted from omega(X)."""
    if p == 2 and omega_x == 3:
        return 4
    if p == 3 and omega_x == 2:
        return 3
    return omega_x


def coset_partition(spec: CayleySpec, code: LinearCode) -> Partition:
    """Cosets of ``code`` in Z_p^n, indexed against ``element_list(spec)``."""
    group = spec.group
    elems = group.elements()
    index = {e: i for i, e in enumerate(elems)}
    words = list(code.codewords())
    seen: set[int] = set()
    cells = []
    for e in elems:
        if index[e] in seen:
            continue
        cell = {index[group.mul(w, e)] for w in words}
        seen |= cell
        cells.append(cell)
    return Partition.of(cells)


def quotient_connection_set(spec: CayleySpec, code: LinearCode, basis: BasisZpn) -> CayleySpec:
    """Connection set of the quotient by ``code``, in trailing basis coordinates.

    Distance >= 3 keeps the quotient loopless.  The projection C -> C' is a
    bijection only when no two arcs differ by a codeword, which distance >= 5
    guarantees; ``FreeQuotient.injective`` records what actually happened.
    """
    group = spec.group
    if not isinstance(group, ElementaryGroup):
        raise TypeError("quotients are defined for Z_p^n specs")
    if code.p != group.p or code.n != group.n or basis.n != group.n or basis.split != code.k:
        raise ValueError("code, basis and spec dimensions do not agree")
    if any(not code.contains(b) for b in basis.vectors[:basis.split]):
        raise ValueError("leading basis block does not span the code")
    if not code.distance_at_least(3):
        raise ValueError("quotient requires a certified distance >= 3")
    image = [basis.project(c) for c in spec.connection]
    qgroup = ElementaryGroup(group.p, group.n - code.k)
    if qgroup.identity in image:
        raise InternalConsistencyError("a connection element lies in the code")
    # injective once d >= 5; at d = 3 or 4 two arcs can share a coset
    return CayleySpec(qgroup, tuple(image))


@dataclass(frozen=True)
class FreeQuotient:
    """Z_p(X) quotiented by a code, with the bookkeeping to move cliques across."""

    graph: Graph
    p: int
    code: LinearCode
    basis: BasisZpn
    free: CayleySpec
    spec: CayleySpec
    arc_of: dict[Element, tuple[int, int]]

    def project(self, vec: Sequence[int]) -> Element:
        return self.basis.project(vec)

    @property
    def injective(self) -> bool:
        """|C'| = |C|."""
        return len(self.spec.connection) == len(self.free.connection)

    def vertex_image(self, i: int) -> Element:
        return self.project(unit_vector(self.graph.order, i))


def free_quotient(x: Graph, p: int, code: LinearCode | None = None,
                  basis: BasisZpn | None = None) -> FreeQuotient:
    """Z_p(X)_D; with no code this is Z_p(X) itself."""
    v = x.order
    code = code if code is not None else trivial_code(p, v)
    basis = basis if basis is not None else extend_to_basis(code.basis(), p, v)
    free = free_connection_set(x, p)
    spec = quotient_connection_set(free, code, basis)
    arc_of = {}
    for i, j in x.edges():
        for a, b in ((i, j), (j, i)):
            arc_of[basis.project(arc_element(p, v, a, b))] = (a, b)
    return FreeQuotient(x, p, code, basis, free, spec, arc_of)


def code_is_coclique(fq: FreeQuotient) -> Check:
    """No non-zero codeword is a connection element, so the code is a coclique of Z_p(X)."""
    cset = fq.free.connection_set()
    for w in fq.code.codewords():
        if w in cset:
            return Check(False, f"codeword {w} lies in the connection set", w)
    return Check(True)


def verify_induced_copy(fq: FreeQuotient) -> Check:
    """Check that i -> coset of e_i embeds X as an induced subgraph of the quotient.

    Requires a distance certificate; a certificate below 5 is allowed and
    simply may produce a failing verdict.
    """
    if fq.code.distance is None:
        raise ValueError("code distance is uncertified")
    x = fq.graph
    images = [fq.vertex_image(i) for i in range(x.order)]
    if len(set(images)) != len(images):
        return Check(False, "vertex images are not distinct", images)
    cset = fq.spec.connection_set()
    group = fq.spec.group
    for i, j in combinations(range(x.order), 2):
        adj = group.div(images[i], images[j]) in cset
        if adj != x.has_edge(i, j):
            kind = "non-edge" if adj else "edge"
            return Check(False, f"{kind} ({i}, {j}) is not reproduced", (i, j))
    return Check(True, "induced copy", images)


@dataclass(frozen=True)
class TransferCert:
    direction: str  # "up": X -> Cayley graph, "down": Cayley graph -> X
    source: tuple
    image: tuple
    anchor: int | None


def clique_up(s: Sequence[int], fq: FreeQuotient) -> TransferCert:
    x = fq.graph
    s = sorted(set(s))
    if not s or not x.is_clique(s):
        raise ValueError(f"{s} is not a clique of the input graph")
    if not (fq.code.k == 0 or fq.code.distance_at_least(7)):
        raise ValueError("clique transfer into a quotient needs certified distance >= 7")
    anchor = s[0]
    v = x.order
    image = tuple(fq.project(arc_element(fq.p, v, j, anchor)) if j != anchor else fq.spec.group.identity
                  for j in s)
    if not is_clique_in(fq.spec, image):
        raise InternalConsistencyError("image of a clique is not a clique")
    return TransferCert("up", tuple(s), image, anchor)


def clique_down(t: Sequence[Element], fq: FreeQuotient) -> TransferCert:
    """Recover a clique of X of the same size from a clique of the quotient.

    If the identity is not in ``t`` the clique is translated first.  Raises
    ``CaveatRegime`` for p = 2 with |t| <= 4 and p = 3 with |t| = 2.
    """
    group = fq.spec.group
    t = [tuple(e) for e in t]
    if not t:
        raise ValueError("empty clique")
    if not is_clique_in(fq.spec, t):
        raise ValueError("t is not a clique of the Cayley graph")
    if group.identity not in t:
        shift = group.inv(t[0])
        t = [group.mul(e, shift) for e in t]
    if len(t) == 1:
        return TransferCert("down", tuple(t), (0,), None)
    if (fq.p == 2 and len(t) <= 4) or (fq.p == 3 and len(t) <= 2):
        raise CaveatRegime(f"p={fq.p} with a clique of size {len(t)} is outside the guaranteed transfer range")
    if not (fq.code.k == 0 or fq.code.distance_at_least(7)):
        raise ValueError("clique transfer out of a quotient needs certified distance >= 7")
    arcs = [fq.arc_of[e] for e in t if e != group.identity]
    common = set(arcs[0]).intersection(*map(set, arcs[1:]))
    if not common:
        raise InternalConsistencyError("clique elements share no anchor vertex")
    anchor = min(common)
    s = sorted({anchor} | {a if b == anchor else b for a, b in arcs})
    if len(s) != len(t) or not fq.graph.is_clique(s):
        raise InternalConsistencyError("recovered vertex set is not a clique of the right size")
    return TransferCert("down", tuple(t), tuple(s), anchor)


# ---------------------------------------------------------------------------
# sum distinctness of the canonical generators


@dataclass
class SumReport:
    p: int
    v: int
    checks: dict[str, Check]
    permitted: list[tuple[str, tuple, tuple]]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def check_sum_distinctness(x: Graph | int, p: int, generators: Sequence[Element] | None = None) -> SumReport:
    """Exhaustive check of the sum-distinctness statements for the generators.

    ``generators`` defaults to the unit vectors e_1..e_v of Z_p^v; passing the
    coset images of the e_i checks the same statements in a quotient.
    """
    v = x if isinstance(x, int) else x.order
    gens = [tuple(g) for g in generators] if generators is not None else [unit_vector(v, i) for i in range(v)]
    dim = len(gens[0]) if gens else 0

    def total(idxs, signs=None):
        out = [0] * dim
        for k, i in enumerate(idxs):
            sgn = 1 if signs is None else signs[k]
            for c in range(dim):
                out[c] += sgn * gens[i][c]
        return tuple(a % p for a in out)

    checks: dict[str, Check] = {}
    permitted: list[tuple[str, tuple, tuple]] = []

    # differences g_i - g_j = g_k - g_l forbidden whenever |{i,j,k,l}| >= 3
    by_diff: dict[Element, list[tuple[int, int]]] = {}
    for i, j in product(range(v), repeat=2):
        by_diff.setdefault(total((i, j), (1, -1)), []).append((i, j))
    bad = None
    for pairs in by_diff.values():
        for a, b in combinations(pairs, 2):
            if len(set(a) | set(b)) >= 3:
                bad = (a, b)
                break
        if bad:
            break
    checks["sidon"] = Check(bad is None, "" if bad is None else f"g{bad[0]} difference equals g{bad[1]}", bad)

    # 2-sums
    by_two: dict[Element, list[tuple[int, int]]] = {}
    for pair in combinations_with_replacement(range(v), 2):
        by_two.setdefault(total(pair), []).append(pair)
    bad = None
    for members in by_two.values():
        for a, b in combinations(members, 2):
            if p == 2 and a[0] == a[1] and b[0] == b[1]:
                permitted.append(("2-sum", a, b))
            elif bad is None:
                bad = (a, b)
    checks["2-sums"] = Check(bad is None, "" if bad is None else f"2-sums {bad[0]} and {bad[1]} coincide", bad)

    # 3-sums
    by_three: dict[Element, list[tuple[int, ...]]] = {}
    for triple in combinations_with_replacement(range(v), 3):
        by_three.setdefault(total(triple), []).append(triple)
    bad = None
    for members in by_three.values():
        for a, b in combinations(members, 2):
            ka, kb = len(set(a)), len(set(b))
            if p == 3 and ka == kb == 1:
                permitted.append(("3-sum", a, b))
            elif p == 2 and (ka == 2 or kb == 2):
                permitted.append(("3-sum", a, b))
            elif bad is None:
                bad = (a, b)
    checks["3-sums"] = Check(bad is None, "" if bad is None else f"3-sums {bad[0]} and {bad[1]} coincide", bad)
    return SumReport(p, v, checks, permitted)


# ---------------------------------------------------------------------------
# neighbourhood structure


def cover_structure(x: Graph, p: int) -> Check:
    """Relate the identity's neighbourhood in Z_p(X) to the triangle graph T(X).

    p = 2: the map e_i + e_j -> {i, j} is an isomorphism.
    p = 3: after removing the matching {c, -c}, the map c -> edge is a 2-fold cover.
    p >= 5: the map c -> edge is a 2-fold cover.
    """
    spec = free_connection_set(x, p)
    nbhd = neighborhood_of_identity(spec)
    tri = triangle_graph(x)
    edge_index = {e: i for i, e in enumerate(x.edges())}
    v = x.order

    def edge_of(c: Element) -> int:
        support = tuple(i for i in range(v) if c[i])
        return edge_index[support]

    image = tuple(edge_of(c) for c in spec.connection)
    h = VertexMap(nbhd.order, tri.order, image)
    if p == 2:
        if len(set(image)) != len(image) or len(image) != tri.order:
            return Check(False, "map to edges is not a bijection")
        for a, b in combinations(range(nbhd.order), 2):
            if nbhd.has_edge(a, b) != tri.has_edge(image[a], image[b]):
                return Check(False, f"adjacency of {spec.connection[a]} and {spec.connection[b]} not preserved",
                             (a, b))
        return Check(True, "isomorphic to the triangle graph", h)
    if p == 3:
        pos = {c: i for i, c in enumerate(spec.connection)}
        masks = list(nbhd.masks)
        for i, c in enumerate(spec.connection):
            j = pos[spec.group.inv(c)]
            if not nbhd.has_edge(i, j):
                return Check(False, f"{c} is not adjacent to its inverse", c)
            masks[i] &= ~(1 << j)
        nbhd = Graph.from_masks(masks)
    verdict = is_r_fold_cover(h, nbhd, tri, 2)
    return Check(verdict.ok, verdict.reason or "2-fold cover of the triangle graph", h if verdict.ok else verdict.witness)


# ---------------------------------------------------------------------------
# lifting into G^m


def cauchy_element(g: GroupTable, p: int) -> int:
    if g.order % p:
        raise ValueError(f"{p} does not divide the group order {g.order}")
    for a in range(1, g.order):
        if g.element_order(a) == p:
            return a
    raise AssertionError("unreachable by Cauchy's theorem")


def lift_connection_set(spec: CayleySpec, g: GroupTable, h: int) -> CayleySpec:
    """Map (a_1..a_m) in Z_p^m to (h^a_1, .., h^a_m) in G^m."""
    group = spec.group
    if not isinstance(group, ElementaryGroup):
        raise TypeError("lifting starts from a Z_p^m spec")
    if g.element_order(h) != group.p:
        raise ValueError(f"element {h} has order {g.element_order(h)}, expected {group.p}")
    powers = [g.power(h, a) for a in range(group.p)]
    conn = tuple(tuple(powers[a] for a in c) for c in spec.connection)
    return CayleySpec(PowerGroup(g, group.n), conn)


@dataclass(frozen=True)
class LiftReport:
    blocks: int
    expected_blocks: int
    check: Check

    @property
    def ok(self) -> bool:
        return self.check.ok and self.blocks == self.expected_blocks


def verify_lift(base: CayleySpec, lifted: CayleySpec, h: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> LiftReport:
    """The lifted graph splits into one block per coset of H^m, each an isomorphic copy of the base."""
    table = lifted.group.table
    p, m = base.group.p, base.group.n
    powers = [table.power(h, a) for a in range(p)]
    big = materialize(lifted, max_vertices)
    small = materialize(base, max_vertices)
    elems = lifted.group.elements()
    index = {e: i for i, e in enumerate(elems)}
    base_elems = base.group.elements()
    block_of = [-1] * len(elems)
    maps = []
    for e in elems:
        if block_of[index[e]] >= 0:
            continue
        image = [index[lifted.group.mul(tuple(powers[x] for x in a), e)] for a in base_elems]
        if len(set(image)) != len(image) or any(block_of[i] >= 0 for i in image):
            return LiftReport(len(maps), (table.order // p) ** m, Check(False, "coset blocks overlap"))
        for i in image:
            block_of[i] = len(maps)
        maps.append(image)
    expected = (table.order // p) ** m
    for u, w in big.edges():
        if block_of[u] != block_of[w]:
            return LiftReport(len(maps), expected, Check(False, f"edge ({u}, {w}) joins two blocks", (u, w)))
    for b, image in enumerate(maps):
        for i, j in combinations(range(len(base_elems)), 2):
            if small.has_edge(i, j) != big.has_edge(image[i], image[j]):
                return LiftReport(len(maps), expected, Check(False, f"block {b} differs from the base", b))
    return LiftReport(len(maps), expected, Check(True, f"{len(maps)} isomorphic copies", maps))

