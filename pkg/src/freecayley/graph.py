"""Simple undirected graphs, exact solvers and structural combinators.

Vertices are ``0 .. order-1``.  Adjacency is held as one integer bitmask per
vertex, which keeps the branch-and-bound solvers reasonably quick in pure
Python for the structured instances (a few hundred vertices) used here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

DEFAULT_MAX_NODES = 5_000_000


class BudgetExhausted(RuntimeError):
    """A search exceeded its node cap; no answer is returned."""


@dataclass(frozen=True)
class Check:
    """Boolean verdict with an explanation and an optional witness."""

    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


class Graph:
    """Immutable simple graph on ``order`` indexed vertices."""

    __slots__ = ("_order", "_adj", "_edges")

    def __init__(self, order: int, edges: Iterable[tuple[int, int]] = ()):
        if order < 0:
            raise ValueError("order must be non-negative")
        adj = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._order = order
        self._adj = tuple(adj)
        self._edges = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        n = len(masks)
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full or (m >> v) & 1:
                raise ValueError(f"invalid adjacency mask at vertex {v}")
            w = m
            while w:
                b = w & -w
                u = b.bit_length() - 1
                if not (masks[u] >> v) & 1:
                    raise ValueError("adjacency is not symmetric")
                w ^= b
        g._order = n
        g._adj = tuple(masks)
        g._edges = None
        return g

    @property
    def order(self) -> int:
        return self._order

    @property
    def masks(self) -> tuple[int, ...]:
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self._adj[v])

    def degree(self, v: int) -> int:
        return bin(self._adj[v]).count("1")

    def edges(self) -> list[tuple[int, int]]:
        """Sorted edge list with ``u < v``."""
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in range(self._order) for v in _bits(self._adj[u] >> (u + 1), u + 1)
            )
        return list(self._edges)

    @property
    def size(self) -> int:
        return sum(bin(m).count("1") for m in self._adj) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(a, b) for a, b in combinations(vs, 2)) and len(set(vs)) == len(vs)

    def is_coclique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return not any(self.has_edge(a, b) for a, b in combinations(vs, 2)) and len(set(vs)) == len(vs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, edges={self.size})"


def _bits(mask: int, offset: int = 0) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1 + offset)
        mask ^= b
    return out


@dataclass(frozen=True)
class Partition:
    cells: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, cells: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(frozenset(c) for c in cells))

    def validate(self, order: int) -> None:
        seen: set[int] = set()
        for cell in self.cells:
            if not cell:
                raise ValueError("empty cell in partition")
            if seen & cell:
                raise ValueError("partition cells overlap")
            seen |= cell
        if seen != set(range(order)):
            raise ValueError("partition does not cover the vertex set")

    def cell_index(self) -> dict[int, int]:
        return {v: i for i, cell in enumerate(self.cells) for v in cell}


@dataclass(frozen=True)
class VertexMap:
    source_order: int
    target_order: int
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source_order:
            raise ValueError("vertex map must be total on the source")
        if any(not 0 <= t < self.target_order for t in self.image):
            raise ValueError("image vertex out of range")


# ---------------------------------------------------------------------------
# small named graphs


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)) if n >= 3 else ())


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.order
    return Graph(n + h.order, g.edges() + [(u + n, v + n) for u, v in h.edges()])


def pad_isolated(g: Graph, order: int) -> Graph:
    if order < g.order:
        raise ValueError("cannot pad to a smaller order")
    return Graph(order, g.edges())


def random_graph(n: int, density: float, rng: random.Random) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < density])


def seeded_ensemble(
    seed: int = 2024, count: int = 200, vmin: int = 2, vmax: int = 8,
    densities: Sequence[float] = (0.2, 0.4, 0.6, 0.85),
) -> list[Graph]:
    """Reproducible mixed-density ensemble used by the acceptance runs."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        v = rng.randint(vmin, vmax)
        out.append(random_graph(v, densities[i % len(densities)], rng))
    return out


# ---------------------------------------------------------------------------
# combinators


def complement(g: Graph) -> Graph:
    full = (1 << g.order) - 1
    return Graph.from_masks([(full ^ m) & ~(1 << v) for v, m in enumerate(g.masks)])


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Vertex ``(a, x)`` is numbered ``a * h.order + x``."""
    n = h.order
    edges = []
    for a in range(g.order):
        for x, y in h.edges():
            edges.append((a * n + x, a * n + y))
    for a, b in g.edges():
        for x in range(n):
            edges.append((a * n + x, b * n + x))
    return Graph(g.order * n, edges)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabelled in the given order."""
    vs = list(vertices)
    for v in vs:
        if not 0 <= v < g.order:
            raise ValueError(f"vertex {v} out of range")
    if len(set(vs)) != len(vs):
        raise ValueError("repeated vertex in induced_subgraph")
    return Graph(len(vs), [(i, j) for i, j in combinations(range(len(vs)), 2) if g.has_edge(vs[i], vs[j])])


def line_graph(g: Graph) -> Graph:
    es = g.edges()
    return Graph(len(es), [(i, j) for i, j in combinations(range(len(es)), 2) if set(es[i]) & set(es[j])])


def triangle_graph(g: Graph) -> Graph:
    """Graph on the edges of ``g``; two edges adjacent iff they lie in a common triangle.

    Vertex i of the result is ``g.edges()[i]``.
    """
    es = g.edges()
    index = {e: i for i, e in enumerate(es)}
    out = set()
    for a, b, c in _triangles(g):
        tri = [index[(a, b)], index[(a, c)], index[(b, c)]]
        out.update(combinations(sorted(tri), 2))
    return Graph(len(es), sorted(out))


def _triangles(g: Graph):
    for a, b in g.edges():
        common = g.masks[a] & g.masks[b] & ~((1 << (b + 1)) - 1)
        for c in _bits(common):
            yield a, b, c


def quotient_by_partition(g: Graph, pi: Partition) -> Graph:
    pi.validate(g.order)
    where = pi.cell_index()
    edges = {tuple(sorted((where[u], where[v]))) for u, v in g.edges() if where[u] != where[v]}
    return Graph(len(pi.cells), sorted(edges))


def is_equitable(g: Graph, pi: Partition) -> Check:
    """Every vertex of cell i has the same number of neighbours in cell j."""
    pi.validate(g.order)
    masks = [sum(1 << v for v in cell) for cell in pi.cells]
    for i, cell in enumerate(pi.cells):
        members = sorted(cell)
        for j, mj in enumerate(masks):
            first = bin(g.masks[members[0]] & mj).count("1")
            for v in members[1:]:
                cnt = bin(g.masks[v] & mj).count("1")
                if cnt != first:
                    return Check(False, f"cells {i}->{j}: vertex {members[0]} has {first}, vertex {v} has {cnt}",
                                 (members[0], v))
    return Check(True)


def is_r_fold_cover(h: VertexMap, x: Graph, y: Graph, r: int) -> Check:
    """Check that ``h`` is a surjective local isomorphism from x to y with fibres of size r."""
    if h.source_order != x.order or h.target_order != y.order:
        return Check(False, "map orders do not match the graphs")
    img = h.image
    fibres: dict[int, list[int]] = {t: [] for t in range(y.order)}
    for s, t in enumerate(img):
        fibres[t].append(s)
    for t, f in fibres.items():
        if len(f) != r:
            return Check(False, f"fibre over {t} has size {len(f)}, expected {r}", t)
    for u, v in x.edges():
        if not y.has_edge(img[u], img[v]):
            return Check(False, f"edge ({u}, {v}) not preserved", (u, v))
    for s in range(x.order):
        nbr_images = [img[u] for u in x.neighbors(s)]
        target = sorted(y.neighbors(img[s]))
        if sorted(nbr_images) != target:
            return Check(False, f"neighbourhood of {s} does not map bijectively onto that of {img[s]}", s)
    return Check(True)


# ---------------------------------------------------------------------------
# exact solvers


def max_clique(g: Graph, max_nodes: int = DEFAULT_MAX_NODES) -> tuple[int, list[int]]:
    """Maximum clique by branch and bound with a greedy colouring bound.

    Single-threaded and deterministic: vertices are processed in
    non-increasing degree order with ties broken by index.
    """
    n = g.order
    if n == 0:
        return 0, []
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    pos = {v: i for i, v in enumerate(order)}
    adj = [0] * n
    for i, v in enumerate(order):
        m = 0
        for u in g.neighbors(v):
            m |= 1 << pos[u]
        adj[i] = m

    best: list[int] = [0]
    nodes = 0

    def colour_sort(P: int) -> tuple[list[int], list[int]]:
        verts, cols = [], []
        uncoloured = P
        c = 0
        while uncoloured:
            c += 1
            Q = uncoloured
            while Q:
                b = Q & -Q
                v = b.bit_length() - 1
                Q &= ~b & ~adj[v]
                uncoloured &= ~b
                verts.append(v)
                cols.append(c)
        return verts, cols

    def expand(R: list[int], P: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExhausted(f"max_clique exceeded {max_nodes} search nodes")
        verts, cols = colour_sort(P)
        for idx in range(len(verts) - 1, -1, -1):
            if len(R) + cols[idx] <= len(best):
                return
            v = verts[idx]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = R.copy()
            R.pop()
            P &= ~(1 << v)

    expand([], (1 << n) - 1)
    witness = sorted(order[i] for i in best)
    return len(witness), witness


def max_independent_set(g: Graph, max_nodes: int = DEFAULT_MAX_NODES) -> tuple[int, list[int]]:
    return max_clique(complement(g), max_nodes)


def has_clique_of_size(g: Graph, k: int) -> list[int] | None:
    """Exhaustive k-subset search; used where the recovery step asks for it."""
    for sub in combinations(range(g.order), k):
        if g.is_clique(sub):
            return list(sub)
    return None


def _dsatur_greedy(g: Graph) -> list[int]:
    n = g.order
    colour = [-1] * n
    nbr_cols: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if colour[u] < 0), key=lambda u: (len(nbr_cols[u]), g.degree(u), -u))
        c = 0
        while c in nbr_cols[v]:
            c += 1
        colour[v] = c
        for u in g.neighbors(v):
            nbr_cols[u].add(c)
    return colour


def _k_colour(g: Graph, k: int, seed_clique: list[int], max_nodes: int, counter: list[int]) -> list[int] | None:
    n = g.order
    nbrs = [g.neighbors(v) for v in range(n)]
    colour = [-1] * n
    cnt = [[0] * k for _ in range(n)]
    sat = [0] * n

    def assign(v: int, c: int) -> None:
        colour[v] = c
        for u in nbrs[v]:
            if cnt[u][c] == 0:
                sat[u] += 1
            cnt[u][c] += 1

    def unassign(v: int) -> None:
        c = colour[v]
        colour[v] = -1
        for u in nbrs[v]:
            cnt[u][c] -= 1
            if cnt[u][c] == 0:
                sat[u] -= 1

    for c, v in enumerate(seed_clique[:k]):
        assign(v, c)
    used = [min(len(seed_clique), k)]

    def search(remaining: int) -> bool:
        if remaining == 0:
            return True
        counter[0] += 1
        if counter[0] > max_nodes:
            raise BudgetExhausted(f"chromatic search exceeded {max_nodes} nodes")
        v = -1
        key = None
        for u in range(n):
            if colour[u] < 0:
                kk = (sat[u], sum(1 for w in nbrs[u] if colour[w] < 0))
                if key is None or kk > key:
                    key, v = kk, u
        if sat[v] >= k:
            return False
        top = min(used[0] + 1, k)
        for c in range(top):
            if cnt[v][c]:
                continue
            fresh = c == used[0]
            assign(v, c)
            if fresh:
                used[0] += 1
            if search(remaining - 1):
                return True
            if fresh:
                used[0] -= 1
            unassign(v)
        return False

    remaining = n - len(seed_clique[:k])
    if search(remaining):
        return colour
    return None


def chromatic_number(g: Graph, max_nodes: int = DEFAULT_MAX_NODES) -> tuple[int, list[int]]:
    """Exact chromatic number: clique lower bound, DSATUR upper bound, then
    backtracking k-colourability for increasing k."""
    n = g.order
    if n == 0:
        return 0, []
    lb, clique = max_clique(g, max_nodes)
    greedy = _dsatur_greedy(g)
    ub = max(greedy) + 1
    counter = [0]
    for k in range(lb, ub):
        col = _k_colour(g, k, clique, max_nodes, counter)
        if col is not None:
            return k, col
    return ub, greedy


def is_proper_colouring(g: Graph, colouring: Sequence[int]) -> bool:
    return len(colouring) == g.order and all(colouring[u] != colouring[v] for u, v in g.edges())

