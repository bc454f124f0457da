"""Finite simple graphs, named-family generators and BFS distances.

Vertices are the dense integers ``0..n-1``. Generators fix a canonical
numbering so golden outputs stay stable:

* ``cycle:n``        -- ``i ~ i+1 (mod n)``
* ``hypercube:d``    -- binary encoding, bit ``i`` is coordinate ``i``
* ``torus:n,d``      -- mixed radix, ``v = sum x_i n**i``
* ``tree:p,depth``   -- BFS order from the root (root has ``p`` children,
  every other internal vertex ``p-1``)
* ``complete:n``
* ``product:A,B``    -- Cartesian product, ``(a, b) -> a*|B| + b``
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    DuplicateEdge,
    EmptyGraph,
    EmptySource,
    ParameterOutOfRange,
    SelfLoop,
)

__all__ = [
    "Graph",
    "DistanceField",
    "build_graph",
    "generate",
    "parse_spec",
    "cartesian_product",
    "cartesian_power",
    "bfs_distances",
    "load_graph",
    "read_graph",
    "write_graph",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable connected simple undirected graph.

    Build instances with :func:`build_graph` or :func:`generate`; the
    constructor itself does no validation.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    degree: tuple[int, ...]
    coloring: tuple[int, ...] | None
    name: str = ""
    family: tuple | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def max_degree(self) -> int:
        return max(self.degree)

    @property
    def min_degree(self) -> int:
        return min(self.degree)

    @property
    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree

    @property
    def regular_degree(self) -> int | None:
        return self.degree[0] if self.is_regular else None

    @property
    def is_bipartite(self) -> bool:
        return self.coloring is not None

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        e = self._cache.get("edges")
        if e is None:
            e = tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)
            self._cache["edges"] = e
        return e

    @property
    def edge_count(self) -> int:
        return sum(self.degree) // 2

    @property
    def neighbor_masks(self) -> tuple[int, ...]:
        m = self._cache.get("masks")
        if m is None:
            m = tuple(sum(1 << w for w in nb) for nb in self.adjacency)
            self._cache["masks"] = m
        return m

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.adjacency[u]
        # adjacency rows are sorted
        lo, hi = 0, len(nb)
        while lo < hi:
            mid = (lo + hi) // 2
            if nb[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(nb) and nb[lo] == v

    def distances_from(self, v: int) -> tuple[int, ...]:
        """Cached single-source BFS distances."""
        cache = self._cache.setdefault("dist", {})
        d = cache.get(v)
        if d is None:
            d = _bfs(self, (v,))
            cache[v] = d
        return d

    def distance(self, u: int, v: int) -> int:
        return self.distances_from(u)[v]

    def __repr__(self) -> str:
        label = self.name or "graph"
        return f"Graph({label}, n={self.n}, m={self.edge_count})"

    def __reduce__(self):
        # drop caches when pickling for worker processes
        return (Graph, (self.n, self.adjacency, self.degree, self.coloring, self.name, self.family))


@dataclass(frozen=True)
class DistanceField:
    source: frozenset[int]
    dist: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.dist[v]

    def shells(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.dist:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))


def _bfs(g: Graph, sources: Iterable[int]) -> tuple[int, ...]:
    dist = [-1] * g.n
    queue = deque()
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue.append(s)
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return tuple(dist)


def bfs_distances(g: Graph, source: Iterable[int]) -> DistanceField:
    src = frozenset(source)
    if not src:
        raise EmptySource("source set is empty")
    for s in src:
        if not 0 <= s < g.n:
            raise ParameterOutOfRange(f"source vertex {s} outside 0..{g.n - 1}")
    return DistanceField(src, _bfs(g, sorted(src)))


def _two_coloring(n: int, adj: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    color = [-1] * n
    for start in range(n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return tuple(color)


def build_graph(
    edges: Iterable[tuple[int, int]],
    n: int,
    *,
    name: str = "",
    family: tuple | None = None,
) -> Graph:
    """Validate an edge list and return a normalized :class:`Graph`.

    Raises EmptyGraph, SelfLoop, DuplicateEdge, ParameterOutOfRange or
    Disconnected.
    """
    if n < 1:
        raise EmptyGraph("graph needs at least one vertex")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParameterOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) listed twice")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    if n > 1:
        probe = Graph(n, adjacency, tuple(len(a) for a in adjacency), None)
        dist = _bfs(probe, (0,))
        missing = [v for v in range(n) if dist[v] < 0]
        if missing:
            raise Disconnected(f"vertex {missing[0]} unreachable from vertex 0")
    degree = tuple(len(a) for a in adjacency)
    return Graph(n, adjacency, degree, _two_coloring(n, adjacency), name=name, family=family)


# ---------------------------------------------------------------------------
# generators

_ARITY = {"cycle": 1, "hypercube": 1, "complete": 1, "torus": 2, "tree": 2}


def parse_spec(spec: str) -> tuple:
    """Parse a generator spec such as ``torus:8,2`` into a family tuple."""
    spec = spec.strip()
    if spec.startswith("gen:"):
        spec = spec[4:]
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise ParameterOutOfRange(f"malformed generator spec {spec!r}")
    if kind == "product":
        # the split point is the first comma where both halves parse
        for i, ch in enumerate(rest):
            if ch != ",":
                continue
            try:
                left = parse_spec(rest[:i])
                right = parse_spec(rest[i + 1 :])
            except ParameterOutOfRange:
                continue
            return ("product", left, right)
        raise ParameterOutOfRange(f"cannot split product spec {spec!r}")
    if kind not in _ARITY:
        raise ParameterOutOfRange(f"unknown family {kind!r}")
    try:
        params = tuple(int(x) for x in rest.split(","))
    except ValueError as exc:
        raise ParameterOutOfRange(f"non-integer parameter in {spec!r}") from exc
    if len(params) != _ARITY[kind]:
        raise ParameterOutOfRange(f"{kind} takes {_ARITY[kind]} parameter(s)")
    return (kind, *params)


def spec_string(family: tuple) -> str:
    if family[0] == "product":
        return f"product:{spec_string(family[1])},{spec_string(family[2])}"
    return f"{family[0]}:" + ",".join(str(p) for p in family[1:])


def _cycle_edges(n: int):
    return [(i, (i + 1) % n) for i in range(n)]


def _hypercube_edges(d: int):
    return [(v, v | (1 << i)) for v in range(1 << d) for i in range(d) if not v >> i & 1]


def _torus_edges(n: int, d: int):
    edges = []
    for v in range(n**d):
        stride = 1
        for _ in range(d):
            x = (v // stride) % n
            w = v - x * stride + ((x + 1) % n) * stride
            edges.append((v, w))
            stride *= n
    return edges


def _tree_edges(p: int, depth: int):
    edges = []
    frontier = [0]
    nxt = 1
    for level in range(depth):
        new = []
        for u in frontier:
            for _ in range(p if level == 0 else p - 1):
                edges.append((u, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    return edges, nxt


def generate(spec: str | tuple) -> Graph:
    """Build a named-family graph from a spec string or family tuple."""
    family = parse_spec(spec) if isinstance(spec, str) else tuple(spec)
    kind = family[0]
    name = spec_string(family)
    if kind == "cycle":
        (n,) = family[1:]
        if n < 3:
            raise ParameterOutOfRange("cycle needs n >= 3")
        return build_graph(_cycle_edges(n), n, name=name, family=family)
    if kind == "hypercube":
        (d,) = family[1:]
        if d < 1:
            raise ParameterOutOfRange("hypercube needs d >= 1")
        if d > 20:
            raise ParameterOutOfRange("hypercube dimension above 20 is not materialized")
        return build_graph(_hypercube_edges(d), 1 << d, name=name, family=family)
    if kind == "torus":
        n, d = family[1:]
        if n < 3 or d < 1:
            raise ParameterOutOfRange("torus needs n >= 3 and d >= 1")
        if n**d > 10**6:
            raise ParameterOutOfRange("torus too large to materialize")
        return build_graph(_torus_edges(n, d), n**d, name=name, family=family)
    if kind == "tree":
        p, depth = family[1:]
        if p < 2 or depth < 1:
            raise ParameterOutOfRange("tree needs p >= 2 and depth >= 1")
        edges, count = _tree_edges(p, depth)
        if count > 10**6:
            raise ParameterOutOfRange("tree too large to materialize")
        return build_graph(edges, count, name=name, family=family)
    if kind == "complete":
        (n,) = family[1:]
        if n < 2:
            raise ParameterOutOfRange("complete graph needs n >= 2")
        return build_graph([(i, j) for i in range(n) for j in range(i + 1, n)], n, name=name, family=family)
    if kind == "product":
        return cartesian_product(generate(family[1]), generate(family[2]))
    raise ParameterOutOfRange(f"unknown family {kind!r}")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """``G □ H`` with vertex ``(a, b)`` numbered ``a * |H| + b``."""
    m = h.n
    edges = [(a * m + b, a2 * m + b) for (a, a2) in g.edges for b in range(m)]
    edges += [(a * m + b, a * m + b2) for a in range(g.n) for (b, b2) in h.edges]
    family = ("product", g.family, h.family) if g.family and h.family else None
    name = f"product:{g.name},{h.name}" if g.name and h.name else ""
    return build_graph(edges, g.n * m, name=name, family=family)


def cartesian_power(g: Graph, r: int) -> Graph:
    """``G^r = G □ ... □ G`` (``r`` factors)."""
    if r < 1:
        raise ParameterOutOfRange("power needs r >= 1")
    out = g
    for _ in range(r - 1):
        out = cartesian_product(out, g)
    return out


# ---------------------------------------------------------------------------
# text format


def read_graph(path: str | os.PathLike) -> Graph:
    """Read the ``p <n>`` / ``u v`` edge-list format."""
    n = None
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if n is None:
                if parts[0] != "p" or len(parts) != 2:
                    raise ParameterOutOfRange(f"{path}:{lineno}: expected 'p <n>' header")
                n = int(parts[1])
                continue
            if len(parts) != 2:
                raise ParameterOutOfRange(f"{path}:{lineno}: expected 'u v'")
            edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise EmptyGraph(f"{path}: missing 'p <n>' header")
    return build_graph(edges, n, name=os.path.basename(str(path)))


def write_graph(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(f"p {g.n}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


def load_graph(source: str) -> Graph:
    """Accept either a ``gen:`` spec or a path to a graph file."""
    if source.startswith("gen:"):
        return generate(source[4:])
    return read_graph(source)


def hypercube_weight(v: int) -> int:
    return bin(v).count("1")


def binomial_shells(d: int, m: int) -> dict[int, int]:
    """Signed shell sizes of the ``m``-slice of ``Q_d`` (upper side positive)."""
    return {i - m: math.comb(d, i) for i in range(d + 1)}
