"""Ollivier curvature, global lower bounds and curvature-driven shell growth."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParameterOutOfRange, PowerTooLarge, SameVertex
from .graph import Graph, cartesian_power, cartesian_product, generate
from .transport import lazy_walk_measure, w1

__all__ = [
    "CurvatureReport",
    "kappa",
    "global_lower_bound",
    "contaminated_edges",
    "check_neighbor_minimization",
    "check_tensorization",
    "paeng_shell_bound",
    "nu_from_curvature",
    "CurvatureGrowth",
    "growth_ratio",
    "shell_growth_violations",
    "paeng_radius_violations",
    "tree_product_shell_probe",
]

HALF = Fraction(1, 2)
POWER_GUARD = 10**4


def kappa(g: Graph, x: int, y: int, laziness: Fraction = HALF) -> Fraction:
    """Exact Ollivier curvature ``1 - W1(mu_x, mu_y) / d(x, y)``."""
    if x == y:
        raise SameVertex(f"curvature needs two distinct vertices, got {x} twice")
    d = g.distance(x, y)
    cost = w1(g, lazy_walk_measure(g, x, laziness), lazy_walk_measure(g, y, laziness)).cost
    return 1 - cost / d


@dataclass(frozen=True)
class CurvatureReport:
    """Per-edge curvature with the global and interior minima.

    ``k_interior`` is the minimum over edges outside ``contaminated``; it is
    ``None`` when every edge is contaminated.
    """

    kappa: dict[tuple[int, int], Fraction]
    k: Fraction
    k_interior: Fraction | None
    contaminated: frozenset = field(default_factory=frozenset)
    laziness: Fraction = HALF

    @property
    def interior_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.kappa if e not in self.contaminated]

    def acceptance_bound(self) -> Fraction:
        """Interior bound when there is one, otherwise the all-edge bound."""
        return self.k if self.k_interior is None else self.k_interior


def contaminated_edges(g: Graph) -> frozenset:
    """Edges with a truncation leaf within distance 2 of either endpoint.

    Only truncated trees have an artificial boundary; other graphs return
    an empty set.
    """
    if not g.family or g.family[0] != "tree":
        return frozenset()
    leaves = [v for v in range(g.n) if g.degree[v] == 1]
    near = set()
    for leaf in leaves:
        dist = g.distances_from(leaf)
        near.update(v for v in range(g.n) if dist[v] <= 2)
    return frozenset(e for e in g.edges if e[0] in near or e[1] in near)


def _edge_chunk(args):
    g, edges, laziness = args
    return [(e, kappa(g, e[0], e[1], laziness)) for e in edges]


def global_lower_bound(g: Graph, laziness: Fraction = HALF, workers: int | None = None) -> CurvatureReport:
    """Curvature of every edge; the minimum over edges bounds all pairs.

    With ``workers > 1`` the edge sweep is split across processes. Each edge
    is independent and exact, so the result does not depend on scheduling.
    """
    laziness = Fraction(laziness)
    edges = list(g.edges)
    if workers and workers > 1 and len(edges) > 64:
        size = math.ceil(len(edges) / workers)
        chunks = [(g, edges[i : i + size], laziness) for i in range(0, len(edges), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pairs = [p for part in pool.map(_edge_chunk, chunks) for p in part]
    else:
        pairs = _edge_chunk((g, edges, laziness))
    table = dict(sorted(pairs))
    dirty = contaminated_edges(g)
    interior = [v for e, v in table.items() if e not in dirty]
    return CurvatureReport(
        kappa=table,
        k=min(table.values()),
        k_interior=min(interior) if interior else None,
        contaminated=dirty,
        laziness=laziness,
    )


def check_neighbor_minimization(
    g: Graph,
    samples: Iterable[tuple[int, int]],
    laziness: Fraction = HALF,
    k: Fraction | None = None,
) -> list[tuple[int, int, Fraction, Fraction]]:
    """Pairs whose curvature falls below the edge minimum ``k``.

    Returns ``(x, y, kappa(x, y), k)`` for every violation; an empty list is
    the expected outcome.
    """
    samples = [(x, y) for x, y in samples if x != y]
    if not samples:
        return []
    if k is None:
        k = global_lower_bound(g, laziness).k
    out = []
    for x, y in samples:
        kxy = kappa(g, x, y, laziness)
        if kxy < k:
            out.append((x, y, kxy, k))
    return out


def check_tensorization(g: Graph, r: int, laziness: Fraction = HALF) -> tuple[Fraction, Fraction, bool]:
    """Compare the edge bound of ``G`` with that of the power ``G^r``.

    Returns ``(k_base, k_power, k_power >= k_base / r)``.
    """
    if r < 1:
        raise ParameterOutOfRange("power needs r >= 1")
    if g.n**r > POWER_GUARD:
        raise PowerTooLarge(f"|V|^r = {g.n ** r} exceeds {POWER_GUARD}")
    k_base = global_lower_bound(g, laziness).k
    if r == 1:
        return k_base, k_base, True
    k_power = global_lower_bound(cartesian_power(g, r), laziness).k
    return k_base, k_power, k_power >= k_base / r


def paeng_shell_bound(D: int, k: Fraction, r: int) -> Fraction:
    """``D^r * prod_{m<r} (1 - k m / 2)``, or 0 once a factor is non-positive."""
    if r < 0:
        raise ParameterOutOfRange("r must be non-negative")
    k = Fraction(k)
    out = Fraction(D) ** r
    for m in range(r):
        factor = 1 - k * m / 2
        if factor <= 0:
            return Fraction(0)
        out *= factor
    return out


def growth_ratio(d: int, k: Fraction, bipartite: bool) -> Fraction:
    """Shell ratio ``(d+1-2dk)/2`` or, for bipartite graphs, ``d(1-k)/2``."""
    k = Fraction(k)
    if bipartite:
        return d * (1 - k) / 2
    return (d + 1 - 2 * d * k) / 2


@dataclass(frozen=True)
class CurvatureGrowth:
    """Shell-size envelope of a single-vertex ball under a curvature bound."""

    d: int
    k: Fraction
    bipartite: bool

    @property
    def ratio(self) -> Fraction:
        return max(Fraction(0), growth_ratio(self.d, self.k, self.bipartite))

    def nu(self, i: int) -> Fraction:
        if i < 0:
            raise ParameterOutOfRange("shell index must be non-negative")
        if i == 0:
            return Fraction(1)
        return self.d * self.ratio ** (i - 1)

    def envelope(self, t_max: int):
        """One-sided :class:`GrowthEnvelope` over ``0..t_max`` (mu left at 0)."""
        from .shells import GrowthEnvelope

        nu = {i: self.nu(i) for i in range(t_max + 1)}
        return GrowthEnvelope(
            nu=nu,
            mu={i: Fraction(0) for i in nu},
            provenance="curvature",
            meta={"d": self.d, "k": self.k, "bipartite": self.bipartite},
        )


def nu_from_curvature(d: int, k: Fraction, bipartite: bool) -> CurvatureGrowth:
    """Volume growth envelope ``nu(0)=1, nu(1)=d, nu(i+1)=ratio*nu(i)``."""
    if d < 2:
        raise ParameterOutOfRange("curvature envelope needs d >= 2")
    return CurvatureGrowth(d, Fraction(k), bipartite)


def _sphere_sizes(g: Graph, x: int) -> list[int]:
    dist = g.distances_from(x)
    sizes = [0] * (max(dist) + 2)
    for v in dist:
        sizes[v] += 1
    return sizes


def shell_growth_violations(
    g: Graph, d: int, k: Fraction, bipartite: bool = False
) -> tuple[list[tuple[int, int, int, int]], Fraction]:
    """Check ``|S_{i+1}| <= ratio * |S_i|`` around every vertex, ``i >= 1``.

    Returns the violations ``(x, i, |S_i|, |S_{i+1}|)`` and the largest
    observed ratio ``|S_{i+1}|/|S_i|``.
    """
    ratio = growth_ratio(d, k, bipartite)
    bad = []
    worst = Fraction(0)
    for x in range(g.n):
        sizes = _sphere_sizes(g, x)
        for i in range(1, len(sizes) - 1):
            if sizes[i] == 0:
                break
            nxt = sizes[i + 1]
            worst = max(worst, Fraction(nxt, sizes[i]))
            if nxt > ratio * sizes[i]:
                bad.append((x, i, sizes[i], nxt))
    return bad, worst


def paeng_radius_violations(g: Graph, k: Fraction) -> list[tuple[int, int]]:
    """Vertices with a non-empty shell beyond radius ``ceil(2/k)`` when ``k > 0``."""
    k = Fraction(k)
    if k <= 0:
        return []
    radius = math.ceil(2 / k)
    return [(x, max(g.distances_from(x))) for x in range(g.n) if max(g.distances_from(x)) > radius]


def tree_product_shell_probe(p: int, q: int, radius: int) -> list[dict]:
    """Shell counts of a product of ``q`` truncated ``p``-trees around the center.

    Each tree has depth ``radius`` so shells up to ``radius`` agree with the
    infinite product. Both candidate composition counts are recorded next to
    the observed value; neither is assumed correct.
    """
    tree = generate(("tree", p, radius))
    g = tree
    for _ in range(q - 1):
        g = cartesian_product(g, tree)
    sizes = _sphere_sizes(g, 0)
    rows = []
    for i in range(1, radius + 1):
        rows.append(
            {
                "i": i,
                "observed": sizes[i],
                "binom_q": math.comb(i + q - 1, q),
                "binom_q_minus_1": math.comb(i + q - 1, q - 1),
                "lower_q": math.comb(i + q - 1, q) * (p - 1) ** i,
                "lower_q_minus_1": math.comb(i + q - 1, q - 1) * (p - 1) ** i,
                "upper_q": Fraction(math.comb(i + q - 1, q) * p**q) * Fraction(p - 1) ** (i - q),
                "upper_q_minus_1": Fraction(math.comb(i + q - 1, q - 1) * p**q) * Fraction(p - 1) ** (i - q),
            }
        )
    return rows
