"""Exact L1 optimal transport on a graph metric.

Measures are plain ``dict`` objects mapping vertex to :class:`Fraction`.
Only the signed difference ``mu - nu`` has to be moved, so mass common to
both measures stays in place on the diagonal of the plan and the simplex
runs on the positive and negative parts alone. Masses are scaled to
integers by a common denominator, which keeps every pivot exact and cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import MassMismatch, ParameterOutOfRange
from .graph import Graph

__all__ = ["TransportResult", "lazy_walk_measure", "w1", "certify", "STATS"]

# running count of solved instances and of certificate checks that failed
STATS = {"solved": 0, "gap_failures": 0}


@dataclass(frozen=True)
class TransportResult:
    """Optimal cost with its primal plan and a Kantorovich potential.

    ``potential`` is a 1-Lipschitz function on the union of the two supports
    with ``sum f*nu - sum f*mu == cost`` exactly.
    """

    cost: Fraction
    plan: dict[tuple[int, int], Fraction]
    potential: dict[int, Fraction]

    def duality_gap(self, mu: Mapping[int, Fraction], nu: Mapping[int, Fraction]) -> Fraction:
        f = self.potential
        dual = sum((m * f[v] for v, m in nu.items()), Fraction(0)) - sum(
            (m * f[v] for v, m in mu.items()), Fraction(0)
        )
        return self.cost - dual


def lazy_walk_measure(g: Graph, x: int, laziness: Fraction = Fraction(1, 2)) -> dict[int, Fraction]:
    """One step of the lazy random walk started at ``x``.

    Mass ``laziness`` stays at ``x`` and ``(1 - laziness)/deg(x)`` moves to
    each neighbor. Zero masses are omitted.
    """
    p = Fraction(laziness)
    if not 0 <= p < 1:
        raise ParameterOutOfRange(f"laziness must lie in [0, 1), got {p}")
    nbrs = g.adjacency[x]
    share = (1 - p) / len(nbrs)
    out = {w: share for w in nbrs}
    if p:
        out[x] = p
    return dict(sorted(out.items()))


def _northwest_corner(a: list[int], b: list[int]) -> dict[tuple[int, int], int]:
    m, n = len(a), len(b)
    ra, rb = list(a), list(b)
    basis: dict[tuple[int, int], int] = {}
    i = j = 0
    while True:
        q = min(ra[i], rb[j])
        basis[(i, j)] = q
        ra[i] -= q
        rb[j] -= q
        if i == m - 1 and j == n - 1:
            return basis
        # move down on an exhausted row, which also handles the degenerate
        # case and keeps exactly m + n - 1 basic cells
        if ra[i] == 0 and i < m - 1:
            i += 1
        else:
            j += 1


def _duals(m: int, n: int, basis, cost) -> tuple[list[int], list[int]]:
    rows: list[list[int]] = [[] for _ in range(m)]
    cols: list[list[int]] = [[] for _ in range(n)]
    for i, j in basis:
        rows[i].append(j)
        cols[j].append(i)
    u: list[int | None] = [None] * m
    v: list[int | None] = [None] * n
    u[0] = 0
    stack = [(0, True)]
    while stack:
        k, is_row = stack.pop()
        if is_row:
            for j in rows[k]:
                if v[j] is None:
                    v[j] = cost[k][j] - u[k]
                    stack.append((j, False))
        else:
            for i in cols[k]:
                if u[i] is None:
                    u[i] = cost[i][k] - v[k]
                    stack.append((i, True))
    return u, v  # type: ignore[return-value]


def _cycle(m: int, n: int, basis, enter: tuple[int, int]) -> list[tuple[int, int]]:
    """Path of basic cells from row ``enter[0]`` to column ``enter[1]``."""
    i0, j0 = enter
    rows: list[list[int]] = [[] for _ in range(m)]
    cols: list[list[int]] = [[] for _ in range(n)]
    for i, j in basis:
        rows[i].append(j)
        cols[j].append(i)
    # nodes: rows are 0..m-1, columns are m..m+n-1
    parent = {i0: None}
    stack = [i0]
    target = m + j0
    while stack and target not in parent:
        node = stack.pop()
        if node < m:
            nxt = [m + j for j in rows[node]]
        else:
            nxt = cols[node - m]
        for w in nxt:
            if w not in parent:
                parent[w] = node
                stack.append(w)
    path = []
    node = target
    while parent[node] is not None:
        prev = parent[node]
        cell = (prev, node - m) if prev < m else (node, prev - m)
        path.append(cell)
        node = prev
    path.reverse()
    return path


def _transport_simplex(a: list[int], b: list[int], cost: list[list[int]]):
    """Integer transportation simplex with Bland's rule.

    Returns ``(flows, u, v)`` where ``flows`` maps basic cells to integer
    flow and ``u_i + v_j <= cost[i][j]`` holds with equality on the basis.
    """
    m, n = len(a), len(b)
    basis = _northwest_corner(a, b)
    limit = 1000 * (m + n) ** 2 + 1000
    for _ in range(limit):
        u, v = _duals(m, n, basis, cost)
        enter = None
        for i in range(m):
            ci, ui = cost[i], u[i]
            for j in range(n):
                if ci[j] - ui - v[j] < 0 and (i, j) not in basis:
                    enter = (i, j)
                    break
            if enter is not None:
                break
        if enter is None:
            return basis, u, v
        path = _cycle(m, n, basis, enter)
        # path alternates -, +, -, ... ending on a minus cell
        minus = path[0::2]
        plus = path[1::2]
        theta = min(basis[c] for c in minus)
        leave = min(c for c in minus if basis[c] == theta)
        for c in minus:
            basis[c] -= theta
        for c in plus:
            basis[c] += theta
        del basis[leave]
        basis[enter] = theta
    raise RuntimeError("transportation simplex did not terminate")


def _check_measure(m: Mapping[int, Fraction], g: Graph, label: str) -> None:
    for v, mass in m.items():
        if not 0 <= v < g.n:
            raise ParameterOutOfRange(f"{label}: vertex {v} outside the graph")
        if mass <= 0:
            raise MassMismatch(f"{label}: non-positive mass {mass} at {v}")


def w1(g: Graph, mu: Mapping[int, Fraction], nu: Mapping[int, Fraction]) -> TransportResult:
    """Exact Wasserstein-1 distance between two finitely supported measures."""
    mu = {v: Fraction(x) for v, x in mu.items()}
    nu = {v: Fraction(x) for v, x in nu.items()}
    _check_measure(mu, g, "mu")
    _check_measure(nu, g, "nu")
    if sum(mu.values()) != sum(nu.values()):
        raise MassMismatch(f"total masses differ: {sum(mu.values())} vs {sum(nu.values())}")

    plan: dict[tuple[int, int], Fraction] = {}
    supply: list[tuple[int, Fraction]] = []
    demand: list[tuple[int, Fraction]] = []
    for v in sorted(set(mu) | set(nu)):
        a, b = mu.get(v, Fraction(0)), nu.get(v, Fraction(0))
        common = min(a, b)
        if common > 0:
            plan[(v, v)] = common
        if a > b:
            supply.append((v, a - b))
        elif b > a:
            demand.append((v, b - a))

    support = sorted(set(mu) | set(nu))
    if not supply:
        potential = {v: Fraction(0) for v in support}
        result = TransportResult(Fraction(0), plan, potential)
    else:
        scale = math.lcm(*(x.denominator for _, x in supply + demand))
        a = [int(x * scale) for _, x in supply]
        b = [int(x * scale) for _, x in demand]
        xs = [v for v, _ in supply]
        ys = [v for v, _ in demand]
        cost = [[g.distance(x, y) for y in ys] for x in xs]
        flows, u, v = _transport_simplex(a, b, cost)
        total = 0
        for (i, j), q in flows.items():
            if q:
                total += q * cost[i][j]
                key = (xs[i], ys[j])
                plan[key] = plan.get(key, Fraction(0)) + Fraction(q, scale)
        # extend the demand-side duals by the distance max-formula; this is
        # 1-Lipschitz everywhere and equals -u on the supply nodes
        dist_y = [g.distances_from(y) for y in ys]
        potential = {
            z: Fraction(max(v[j] - dist_y[j][z] for j in range(len(ys)))) for z in support
        }
        result = TransportResult(Fraction(total, scale), dict(sorted(plan.items())), potential)

    STATS["solved"] += 1
    if result.duality_gap(mu, nu) != 0:
        STATS["gap_failures"] += 1
        raise RuntimeError("transport certificate has a non-zero duality gap")
    return result


def certify(g: Graph, mu, nu, result: TransportResult) -> list[str]:
    """Independent check of every certificate property; returns problems found."""
    problems = []
    out: dict[int, Fraction] = {}
    inc: dict[int, Fraction] = {}
    for (x, y), q in result.plan.items():
        if q <= 0:
            problems.append(f"non-positive plan entry at {(x, y)}")
        out[x] = out.get(x, Fraction(0)) + q
        inc[y] = inc.get(y, Fraction(0)) + q
    if out != {v: Fraction(m) for v, m in mu.items()}:
        problems.append("first marginal differs from mu")
    if inc != {v: Fraction(m) for v, m in nu.items()}:
        problems.append("second marginal differs from nu")
    primal = sum((q * g.distance(x, y) for (x, y), q in result.plan.items()), Fraction(0))
    if primal != result.cost:
        problems.append(f"plan cost {primal} differs from reported cost {result.cost}")
    touched = set(result.potential)
    for x, y in result.plan:
        touched.add(x)
        touched.add(y)
    missing = touched - set(result.potential)
    if missing:
        problems.append(f"potential undefined on {sorted(missing)}")
    f = result.potential
    keys = sorted(f)
    for i, x in enumerate(keys):
        dx = g.distances_from(x)
        for y in keys[i + 1 :]:
            if abs(f[x] - f[y]) > dx[y]:
                problems.append(f"potential not 1-Lipschitz on {(x, y)}")
    if result.duality_gap(mu, nu) != 0:
        problems.append("non-zero duality gap")
    if len(result.plan) > len(mu) + len(nu) - 1:
        problems.append("plan support larger than a basic solution allows")
    return problems
