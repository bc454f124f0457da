"""Edge and vertex Cheeger constants by enumeration or family witnesses."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from . import _kernels
from .errors import ParameterOutOfRange, TooLarge, UnknownFamily
from .graph import Graph, generate, parse_spec

__all__ = [
    "IsoperimetryResult",
    "cheeger_brute",
    "cheeger_family",
    "higher_cheeger_brute",
    "verify_h_monotonicity",
    "boundary_ratio",
    "stirling2",
    "subset_guard",
    "partition_guard",
]

KINDS = {"edge": _kernels.EDGE, "inner": _kernels.INNER, "outer": _kernels.OUTER}
DEFAULT_MAX_BRUTE = 1 << 24
DEFAULT_MAX_PARTITIONS = 10**5


def subset_guard() -> int:
    return int(os.environ.get("CURVEBOUND_MAX_BRUTE", DEFAULT_MAX_BRUTE))


def partition_guard() -> int:
    return int(os.environ.get("CURVEBOUND_MAX_PARTITIONS", DEFAULT_MAX_PARTITIONS))


@dataclass(frozen=True)
class IsoperimetryResult:
    """Optimal ratio with its witness.

    ``witness`` is a tuple of sorted vertex tuples: one set for the
    two-sided constants, ``n`` cells for ``h_out(n)``.
    """

    kind: str
    value: Fraction
    witness: tuple
    method: str
    meta: dict = field(default_factory=dict)


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def boundary_ratio(g: Graph, a, kind: str) -> Fraction:
    """Boundary/size ratio of one vertex set (edge kind normalized by D)."""
    aset = set(a)
    if not aset:
        raise ParameterOutOfRange("set must be non-empty")
    if kind == "edge":
        cut = sum(1 for u in aset for w in g.adjacency[u] if w not in aset)
        return Fraction(cut, g.max_degree * len(aset))
    if kind == "inner":
        inner = sum(1 for u in aset if any(w not in aset for w in g.adjacency[u]))
        return Fraction(inner, len(aset))
    if kind == "outer":
        outer = {w for u in aset for w in g.adjacency[u] if w not in aset}
        return Fraction(len(outer), len(aset))
    raise ParameterOutOfRange(f"unknown kind {kind!r}")


def cheeger_brute(g: Graph, kind: str = "outer") -> IsoperimetryResult:
    """Exact Cheeger constant over all ``0 < |A| <= |V|/2``.

    Ties are broken by smaller ``|A|`` and then lexicographic order.
    """
    if kind not in KINDS:
        raise ParameterOutOfRange(f"unknown kind {kind!r}")
    if g.n < 2:
        raise ParameterOutOfRange("Cheeger constants need at least two vertices")
    if 1 << g.n > subset_guard() or g.n > 62:
        raise TooLarge(f"2^{g.n} subsets exceed the enumeration guard")
    num, den, mask = _kernels.cheeger_enum(list(g.neighbor_masks), KINDS[kind])
    value = Fraction(num, den)
    if kind == "edge":
        value /= g.max_degree
    return IsoperimetryResult(
        kind=kind,
        value=value,
        witness=(_mask_to_tuple(mask),),
        method="brute-force",
        meta={"backend": _kernels.BACKEND},
    )


def _cycle_counts(n: int) -> list[int]:
    counts = [0] * (n // 2 + 1)
    for v in range(n):
        counts[min(v, n - v)] += 1
    return counts


def _torus_sphere_counts(n: int, d: int) -> list[int]:
    base = _cycle_counts(n)
    out = [1]
    for _ in range(d):
        nxt = [0] * (len(out) + len(base) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(base):
                nxt[i + j] += a * b
        out = nxt
    return out


def cheeger_family(spec, cross_check: bool = True) -> IsoperimetryResult:
    """Outer Cheeger value of a named family's standard witness.

    Hypercube: ``A`` is everything above the ``floor(d/2)``-slice and the
    slice is its outer boundary. Cycle: a half-cycle. Torus ``d >= 2``: the
    ball ``B(0, ceil(dn/4) - 1)``. The returned value is the witness ratio,
    an upper bound on ``h_out``. When brute force fits the guard the exact
    value is attached as ``meta['brute']`` with an ``optimal`` flag.
    """
    family = parse_spec(spec) if isinstance(spec, str) else tuple(spec)
    kind = family[0]
    meta: dict = {}
    if kind == "hypercube":
        (d,) = family[1:]
        if d < 1:
            raise ParameterOutOfRange("hypercube needs d >= 1")
        m = d // 2
        sigma = math.comb(d, m)
        size = sum(math.comb(d, i) for i in range(m + 1, d + 1))
        if size == 0:
            raise ParameterOutOfRange("slice witness is empty")
        value = Fraction(sigma, size)
        witness = (("slice-above", m),)
        n_vertices = 1 << d
    elif kind == "torus" or kind == "cycle":
        if kind == "cycle":
            n, d = family[1], 1
        else:
            n, d = family[1:]
        if n < 3 or d < 1:
            raise ParameterOutOfRange("torus needs n >= 3 and d >= 1")
        if d == 1:
            half = n // 2
            value = Fraction(2, half) if n > 3 else Fraction(2, 1)
            witness = (tuple(range(half)),)
        else:
            r = math.ceil(d * n / 4)
            counts = _torus_sphere_counts(n, d)
            # on small tori the ball can exceed half the vertices; shrink it
            while r > 1 and 2 * sum(counts[:r]) > n**d:
                r -= 1
                meta["radius_reduced"] = True
            ball = sum(counts[:r])
            sphere = counts[r] if r < len(counts) else 0
            value = Fraction(sphere, ball)
            witness = (("ball", 0, r - 1),)
            meta["ball_size"] = ball
        n_vertices = n**d
    else:
        raise UnknownFamily(f"no closed-form witness for {kind!r}")
    meta["vertices"] = n_vertices
    if cross_check and (1 << n_vertices) <= subset_guard():
        brute = cheeger_brute(generate(family), "outer")
        meta["brute"] = brute.value
        meta["optimal"] = brute.value == value
    return IsoperimetryResult("outer", value, witness, "closed-form-family", meta)


def stirling2(n: int, k: int) -> int:
    """Number of partitions of ``n`` labelled items into ``k`` blocks."""
    if k < 0 or k > n:
        return 0
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1)) // math.factorial(k)


def higher_cheeger_brute(g: Graph, n: int) -> IsoperimetryResult:
    """``h_out(n)``: min over partitions into ``n`` cells of the max ratio."""
    if not 1 <= n <= g.n:
        raise ParameterOutOfRange(f"need 1 <= n <= |V|, got {n}")
    count = stirling2(g.n, n)
    if count > partition_guard() or g.n > 62:
        raise TooLarge(f"{count} partitions exceed the enumeration guard")
    num, den, labels = _kernels.partition_enum(list(g.neighbor_masks), n)
    cells = tuple(tuple(v for v in range(g.n) if labels[v] == b) for b in range(n))
    return IsoperimetryResult(
        kind=f"outer({n})",
        value=Fraction(num, den),
        witness=cells,
        method="brute-force",
        meta={"partitions": count, "backend": _kernels.BACKEND},
    )


def verify_h_monotonicity(g: Graph, n_max: int) -> list[tuple]:
    """Check ``h_out(n-1) <= h_out(n)`` for ``n = 3..n_max``.

    The merge construction from the proof is replayed as well: merging the
    two lowest-ratio cells of an optimal ``n``-partition must give an
    ``(n-1)``-partition whose max ratio is at most ``h_out(n)``.
    """
    out = []
    prev = higher_cheeger_brute(g, 2) if n_max >= 3 else None
    for n in range(3, n_max + 1):
        cur = higher_cheeger_brute(g, n)
        if prev.value > cur.value:
            out.append(("monotonicity", n, prev.value, cur.value))
        cells = sorted(cur.witness, key=lambda c: (boundary_ratio(g, c, "outer"), -len(c)))
        merged = [tuple(sorted(cells[0] + cells[1]))] + cells[2:]
        worst = max(boundary_ratio(g, c, "outer") for c in merged)
        if worst > cur.value:
            out.append(("merge", n, worst, cur.value))
        prev = cur
    return out
