"""Signed-distance shells around a cut-set and growth/decay envelopes.

Envelopes are keyed by signed shell index ``k``. Non-negative keys belong
to the ``V+`` side and non-positive keys to the ``V-`` side; index 0 is the
cut-set itself and is shared.
"""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import EmptySigma, NonSeparating, NoPositiveRange, ParameterOutOfRange
from .graph import Graph, bfs_distances, hypercube_weight

__all__ = [
    "ShellProfile",
    "GrowthEnvelope",
    "shell_profile",
    "empirical_envelope",
    "constant_envelope",
    "sequence_envelope",
    "mu_from_hout",
    "verify_lemma_d_lowerbound",
    "envelope_violations",
    "outer_boundary",
    "middle_slice",
    "sphere_cut",
    "envelope_csv",
]


@dataclass(frozen=True)
class ShellProfile:
    sigma: frozenset
    v_plus: frozenset
    v_minus: frozenset
    signed_dist: tuple[int, ...]
    shell_size: dict[int, int]

    @property
    def t_plus(self) -> int:
        return max(self.shell_size)

    @property
    def t_minus(self) -> int:
        return min(self.shell_size)

    def size(self, k: int) -> int:
        return self.shell_size.get(k, 0)

    def flipped(self) -> "ShellProfile":
        """Same cut with the two sides exchanged."""
        return ShellProfile(
            self.sigma,
            self.v_minus,
            self.v_plus,
            tuple(-s for s in self.signed_dist),
            dict(sorted((-k, c) for k, c in self.shell_size.items())),
        )

    def max_shell_is_sigma(self) -> bool:
        return all(c <= len(self.sigma) for c in self.shell_size.values())


def _components(g: Graph, allowed: set[int]) -> list[frozenset]:
    seen: set[int] = set()
    out = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        out.append(frozenset(comp))
    return out


def shell_profile(g: Graph, sigma: Iterable[int], v_plus: Iterable[int] | None = None) -> ShellProfile:
    """Signed distance from ``sigma`` with positive values on ``v_plus``.

    ``v_plus`` defaults to the component of ``V - sigma`` holding the
    smallest vertex outside ``sigma``. An explicit ``v_plus`` must avoid
    ``sigma``; everything else outside ``sigma`` becomes ``V-``. Raises
    :class:`NonSeparating` when an edge joins the two sides.
    """
    sig = frozenset(sigma)
    if not sig:
        raise EmptySigma("cut-set is empty")
    for v in sig:
        if not 0 <= v < g.n:
            raise ParameterOutOfRange(f"vertex {v} outside the graph")
    rest = set(range(g.n)) - sig
    if v_plus is None:
        comps = _components(g, rest)
        plus = comps[0] if comps else frozenset()
    else:
        plus = frozenset(v_plus)
        if plus & sig:
            raise ParameterOutOfRange("V+ must not meet the cut-set")
        if not plus <= rest:
            raise ParameterOutOfRange("V+ contains vertices outside the graph")
    minus = frozenset(rest - plus)
    for u in plus:
        for w in g.adjacency[u]:
            if w in minus:
                raise NonSeparating(f"edge ({u}, {w}) joins V+ and V-")
    dist = bfs_distances(g, sig).dist
    signed = tuple(-d if v in minus else d for v, d in enumerate(dist))
    sizes: dict[int, int] = {}
    for s in signed:
        sizes[s] = sizes.get(s, 0) + 1
    return ShellProfile(sig, plus, minus, signed, dict(sorted(sizes.items())))


@dataclass(frozen=True)
class GrowthEnvelope:
    """Upper (``nu``) and lower (``mu``) normalized shell-size bounds.

    Keys outside ``nu`` mean ``nu = 0`` there. ``t_plus``/``t_minus`` are the
    truncation indices where ``mu`` stays positive; ``T`` is set by
    :func:`mu_from_hout`.
    """

    nu: dict[int, Fraction]
    mu: dict[int, Fraction]
    provenance: str
    h_out: Fraction | None = None
    T: int | None = None
    meta: dict = field(default_factory=dict)

    def nu_at(self, k: int) -> Fraction:
        return self.nu.get(k, Fraction(0))

    def mu_at(self, k: int) -> Fraction:
        return self.mu.get(k, Fraction(0))

    @property
    def t_plus(self) -> int:
        t = 0
        while self.mu_at(t + 1) > 0:
            t += 1
        return t

    @property
    def t_minus(self) -> int:
        t = 0
        while self.mu_at(t - 1) > 0:
            t -= 1
        return t

    def side(self, sign: int) -> tuple[list[Fraction], list[Fraction]]:
        """``(nu, mu)`` lists indexed by distance ``0..T`` on one side."""
        t = self.t_plus if sign > 0 else -self.t_minus
        nu = [self.nu_at(sign * i) for i in range(t + 2)]
        mu = [self.mu_at(sign * i) for i in range(t + 1)]
        return nu, mu

    def mirrored(self) -> "GrowthEnvelope":
        return replace(
            self,
            nu={-k: v for k, v in sorted(self.nu.items(), reverse=True)},
            mu={-k: v for k, v in sorted(self.mu.items(), reverse=True)},
        )

    def to_rows(self) -> list[tuple[int, Fraction, Fraction]]:
        keys = sorted(set(self.nu) | set(self.mu))
        return [(k, self.nu_at(k), self.mu_at(k)) for k in keys]


def empirical_envelope(profile: ShellProfile, signed: bool = False) -> GrowthEnvelope:
    """Tightest valid envelope: the normalized shell sizes themselves.

    By default the envelope is symmetric, ``nu(k)`` the larger and ``mu(k)``
    the smaller of ``|S_k|`` and ``|S_-k|`` over ``|sigma|``. With
    ``signed=True`` each signed index keeps its own value.
    """
    s = len(profile.sigma)
    nu: dict[int, Fraction] = {}
    mu: dict[int, Fraction] = {}
    if signed:
        for k, c in profile.shell_size.items():
            nu[k] = mu[k] = Fraction(c, s)
    else:
        reach = max(profile.t_plus, -profile.t_minus)
        for k in range(reach + 1):
            a, b = profile.size(k), profile.size(-k)
            hi, lo = Fraction(max(a, b), s), Fraction(min(a, b), s)
            if hi == 0:
                continue
            nu[k] = nu[-k] = hi
            mu[k] = mu[-k] = lo
    return GrowthEnvelope(
        nu=dict(sorted(nu.items())),
        mu=dict(sorted(mu.items())),
        provenance="empirical",
        meta={"signed": signed, "sigma_size": s},
    )


def constant_envelope(t_max: int, value: Fraction = Fraction(1)) -> GrowthEnvelope:
    """``nu == value`` on ``-t_max..t_max`` with ``mu`` unset."""
    nu = {k: Fraction(value) for k in range(-t_max, t_max + 1)}
    return GrowthEnvelope(nu=nu, mu={}, provenance="constant")


def sequence_envelope(values, t_max: int | None = None) -> GrowthEnvelope:
    """Symmetric envelope from an explicit sequence ``nu(0), nu(1), ...``.

    ``values`` may be a list or a callable of the shell index.
    """
    if callable(values):
        if t_max is None:
            raise ParameterOutOfRange("a callable sequence needs t_max")
        seq = [Fraction(values(i)) for i in range(t_max + 1)]
    else:
        seq = [Fraction(v) for v in values]
    nu = {}
    for i, v in enumerate(seq):
        nu[i] = nu[-i] = v
    return GrowthEnvelope(nu=dict(sorted(nu.items())), mu={}, provenance="explicit-sequence")


def mu_from_hout(env: GrowthEnvelope, h_out: Fraction, source: str = "h_out") -> GrowthEnvelope:
    """Fill ``mu(k) = 1 - h * sum_{|i|<=|k|} nu(i)`` and truncate at ``T``.

    ``T`` is the largest ``k >= 0`` with ``mu(k) > 0``; ties with zero are
    excluded. Each side is truncated independently, so a symmetric ``nu``
    gives ``t_plus == -t_minus == T``. ``source`` records which Cheeger
    quantity was supplied (e.g. ``h_out`` or ``h_out(3)``).
    """
    h = Fraction(h_out)
    if h <= 0:
        raise ParameterOutOfRange("h_out must be positive")
    mu0 = 1 - h * env.nu_at(0)
    if mu0 <= 0:
        raise NoPositiveRange(f"mu(0) = {mu0} is not positive")
    mu = {0: mu0}
    for sign in (1, -1):
        acc = env.nu_at(0)
        k = 0
        while k + sign in env.nu:
            k += sign
            acc += env.nu[k]
            value = 1 - h * acc
            if value <= 0:
                break
            mu[k] = value
    T = max(mu)
    nu = {k: v for k, v in env.nu.items() if min(mu) - 1 <= k <= T + 1}
    meta = dict(env.meta)
    meta["mu_source"] = source
    return GrowthEnvelope(
        nu=nu,
        mu=dict(sorted(mu.items())),
        provenance=env.provenance,
        h_out=h,
        T=T,
        meta=meta,
    )


def envelope_violations(
    profile: ShellProfile, env: GrowthEnvelope, window: tuple[int, int] | None = None
) -> list[tuple[int, str]]:
    """Occupied shells breaking ``|S| mu(k) <= |S_k| <= |S| nu(k)``.

    ``mu`` is only checked where it is defined. With ``window = (lo, hi)``
    only shells ``lo <= k <= hi`` are checked; the bounds never look past
    the truncation indices, so shells outside them are irrelevant.
    """
    s = len(profile.sigma)
    out = []
    for k, c in profile.shell_size.items():
        if window is not None and not window[0] <= k <= window[1]:
            continue
        if c > s * env.nu_at(k):
            out.append((k, "upper"))
        if k in env.mu and c < s * env.mu[k]:
            out.append((k, "lower"))
    for k in env.mu:
        if env.mu[k] > 0 and profile.size(k) == 0:
            out.append((k, "lower"))
    return sorted(set(out))


def verify_lemma_d_lowerbound(
    g: Graph,
    sigma: Iterable[int],
    nu: GrowthEnvelope,
    h_out: Fraction,
    a_side: Iterable[int] | None = None,
) -> list[tuple[str, int, int, Fraction]]:
    """Check ``|S_k| >= |S| (1 - h sum_{i<=k} nu(i))`` for ``k >= 0``.

    Both orientations are tried: ``V+ = A`` and ``V+ = V - (A + sigma)``.
    ``a_side`` defaults to the side :func:`shell_profile` picks. Returns
    ``(orientation, k, |S_k|, bound)`` for each failure.
    """
    profile = shell_profile(g, sigma, a_side)
    h = Fraction(h_out)
    s = len(profile.sigma)
    out = []
    for label, prof in (("A-positive", profile), ("A-negative", profile.flipped())):
        acc = Fraction(0)
        for k in range(0, max(prof.t_plus, 0) + 2):
            acc += nu.nu_at(k)
            bound = s * (1 - h * acc)
            if bound <= 0:
                break
            if prof.size(k) < bound:
                out.append((label, k, prof.size(k), bound))
    return out


def outer_boundary(g: Graph, a: Iterable[int]) -> frozenset:
    aset = set(a)
    return frozenset(w for u in aset for w in g.adjacency[u] if w not in aset)


def middle_slice(g: Graph) -> tuple[frozenset, frozenset]:
    """``floor(d/2)``-slice of a hypercube and the side above it."""
    if not g.family or g.family[0] != "hypercube":
        raise ParameterOutOfRange("middle-slice needs a hypercube")
    d = g.family[1]
    m = d // 2
    sigma = frozenset(v for v in range(g.n) if hypercube_weight(v) == m)
    upper = frozenset(v for v in range(g.n) if hypercube_weight(v) > m)
    return sigma, upper


def sphere_cut(g: Graph, x: int, r: int) -> tuple[frozenset, frozenset]:
    """Sphere ``S(x, r)`` and the open ball inside it."""
    dist = g.distances_from(x)
    sigma = frozenset(v for v in range(g.n) if dist[v] == r)
    ball = frozenset(v for v in range(g.n) if dist[v] < r)
    return sigma, ball


def envelope_csv(env: GrowthEnvelope) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "nu", "mu"])
    for k, nu, mu in env.to_rows():
        writer.writerow([k, str(nu), str(mu)])
    return buf.getvalue()
