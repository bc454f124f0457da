"""Laplacian spectra, the Hardy constant and tridiagonal eigenvalue bounds.

Envelope data stays exact (``Fraction``) until a matrix is handed to an
eigen-solver. Two independent routes bound ``lambda_2``:

* the Hardy route: exact ``B`` and the least eigenvalue ``R`` of the
  weighted pencil ``K f = R M f`` (``R <= 1/(2B)``);
* the matrix route: the least eigenvalues of the tridiagonal ``A+``/``A-``.

On each side ``R`` equals half the least eigenvalue of ``A``; the two are
computed by different code and compared in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import (
    AlphaTooLarge,
    CountTooLarge,
    DominanceHypothesisFails,
    EmptyRange,
    EmptySide,
    IndexOutOfRange,
    ParameterOutOfRange,
    TooLargeForDense,
)
from .graph import Graph, parse_spec
from .shells import GrowthEnvelope, ShellProfile, shell_profile

__all__ = [
    "Spectrum",
    "TridiagonalSystem",
    "SpectralBoundReport",
    "laplacian_spectrum",
    "closed_form_spectrum",
    "dense_spectrum",
    "hardy_constant_B",
    "hardy_rayleigh_R",
    "minimizer_is_monotone",
    "build_A_matrices",
    "tridiagonal_eigenvalues",
    "bound_lambda2",
    "bound_higher",
    "bound_one_sided",
    "buser_constant_route",
    "higher_buser_bound",
    "DENSE_GUARD",
    "SLACK",
]

DENSE_GUARD = 1500
CLOSED_FORM_GUARD = 10**7
JACOBI_TOL = 1e-12
BISECT_TOL = 1e-12
SLACK = 1e-8


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    method: str
    tolerance: float
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def lam(self, k: int) -> float:
        """``lambda_k`` with 1-based indexing."""
        return self.eigenvalues[k - 1]


def _family_degree(family: tuple) -> int | None:
    kind = family[0]
    if kind == "cycle":
        return 2
    if kind == "hypercube":
        return family[1]
    if kind == "complete":
        return family[1] - 1
    if kind == "torus":
        return 2 * family[2]
    if kind == "product":
        a, b = _family_degree(family[1]), _family_degree(family[2])
        return None if a is None or b is None else a + b
    return None


def _family_size(family: tuple) -> int | None:
    kind = family[0]
    if kind in ("cycle", "complete"):
        return family[1]
    if kind == "hypercube":
        return 2 ** family[1]
    if kind == "torus":
        return family[1] ** family[2]
    if kind == "product":
        a, b = _family_size(family[1]), _family_size(family[2])
        return None if a is None or b is None else a * b
    return None


def _family_values(family: tuple) -> list[float] | None:
    kind = family[0]
    if kind == "cycle":
        n = family[1]
        return [1.0 - math.cos(2.0 * math.pi * k / n) for k in range(n)]
    if kind == "hypercube":
        d = family[1]
        return [2.0 * k / d for k in range(d + 1) for _ in range(math.comb(d, k))]
    if kind == "complete":
        n = family[1]
        return [0.0] + [n / (n - 1)] * (n - 1)
    if kind == "torus":
        n, d = family[1:]
        fam: tuple = ("cycle", n)
        for _ in range(d - 1):
            fam = ("product", fam, ("cycle", n))
        return _family_values(fam)
    if kind == "product":
        a, b = family[1], family[2]
        da, db = _family_degree(a), _family_degree(b)
        va, vb = _family_values(a), _family_values(b)
        if da is None or db is None or va is None or vb is None:
            return None
        return [(da * x + db * y) / (da + db) for x in va for y in vb]
    return None


def closed_form_spectrum(family) -> Spectrum | None:
    """Exact spectrum of a regular named family, or ``None`` if unknown."""
    fam = parse_spec(family) if isinstance(family, str) else tuple(family)
    size = _family_size(fam)
    if size is not None and size > CLOSED_FORM_GUARD:
        raise TooLargeForDense(f"{size} eigenvalues exceed the closed-form guard {CLOSED_FORM_GUARD}")
    values = _family_values(fam)
    if values is None:
        return None
    values.sort()
    return Spectrum(tuple(values), "closed-form-family", 1e-15)


def normalized_laplacian(g: Graph) -> np.ndarray:
    """``I - D^{-1/2} Adj D^{-1/2}``; similar to ``I - D^{-1} Adj``."""
    a = np.eye(g.n)
    s = [1.0 / math.sqrt(d) for d in g.degree]
    for u, v in g.edges:
        a[u, v] = a[v, u] = -s[u] * s[v]
    return a


def dense_spectrum(g: Graph, max_dense: int = DENSE_GUARD) -> Spectrum:
    if g.n > max_dense:
        raise TooLargeForDense(f"{g.n} vertices exceed the dense guard {max_dense}")
    values, sweeps, off = _kernels.jacobi_eigenvalues(normalized_laplacian(g), JACOBI_TOL)
    return Spectrum(
        tuple(float(x) for x in values),
        "dense-jacobi",
        JACOBI_TOL,
        meta={"sweeps": int(sweeps), "off_norm": float(off), "backend": _kernels.BACKEND},
    )


def laplacian_spectrum(g: Graph, max_dense: int = DENSE_GUARD, method: str = "auto") -> Spectrum:
    """Full ascending spectrum of the normalized Laplacian.

    ``method`` is ``auto`` (closed form when the family allows it),
    ``closed-form`` or ``dense``.
    """
    if method not in ("auto", "closed-form", "dense"):
        raise ParameterOutOfRange(f"unknown spectrum method {method!r}")
    if method != "dense" and g.family is not None:
        spec = closed_form_spectrum(g.family)
        if spec is not None:
            return spec
        if method == "closed-form":
            raise ParameterOutOfRange(f"no closed form for {g.name}")
    return dense_spectrum(g, max_dense)


# ---------------------------------------------------------------------------
# envelope sides


def _side(env: GrowthEnvelope, sign: int, t: int | None = None) -> tuple[int, list[Fraction], list[Fraction]]:
    """``(T, nu[0..T+1], mu[0..T])`` along one side, optionally truncated."""
    top = env.t_plus if sign > 0 else -env.t_minus
    if t is None:
        t = top
    if t > top:
        raise IndexOutOfRange(f"truncation {t} beyond the side's range {top}")
    nu = [env.nu_at(sign * i) for i in range(t + 2)]
    mu = [env.mu_at(sign * i) for i in range(t + 1)]
    return t, nu, mu


def hardy_constant_B(env: GrowthEnvelope, side: int = 1, with_argmax: bool = False):
    """Exact ``B = max_n (sum_{k=n}^T mu(k)) (sum_{k=1}^n 1/(nu(k)+nu(k-1)))``."""
    T, nu, mu = _side(env, side)
    if T < 1:
        raise EmptyRange("Hardy constant needs T >= 1")
    tail = [Fraction(0)] * (T + 2)
    for k in range(T, 0, -1):
        tail[k] = tail[k + 1] + mu[k]
    best, arg = None, 0
    head = Fraction(0)
    for n in range(1, T + 1):
        head += 1 / (nu[n] + nu[n - 1])
        value = tail[n] * head
        if best is None or value > best:
            best, arg = value, n
    return (best, arg) if with_argmax else best


def _pencil(nu: list[Fraction], mu: list[Fraction], T: int):
    """Stiffness ``K`` (halved) and mass ``M`` of the Rayleigh pencil."""
    zeta = [None] + [nu[k] + nu[k - 1] for k in range(1, T + 1)]
    diag = []
    for k in range(1, T + 1):
        diag.append((zeta[k] + zeta[k + 1]) / 2 if k < T else zeta[T] / 2)
    off_sq = [(zeta[k + 1] / 2) ** 2 for k in range(1, T)]
    return diag, off_sq, mu[1 : T + 1]


def _pencil_interval(diag, off, weights) -> tuple[float, float]:
    hi = 0.0
    n = len(diag)
    for i in range(n):
        r = abs(off[i - 1]) if i > 0 else 0.0
        r += abs(off[i]) if i < n - 1 else 0.0
        hi = max(hi, (diag[i] + r) / weights[i])
    return 0.0, hi * (1 + 1e-9) + 1e-9


def hardy_rayleigh_R(env: GrowthEnvelope, side: int = 1, with_vector: bool = False):
    """Least eigenvalue ``R`` of the one-sided Rayleigh problem.

    With ``with_vector=True`` returns ``(R, f)`` where ``f(1..T)`` is the
    minimizer recovered by inverse iteration, normalized so ``f(1) > 0``.
    """
    T, nu, mu = _side(env, side)
    if T < 1:
        raise EmptyRange("Rayleigh problem needs T >= 1")
    diag, off_sq, weights = _pencil(nu, mu, T)
    d = [float(x) for x in diag]
    e2 = [float(x) for x in off_sq]
    w = [float(x) for x in weights]
    off = [math.sqrt(x) for x in e2]
    lo, hi = _pencil_interval(d, off, w)
    (value,) = _kernels.bisect_eigenvalues(d, e2, w, 1, lo, hi, BISECT_TOL)
    if not with_vector:
        return value
    k = np.diag(d)
    for i, x in enumerate(off):
        k[i, i + 1] = k[i + 1, i] = -x
    m = np.diag(w)
    shift = value - 1e-9 * max(1.0, abs(value))
    vec = np.ones(T)
    for _ in range(50):
        vec = np.linalg.solve(k - shift * m, m @ vec)
        vec /= np.linalg.norm(vec)
    if vec[0] < 0:
        vec = -vec
    return value, vec


def minimizer_is_monotone(vec, rel_tol: float = 1e-9) -> bool:
    """``f(0) = 0 <= f(1) <= ... <= f(T)`` up to a relative tolerance."""
    f = [0.0] + [float(x) for x in vec]
    slack = rel_tol * max(abs(x) for x in f)
    return all(b >= a - slack for a, b in zip(f, f[1:]))


@dataclass(frozen=True)
class TridiagonalSystem:
    """Symmetric tridiagonal matrix with exact entries.

    ``off_sq`` holds the exact squared off-diagonal entries; every
    off-diagonal entry is non-positive, so ``offdiag = -sqrt(off_sq)``.
    """

    side: str
    indices: tuple[int, ...]
    diag_exact: tuple[Fraction, ...]
    off_sq: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.diag_exact)

    @property
    def diag(self) -> list[float]:
        return [float(x) for x in self.diag_exact]

    @property
    def offdiag(self) -> list[float]:
        return [-math.sqrt(float(x)) for x in self.off_sq]

    def dense(self) -> np.ndarray:
        a = np.diag(self.diag)
        for i, x in enumerate(self.offdiag):
            a[i, i + 1] = a[i + 1, i] = x
        return a


def _a_plus(env: GrowthEnvelope, t: int) -> TridiagonalSystem:
    nu = env.nu_at
    mu = env.mu_at
    diag = []
    for i in range(1, t + 1):
        if i < t:
            diag.append((2 * nu(i) + nu(i - 1) + nu(i + 1)) / mu(i))
        else:
            diag.append((nu(t) + nu(t - 1)) / mu(t))
    off = [(nu(i) + nu(i + 1)) ** 2 / (mu(i) * mu(i + 1)) for i in range(1, t)]
    return TridiagonalSystem("plus", tuple(range(1, t + 1)), tuple(diag), tuple(off))


def _a_minus(env: GrowthEnvelope, t: int) -> TridiagonalSystem:
    # indexed t..-1 with t negative; the corner sits at i = t
    nu = env.nu_at
    mu = env.mu_at
    diag = []
    for i in range(t, 0):
        if i > t:
            diag.append((2 * nu(i) + nu(i - 1) + nu(i + 1)) / mu(i))
        else:
            diag.append((nu(t) + nu(t + 1)) / mu(t))
    off = [(nu(i) + nu(i + 1)) ** 2 / (mu(i) * mu(i + 1)) for i in range(t, -1)]
    return TridiagonalSystem("minus", tuple(range(t, 0)), tuple(diag), tuple(off))


def build_A_matrices(
    env: GrowthEnvelope, t_plus: int | None = None, t_minus: int | None = None
) -> tuple[TridiagonalSystem | None, TridiagonalSystem | None]:
    """Comparison matrices ``A+`` (indices ``1..t+``) and ``A-`` (``t-..-1``).

    A side with no positive ``mu`` beyond the cut yields ``None``; when both
    sides are empty :class:`EmptySide` is raised.
    """
    tp = env.t_plus if t_plus is None else t_plus
    tm = env.t_minus if t_minus is None else t_minus
    if tp > env.t_plus or tm < env.t_minus:
        raise IndexOutOfRange("truncation outside the envelope's positive range")
    plus = _a_plus(env, tp) if tp >= 1 else None
    minus = _a_minus(env, tm) if tm <= -1 else None
    if plus is None and minus is None:
        raise EmptySide("neither side has a positive decay envelope beyond the cut")
    return plus, minus


def _gershgorin(diag: Sequence[float], off: Sequence[float]) -> tuple[float, float]:
    n = len(diag)
    lo, hi = math.inf, -math.inf
    for i in range(n):
        r = (abs(off[i - 1]) if i > 0 else 0.0) + (abs(off[i]) if i < n - 1 else 0.0)
        lo = min(lo, diag[i] - r)
        hi = max(hi, diag[i] + r)
    pad = 1e-9 * max(1.0, abs(lo), abs(hi))
    return lo - pad, hi + pad


def tridiagonal_eigenvalues(sys: TridiagonalSystem, count: int) -> list[float]:
    """Smallest ``count`` eigenvalues by Sturm bisection (width 1e-12)."""
    if count > sys.size:
        raise CountTooLarge(f"asked for {count} eigenvalues of a {sys.size}x{sys.size} system")
    if count <= 0:
        return []
    diag = sys.diag
    lo, hi = _gershgorin(diag, sys.offdiag)
    return _kernels.bisect_eigenvalues(diag, [float(x) for x in sys.off_sq], None, count, lo, hi, BISECT_TOL)


def tridiagonal_from_lists(diag: Sequence, offdiag: Sequence, side: str = "plus") -> TridiagonalSystem:
    """Wrap plain diagonal/off-diagonal lists (off-diagonal signs are squared away)."""
    return TridiagonalSystem(
        side,
        tuple(range(1, len(diag) + 1)),
        tuple(Fraction(x) for x in diag),
        tuple(Fraction(x) ** 2 for x in offdiag),
    )


# ---------------------------------------------------------------------------
# bounds


def _rho_k(env: GrowthEnvelope, sign: int, k: int) -> float:
    """``min over t in [k, T] of rho_k(A(t))`` on one side."""
    top = env.t_plus if sign > 0 else -env.t_minus
    if k < 1 or k > top:
        raise IndexOutOfRange(f"index {k} outside 1..{top}")
    best = math.inf
    for t in range(k, top + 1):
        plus, minus = build_A_matrices(env, t if sign > 0 else 0, -t if sign < 0 else 0)
        sys = plus if sign > 0 else minus
        best = min(best, tridiagonal_eigenvalues(sys, k)[k - 1])
    return best


def bound_higher(env: GrowthEnvelope, k: int, l: int, truncate: bool = True) -> float:
    """``(1/2) max(rho_k+, rho_l-)`` bounding ``lambda_{k+l}``.

    With ``truncate`` the two sides are minimized over truncations
    ``t+ in [k, T+]`` and ``t- in [T-, -l]`` independently, which minimizes
    the max.
    """
    if k < 1 or k > env.t_plus:
        raise IndexOutOfRange(f"k = {k} outside 1..{env.t_plus}")
    if l < 1 or l > -env.t_minus:
        raise IndexOutOfRange(f"l = {l} outside 1..{-env.t_minus}")
    if truncate:
        return 0.5 * max(_rho_k(env, 1, k), _rho_k(env, -1, l))
    plus, minus = build_A_matrices(env)
    return 0.5 * max(tridiagonal_eigenvalues(plus, k)[k - 1], tridiagonal_eigenvalues(minus, l)[l - 1])


def bound_one_sided(env: GrowthEnvelope, k: int, side: int = 1) -> float:
    """``(1/2) rho_k`` of one side, a bound on ``lambda_k`` when the other side is empty."""
    return 0.5 * _rho_k(env, side, k)


@dataclass
class SpectralBoundReport:
    """Every computed bound next to the eigenvalue it must dominate."""

    graph: str
    h_out: Fraction | None
    envelope: dict
    B: Fraction | None = None
    lambda2_bound: float | None = None
    rho_bounds: dict = field(default_factory=dict)
    buser_constants: dict = field(default_factory=dict)
    true_spectrum: Spectrum | None = None
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name: str, bound, true_value: float | None, **extra) -> dict:
        if bound is None or true_value is None:
            status = "skipped"
        else:
            status = "pass" if float(bound) + SLACK >= true_value else "fail"
        row = {"check": name, "bound": bound, "true": true_value, "status": status}
        row.update(extra)
        self.checks.append(row)
        return row

    @property
    def all_satisfied(self) -> bool:
        return all(row["status"] != "fail" for row in self.checks)


def bound_lambda2(
    env: GrowthEnvelope,
    spectrum: Spectrum | None = None,
    report: SpectralBoundReport | None = None,
    graph: str = "",
) -> SpectralBoundReport:
    """Both ``lambda_2`` routes: Hardy ``1/(2B)`` and ``max(rho+, rho-)``.

    Each side contributes when its range is non-empty. With only one side
    the matrix route degenerates to a ``lambda_1`` statement and is marked
    unavailable.
    """
    if report is None:
        report = SpectralBoundReport(graph, env.h_out, _env_summary(env))
    lam2 = spectrum.lam(2) if spectrum is not None and len(spectrum) >= 2 else None
    sides = [s for s in (1, -1) if (env.t_plus if s > 0 else -env.t_minus) >= 1]
    if len(sides) < 2:
        report.notes.append("one-sided or empty envelope: two-sided lambda_2 bounds unavailable")
        report.add("hardy-gap", None, lam2, reason="T < 1 on a side")
        report.add("hardy-max-rho", None, lam2, reason="T < 1 on a side")
        return report
    bs = {s: hardy_constant_B(env, s) for s in sides}
    rs, monotone = {}, True
    for s in sides:
        rs[s], vec = hardy_rayleigh_R(env, s, with_vector=True)
        monotone = monotone and minimizer_is_monotone(vec)
    b = min(bs.values())
    report.B = b
    report.lambda2_bound = 1.0 / (2.0 * float(b))
    report.add("hardy-gap", report.lambda2_bound, lam2, B_plus=bs[1], B_minus=bs[-1])
    report.add("hardy-max-rho", max(rs.values()), lam2, R_plus=rs[1], R_minus=rs[-1])
    report.checks.append(
        {"check": "hardy-minimizer-monotone", "bound": None, "true": None, "status": "pass" if monotone else "fail"}
    )
    for s in sides:
        report.add(
            "hardy-sandwich-lower",
            rs[s],
            1.0 / (8.0 * float(bs[s])),
            side=s,
        )
        report.add(
            "hardy-sandwich-upper",
            1.0 / (2.0 * float(bs[s])),
            rs[s],
            side=s,
        )
    return report


def _env_summary(env: GrowthEnvelope) -> dict:
    return {
        "provenance": env.provenance,
        "T": env.T,
        "t_plus": env.t_plus,
        "t_minus": env.t_minus,
        "h_out": env.h_out,
    }


def buser_constant_route(g: Graph, sigma, v_plus=None, profile: ShellProfile | None = None) -> Fraction:
    """Explicit large-level-set bound ``2(t+1)|S| / (t^2 |V|)``, ``t = floor(1/(4 alpha))``.

    Requires ``alpha = |S|/|V| < 1/4`` and ``|S| >= |S_k|`` for every shell.
    """
    if profile is None:
        profile = shell_profile(g, sigma, v_plus)
    s = len(profile.sigma)
    alpha = Fraction(s, g.n)
    if alpha >= Fraction(1, 4):
        raise AlphaTooLarge(f"alpha = {alpha} is not below 1/4")
    if not profile.max_shell_is_sigma():
        raise DominanceHypothesisFails("some shell is larger than the cut-set")
    t = math.floor(1 / (4 * alpha))
    return Fraction(2 * (t + 1) * s, t * t * g.n)


def higher_buser_bound(h_out_n: Fraction, k: int, T_min: int) -> dict:
    """Scan ``2 (1 - cos(ceil(k/2) pi/(t+1))) / (1 - h (t+1))`` over ``t``.

    ``t`` runs over ``ceil(k/2)..T_min``; values of ``t`` with a
    non-positive denominator are skipped. The closed-form reference
    ``k^2 h^2 27 pi^2 / 16`` is reported alongside and never asserted.
    """
    h = Fraction(h_out_n)
    if not 0 < h < 1:
        raise ParameterOutOfRange("need 0 < h_out(n) < 1")
    if k < 1:
        raise ParameterOutOfRange("k must be positive")
    c = -(-k // 2)
    best, arg = math.inf, None
    scanned = []
    for t in range(c, T_min + 1):
        den = 1 - h * (t + 1)
        if den <= 0:
            continue
        value = 2.0 * (1.0 - math.cos(c * math.pi / (t + 1))) / float(den)
        scanned.append((t, value))
        if value < best:
            best, arg = value, t
    if arg is None:
        raise EmptyRange(f"no admissible t in [{c}, {T_min}]")
    paper_t = math.ceil(2 / (3 * h)) - 1
    return {
        "value": best,
        "t": arg,
        "scanned": scanned,
        "reference": k * k * float(h) ** 2 * 27 * math.pi**2 / 16,
        "closed_form_t": paper_t,
    }
