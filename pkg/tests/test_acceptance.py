"""Acceptance criteria at their stated tolerances.

Each test records one summary line in ``conftest.ACCEPTANCE``; the lines are
printed at the end of the run.
"""

import math
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from curvebound import transport
from curvebound.curvature import (
    check_neighbor_minimization,
    check_tensorization,
    global_lower_bound,
    kappa,
    shell_growth_violations,
)
from curvebound.errors import AlphaTooLarge, DominanceHypothesisFails, EmptyRange
from curvebound.graph import binomial_shells, build_graph, generate
from curvebound.isoperimetry import cheeger_brute, cheeger_family, verify_h_monotonicity
from curvebound.report import FAIL, bounds_section
from curvebound.shells import (
    constant_envelope,
    empirical_envelope,
    middle_slice,
    mu_from_hout,
    sequence_envelope,
    shell_profile,
)
from curvebound.spectral import (
    SLACK,
    buser_constant_route,
    closed_form_spectrum,
    dense_spectrum,
    hardy_constant_B,
    hardy_rayleigh_R,
    laplacian_spectrum,
    minimizer_is_monotone,
    tridiagonal_eigenvalues,
    tridiagonal_from_lists,
)
from curvebound.transport import certify, lazy_walk_measure, w1

from conftest import ACCEPTANCE
from oracles import hardy_R_dense

# smallest hypercube dimension from which the constant-envelope bound holds
# with exact slice ratios; found by scanning d = 8..1200, see the ledger
BUSER_SLICE_FROM = 187


def record(key, ok, detail):
    ACCEPTANCE[key] = f"criterion {key}: {'PASS' if ok else 'FAIL'} | {detail}"
    assert ok, detail


# ---------------------------------------------------------------------------
# 1: exact curvature values


def test_criterion_1_exact_curvature():
    t0 = time.perf_counter()
    bad = []
    if kappa(generate("complete:2"), 0, 1) != 1:
        bad.append("K_2")
    q2 = global_lower_bound(generate("hypercube:2"))
    if set(q2.kappa.values()) != {Fraction(1, 2)}:
        bad.append("Q_2")
    for n in range(6, 13):
        if set(global_lower_bound(generate(f"cycle:{n}")).kappa.values()) != {0}:
            bad.append(f"C_{n}")
    tree = global_lower_bound(generate("tree:3,5"))
    interior = {tree.kappa[e] for e in tree.interior_edges}
    if not tree.interior_edges or interior != {Fraction(-1, 3)}:
        bad.append("tree:3,5")
    elapsed = time.perf_counter() - t0
    record("1", not bad and elapsed < 1.0, f"mismatches={bad} time={elapsed:.2f}s")


# ---------------------------------------------------------------------------
# 2: exact zero duality gap


def _random_measure(rng, n, support):
    verts = rng.sample(range(n), support)
    weights = [rng.randint(1, 9) for _ in verts]
    total = sum(weights)
    return {v: Fraction(w, total) for v, w in zip(verts, weights)}


def test_criterion_2_zero_duality_gap():
    t0 = time.perf_counter()
    start = dict(transport.STATS)
    rng = random.Random(2024)
    graphs = [generate(s) for s in ["cycle:9", "hypercube:3", "torus:4,2", "tree:2,3", "complete:5"]]
    uncertified = 0
    count = 0
    # lazy-walk pairs on every edge first, then random measures
    for g in graphs:
        for x, y in g.edges:
            mu, nu = lazy_walk_measure(g, x), lazy_walk_measure(g, y)
            res = w1(g, mu, nu)
            uncertified += bool(certify(g, mu, nu, res)) or res.duality_gap(mu, nu) != 0
            count += 1
    while count < 10_000:
        g = graphs[count % len(graphs)]
        mu = _random_measure(rng, g.n, rng.randint(1, min(5, g.n)))
        nu = _random_measure(rng, g.n, rng.randint(1, min(5, g.n)))
        res = w1(g, mu, nu)
        uncertified += bool(certify(g, mu, nu, res)) or res.duality_gap(mu, nu) != 0
        count += 1
    solved = transport.STATS["solved"] - start["solved"]
    gaps = transport.STATS["gap_failures"] - start["gap_failures"]
    elapsed = time.perf_counter() - t0
    ok = count >= 10_000 and solved >= count and uncertified == 0 and gaps == 0 and elapsed < 30
    record(
        "2",
        ok,
        f"instances={count} solved={solved} uncertified={uncertified} gap_failures={gaps} time={elapsed:.1f}s",
    )


# ---------------------------------------------------------------------------
# 3: neighbor minimization and tensorization


def test_criterion_3_minimization_and_tensorization():
    t0 = time.perf_counter()
    violations = 0
    pairs = 0
    for spec in ["hypercube:3", "cycle:8", "complete:2"]:
        g = generate(spec)
        everything = list(combinations(range(g.n), 2))
        violations += len(check_neighbor_minimization(g, everything))
        pairs += len(everything)
    k2 = generate("complete:2")
    tensor = []
    for r in range(1, 5):
        k_base, k_power, ok = check_tensorization(k2, r)
        tensor.append((r, k_power))
        violations += not ok
        power = generate(f"hypercube:{r}")
        everything = list(combinations(range(power.n), 2))
        violations += len(check_neighbor_minimization(power, everything))
        pairs += len(everything)
    for spec in ["cycle:8", "hypercube:3"]:
        violations += not check_tensorization(generate(spec), 2)[2]
    elapsed = time.perf_counter() - t0
    detail = f"pairs={pairs} violations={violations} K_2^r bounds={[(r, str(k)) for r, k in tensor]} time={elapsed:.1f}s"
    record("3", violations == 0 and elapsed < 60, detail)


# ---------------------------------------------------------------------------
# 4: shell growth


def test_criterion_4_shell_growth():
    t0 = time.perf_counter()
    specs = [f"hypercube:{d}" for d in range(1, 7)]
    specs += [f"torus:{n},2" for n in range(3, 7)]
    specs += [f"tree:{p},{depth}" for p in range(2, 5) for depth in range(2, 7)]
    bad = []
    bipartite_checked = 0
    for spec in specs:
        g = generate(spec)
        k = global_lower_bound(g).acceptance_bound()
        found, _ = shell_growth_violations(g, g.max_degree, k, False)
        if found:
            bad.append(spec)
        if g.is_bipartite:
            bipartite_checked += 1
            found, _ = shell_growth_violations(g, g.max_degree, k, True)
            if found:
                bad.append(spec + " bipartite")
    _, worst = shell_growth_violations(generate("tree:3,5"), 3, Fraction(-1, 3), True)
    elapsed = time.perf_counter() - t0
    ok = not bad and worst == 2 and elapsed < 120
    detail = f"graphs={len(specs)} bipartite={bipartite_checked} violations={bad} tree:3 ratio={worst} time={elapsed:.1f}s"
    record("4", ok, detail)


# ---------------------------------------------------------------------------
# 5: Hardy sandwich


def _synthetic_envelopes():
    out = []
    for T in range(1, 16):
        out.append((f"constant T={T}", mu_from_hout(constant_envelope(T + 3), Fraction(1, T + 2))))
    for c in (Fraction(3, 2), Fraction(2), Fraction(3)):
        for T in range(1, 9):
            h = (c - 1) / (c ** (T + 2) - 1)
            out.append((f"exp c={c} T={T}", mu_from_hout(sequence_envelope(lambda i, c=c: c**i, T + 3), h)))
    for b in (1, 2):
        for T in range(2, 9):
            h = Fraction(1, sum(1 + i**b for i in range(T + 2)))
            out.append((f"poly b={b} T={T}", mu_from_hout(sequence_envelope(lambda i, b=b: 1 + i**b, T + 3), h)))
    return out


def _empirical_envelopes():
    out = []
    for n in (8, 10, 12, 15):
        g = generate(f"cycle:{n}")
        out.append((f"C_{n}", empirical_envelope(shell_profile(g, {0, n // 2}), signed=True)))
    for d in (4, 5, 6, 7):
        g = generate(f"hypercube:{d}")
        sigma, plus = middle_slice(g)
        out.append((f"Q_{d}", empirical_envelope(shell_profile(g, sigma, plus), signed=True)))
    for n in (6, 8):
        g = generate(f"torus:{n},2")
        out.append((f"torus {n}", empirical_envelope(shell_profile(g, {0, n + 1}))))
    return out


def test_criterion_5_hardy_sandwich():
    t0 = time.perf_counter()
    checked = 0
    failures = []
    for name, env in _synthetic_envelopes() + _empirical_envelopes():
        for side in (1, -1):
            try:
                B = hardy_constant_B(env, side)
            except EmptyRange:
                continue
            R, vec = hardy_rayleigh_R(env, side, with_vector=True)
            nu, mu = env.side(side)
            T = len(mu) - 1
            oracle = hardy_R_dense(nu, mu, T)
            inside = 1 / (8 * float(B)) - SLACK <= R <= 1 / (2 * float(B)) + SLACK
            agrees = math.isclose(R, oracle, rel_tol=1e-9)
            if not (inside and agrees and minimizer_is_monotone(vec)):
                failures.append((name, side))
            checked += 1
    elapsed = time.perf_counter() - t0
    ok = checked >= 50 and not failures and elapsed < 60
    record("5", ok, f"envelope sides={checked} failures={failures} time={elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 6: bound domination


def _domination_cases():
    for d in range(4, 11):
        g = generate(f"hypercube:{d}")
        sigma, plus = middle_slice(g)
        yield g, sigma, plus
    for n in (8, 10, 12, 16, 20):
        g = generate(f"cycle:{n}")
        yield g, {0, n // 2}, None
    for n in (6, 8, 10, 12):
        g = generate(f"torus:{n},2")
        # two opposite columns: every shell has exactly |Sigma| vertices
        yield g, {v for v in range(g.n) if v % n in (0, n // 2)}, None


def test_criterion_6_bound_domination():
    t0 = time.perf_counter()
    failures = []
    rows = 0
    buser_applied = 0
    for g, sigma, plus in _domination_cases():
        profile = shell_profile(g, sigma, plus)
        env = empirical_envelope(profile, signed=True)
        spec = laplacian_spectrum(g)
        if not spec.method.startswith("closed-form"):
            failures.append((g.name, "spectrum not closed form"))
        section = bounds_section(env, spec, g.name)
        for row in section["checks"] + section["higher"] + section["one_sided"]:
            rows += 1
            if row["status"] == FAIL:
                failures.append((g.name, row.get("name", row)))
        if not section["higher"]:
            failures.append((g.name, "no higher-eigenvalue rows"))
        try:
            value = buser_constant_route(g, sigma, plus, profile)
        except (AlphaTooLarge, DominanceHypothesisFails):
            continue
        buser_applied += 1
        rows += 1
        if float(value) + SLACK < spec.lam(2):
            failures.append((g.name, "large-level-set"))
    elapsed = time.perf_counter() - t0
    ok = not failures and buser_applied >= 3 and elapsed < 120
    detail = f"rows={rows} explicit-route cases={buser_applied} violations={failures} time={elapsed:.1f}s"
    record("6", ok, detail)


# ---------------------------------------------------------------------------
# 7: constant-envelope bound


def _slice_h(d):
    m = d // 2
    return Fraction(math.comb(d, m), sum(math.comb(d, j) for j in range(m + 1, d + 1)))


def _slice_bound_holds(d):
    h = _slice_h(d)
    env = mu_from_hout(constant_envelope(int(1 / h) + 3), h)
    try:
        B = hardy_constant_B(env)
    except EmptyRange:
        # T = 0: the Hardy bound is vacuous
        return False, h, None
    return 1 / (2 * B) <= Fraction(27, 2) * h * h * Fraction(5, 4), h, B


def _binomial_dominance(d):
    shells = binomial_shells(d, d // 2)
    return max(shells.values()) == shells[0]


def test_criterion_7a_slice_large_d():
    t0 = time.perf_counter()
    # nu == 1 is certified on the materialized cubes and by binomials above
    certified = all(
        shell_profile(g, *middle_slice(g)).max_shell_is_sigma()
        for g in (generate(f"hypercube:{d}") for d in (8, 9, 10))
    )
    dims = [BUSER_SLICE_FROM, 200, 256, 333, 400, 512, 700]
    results = [(d, _binomial_dominance(d), *_slice_bound_holds(d)[:1]) for d in dims]
    elapsed = time.perf_counter() - t0
    ok = certified and all(dom and holds for _, dom, holds in results) and elapsed < 30
    record("7a", ok, f"d={dims} all hold={ok} time={elapsed:.1f}s (d < {BUSER_SLICE_FROM}: see 7a-small)")


@pytest.mark.xfail(strict=True, reason="T = 0 or too small on slices of small cubes; see the decisions ledger")
def test_criterion_7a_slice_small_d():
    dims = list(range(8, 17))
    held = {d: _slice_bound_holds(d)[0] for d in dims}
    broken = [d for d, ok in held.items() if not ok]
    ACCEPTANCE["7a-small"] = (
        f"criterion 7a-small: {'PASS' if not broken else 'FAIL'} | expected failure (xfail strict), "
        f"bound fails for d={broken}"
    )
    assert not broken


def test_criterion_7b_constant_envelope_B():
    t0 = time.perf_counter()
    worst = 0.0
    cases = 0
    for T in range(30, 81):
        for h in (Fraction(1, T + 2), Fraction(2, 2 * T + 3)):
            env = mu_from_hout(constant_envelope(T + 3), h)
            assert env.T == T
            dev = abs(float(27 * hardy_constant_B(env) * h * h) - 1)
            worst = max(worst, dev)
            cases += 1
    elapsed = time.perf_counter() - t0
    record("7b", worst <= 0.2 and elapsed < 30, f"cases={cases} T=30..80 max|27Bh^2-1|={worst:.4f} time={elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 8: example brackets


def _exp_bracket(c, T):
    lo = (T + T / (c ** (T + 1) - 1) - c / (c - 1)) / (c + 1)
    hi = T * c / (c * c - 1)
    return lo, hi


def _exp2_bracket(c, d, T):
    lo = (T + T * (d + 1 - c) / (c - 1 + d * (c**T - 1)) - c / (c - 1)) / (1 + d)
    hi = T * (Fraction(1, 1 + d) + Fraction(1, d) * c / (c * c - 1))
    return lo, hi


def test_criterion_8_example_brackets():
    t0 = time.perf_counter()
    misses = []
    cases = 0
    for c in (Fraction(3, 2), Fraction(2), Fraction(3)):
        for T in list(range(1, 21)) + [30, 50, 75, 100]:
            # both ends of the allowed h range
            for h in ((c - 1) / (c ** (T + 2) - 1), (c - 1) / (c ** (T + 1) - 1) * (1 - Fraction(1, 10**40))):
                env = mu_from_hout(sequence_envelope(lambda i, c=c: c**i, T + 3), h)
                lo, hi = _exp_bracket(c, T)
                cases += 1
                if env.T != T or not lo <= hardy_constant_B(env) <= hi:
                    misses.append(("exp", c, T))
            for d in (3, 4, 6):
                nu = lambda i, c=c, d=d: 1 if i == 0 else d * c ** (i - 1)
                top = 1 + d * (c ** (T + 1) - 1) / (c - 1)
                bottom = (1 + d * (c**T - 1) / (c - 1)) * (1 + Fraction(1, 10**40))
                for inv in (top, bottom):
                    env = mu_from_hout(sequence_envelope(nu, T + 3), 1 / inv)
                    lo, hi = _exp2_bracket(c, d, T)
                    cases += 1
                    if env.T != T or not lo <= hardy_constant_B(env) <= hi:
                        misses.append(("exp2", c, d, T))
    ratios = {}
    for b in (1, 2):
        for T in range(10, 201, 10):
            h = Fraction(1, sum(1 + i**b for i in range(T + 2)))
            env = mu_from_hout(sequence_envelope(lambda i, b=b: 1 + i**b, T + 3), h)
            r = float(hardy_constant_B(env)) / T
            ratios.setdefault(b, []).append(r)
            if env.T != T or not 0.25 <= r <= 1.0:
                misses.append(("poly", b, T))
    elapsed = time.perf_counter() - t0
    spread = {b: (round(min(v), 3), round(max(v), 3)) for b, v in ratios.items()}
    ok = not misses and elapsed < 30
    record("8", ok, f"exact cases={cases} misses={misses} B/T ranges={spread} time={elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 9: eigensolver oracles


def test_criterion_9_eigensolvers():
    t0 = time.perf_counter()
    worst_t = 0.0
    for m in (1, 2, 3, 5, 8, 13, 21, 50, 100, 150, 200):
        sys_ = tridiagonal_from_lists([4.0] * m, [-2.0] * (m - 1))
        got = tridiagonal_eigenvalues(sys_, m)
        want = [4 * (1 - math.cos(k * math.pi / (m + 1))) for k in range(1, m + 1)]
        worst_t = max(worst_t, max(abs(a - b) for a, b in zip(got, want)))
    worst_j = 0.0
    specs = [f"hypercube:{d}" for d in range(1, 9)] + [f"cycle:{n}" for n in (3, 4, 7, 16, 64, 128, 256)]
    specs += ["torus:16,2", "complete:12"]
    for spec in specs:
        g = generate(spec)
        dense = np.array(dense_spectrum(g).eigenvalues)
        closed = np.array(closed_form_spectrum(g.family).eigenvalues)
        worst_j = max(worst_j, float(np.max(np.abs(dense - closed))))
    elapsed = time.perf_counter() - t0
    ok = worst_t <= 1e-12 and worst_j <= 1e-9 and elapsed < 60
    record("9", ok, f"toeplitz max err={worst_t:.1e} jacobi max err={worst_j:.1e} time={elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 10: isoperimetry


def _small_graphs():
    specs = [f"cycle:{n}" for n in range(3, 11)]
    specs += [f"complete:{n}" for n in range(2, 7)]
    specs += ["hypercube:1", "hypercube:2", "hypercube:3", "tree:2,2", "tree:3,2", "torus:3,2"]
    graphs = [generate(s) for s in specs]
    rng = random.Random(7)
    for n in (5, 6, 7, 8, 9, 10):
        edges = {(i, i + 1) for i in range(n - 1)}
        for _ in range(n):
            u, v = rng.sample(range(n), 2)
            edges.add((min(u, v), max(u, v)))
        graphs.append(build_graph(sorted(edges), n, name=f"random:{n}"))
    return graphs


def test_criterion_10_isoperimetry():
    t0 = time.perf_counter()
    problems = []
    if cheeger_brute(generate("cycle:6"), "outer").value != Fraction(2, 3):
        problems.append("C_6")
    if cheeger_brute(generate("hypercube:2"), "outer").value != 1:
        problems.append("Q_2")
    graphs = _small_graphs()
    for g in graphs:
        h = cheeger_brute(g, "edge").value
        h_out = cheeger_brute(g, "outer").value
        if not h <= h_out <= g.max_degree * h:
            problems.append(("sandwich", g.name))
        if verify_h_monotonicity(g, min(3, g.n)):
            problems.append(("monotone", g.name))
    brackets = []
    for d in range(4, 13):
        value = cheeger_family(f"hypercube:{d}", cross_check=d <= 4).value
        scaled = math.sqrt(d) * float(value)
        brackets.append(round(scaled, 3))
        if not 0.3 <= scaled <= 3:
            problems.append(("bracket", d))
    elapsed = time.perf_counter() - t0
    ok = not problems and len(graphs) >= 20 and elapsed < 120
    record("10", ok, f"graphs={len(graphs)} problems={problems} sqrt(d)*h_out={brackets} time={elapsed:.1f}s")


# ---------------------------------------------------------------------------
# 11: determinism


def test_criterion_11_determinism():
    t0 = time.perf_counter()
    cmd = [sys.executable, "-m", "curvebound.cli", "verify", "gen:hypercube:4", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    elapsed = time.perf_counter() - t0
    same = first.stdout == second.stdout and first.stdout != b""
    ok = same and first.returncode == second.returncode == 0 and elapsed < 60
    record("11", ok, f"bytes={len(first.stdout)} identical={same} exit={first.returncode} time={elapsed:.1f}s")
