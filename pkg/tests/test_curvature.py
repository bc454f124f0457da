import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvebound.curvature import (
    CurvatureGrowth,
    check_neighbor_minimization,
    check_tensorization,
    contaminated_edges,
    global_lower_bound,
    growth_ratio,
    kappa,
    nu_from_curvature,
    paeng_radius_violations,
    paeng_shell_bound,
    shell_growth_violations,
    tree_product_shell_probe,
)
from curvebound.errors import ParameterOutOfRange, PowerTooLarge, SameVertex
from curvebound.graph import generate

from oracles import distance_table, lazy_measure, w1_ssp


def test_k2():
    g = generate("complete:2")
    assert kappa(g, 0, 1) == 1


def test_hypercube_values():
    assert set(global_lower_bound(generate("hypercube:2")).kappa.values()) == {Fraction(1, 2)}
    # Q_d edges have curvature 1/d with holding probability 1/2
    for d in range(2, 6):
        assert global_lower_bound(generate(f"hypercube:{d}")).k == Fraction(1, d)


def test_complete_graph():
    assert global_lower_bound(generate("complete:4")).k == Fraction(2, 3)


def test_cycles_flat():
    for n in range(6, 13):
        rep = global_lower_bound(generate(f"cycle:{n}"))
        assert set(rep.kappa.values()) == {Fraction(0)}


def test_kappa_matches_oracle():
    g = generate("tree:3,3")
    dist = distance_table(g)
    for x, y in [(0, 1), (0, 5), (2, 9), (4, 7)]:
        expected = 1 - w1_ssp(dist, lazy_measure(g, x), lazy_measure(g, y)) / dist[x][y]
        assert kappa(g, x, y) == expected


def test_same_vertex():
    with pytest.raises(SameVertex):
        kappa(generate("cycle:5"), 2, 2)


def test_tree_interior():
    g = generate("tree:3,5")
    rep = global_lower_bound(g)
    assert rep.interior_edges
    assert {rep.kappa[e] for e in rep.interior_edges} == {Fraction(-1, 3)}
    assert rep.k_interior == Fraction(-1, 3)
    assert rep.acceptance_bound() == Fraction(-1, 3)


def test_contamination_only_on_trees():
    assert contaminated_edges(generate("cycle:6")) == frozenset()
    dirty = contaminated_edges(generate("tree:2,2"))
    assert dirty == frozenset(generate("tree:2,2").edges)


def test_laziness_changes_curvature():
    g = generate("complete:3")
    assert kappa(g, 0, 1, Fraction(0)) != kappa(g, 0, 1, Fraction(1, 2))


def test_parallel_sweep_matches_serial():
    g = generate("torus:5,2")
    assert global_lower_bound(g, workers=2).kappa == global_lower_bound(g).kappa


def test_neighbor_minimization_exhaustive():
    g = generate("hypercube:3")
    pairs = list(combinations(range(g.n), 2))
    assert check_neighbor_minimization(g, pairs) == []


def test_neighbor_minimization_flags_low_k():
    g = generate("cycle:6")
    # a claimed bound above the true minimum must produce violations
    assert check_neighbor_minimization(g, [(0, 1)], k=Fraction(1, 10))


def test_tensorization():
    k2 = generate("complete:2")
    for r in range(1, 5):
        kb, kp, ok = check_tensorization(k2, r)
        assert ok
        assert kp == Fraction(1, r)
    with pytest.raises(PowerTooLarge):
        check_tensorization(generate("cycle:200"), 2)


def test_paeng_bound():
    assert paeng_shell_bound(3, Fraction(0), 4) == 81
    assert paeng_shell_bound(4, Fraction(1, 2), 3) == 64 * Fraction(3, 4) * Fraction(1, 2)
    assert paeng_shell_bound(4, Fraction(1), 3) == 0
    with pytest.raises(ParameterOutOfRange):
        paeng_shell_bound(3, Fraction(0), -1)


def test_paeng_radius_on_hypercube():
    g = generate("hypercube:4")
    assert paeng_radius_violations(g, Fraction(1, 4)) == []


def test_growth_ratio_values():
    assert growth_ratio(3, Fraction(-1, 3), False) == 3
    assert growth_ratio(3, Fraction(-1, 3), True) == 2
    env = nu_from_curvature(3, Fraction(-1, 3), True)
    assert [env.nu(i) for i in range(4)] == [1, 3, 6, 12]
    assert isinstance(env, CurvatureGrowth)
    with pytest.raises(ParameterOutOfRange):
        nu_from_curvature(1, Fraction(0), False)


def test_growth_envelope_clamps():
    env = nu_from_curvature(4, Fraction(1), False)
    assert env.ratio == 0
    assert env.nu(2) == 0


def test_shell_growth_zero_violations():
    for spec in ["hypercube:4", "torus:5,2", "tree:3,4"]:
        g = generate(spec)
        k = global_lower_bound(g).acceptance_bound()
        bad, worst = shell_growth_violations(g, g.max_degree, k, False)
        assert bad == []


def test_tree_ratio_attained():
    g = generate("tree:3,5")
    bad, worst = shell_growth_violations(g, 3, Fraction(-1, 3), True)
    assert bad == []
    assert worst == 2


def test_star_is_excluded_case():
    # depth-1 trees break the growth bound; see the decisions ledger
    g = generate("tree:3,1")
    k = global_lower_bound(g).k
    bad, _ = shell_growth_violations(g, 3, k, False)
    assert bad


def test_tree_product_probe():
    rows = tree_product_shell_probe(3, 2, 3)
    assert [r["observed"] for r in rows] == [6, 21, 60]
    for r in rows:
        assert r["binom_q"] == math.comb(r["i"] + 1, 2)
        assert r["binom_q_minus_1"] == math.comb(r["i"] + 1, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 12), st.integers(0, 11), st.integers(1, 11))
def test_cycle_pairs_not_below_edge_min(n, x, y):
    g = generate(f"cycle:{n}")
    x, y = x % n, y % n
    if x == y:
        return
    assert kappa(g, x, y) >= global_lower_bound(g).k
