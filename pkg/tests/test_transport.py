from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvebound.errors import MassMismatch, ParameterOutOfRange
from curvebound.graph import generate
from curvebound.transport import STATS, certify, lazy_walk_measure, w1

from oracles import distance_table, lazy_measure, w1_basic_plans, w1_ssp

GRAPHS = {s: generate(s) for s in ["cycle:7", "hypercube:3", "torus:3,2", "tree:3,2", "complete:4"]}
TABLES = {s: distance_table(g) for s, g in GRAPHS.items()}


def test_lazy_walk_measure():
    g = generate("cycle:6")
    m = lazy_walk_measure(g, 0)
    assert m == {0: Fraction(1, 2), 1: Fraction(1, 4), 5: Fraction(1, 4)}
    assert sum(m.values()) == 1
    # zero laziness drops the base point
    assert 0 not in lazy_walk_measure(g, 0, 0)
    with pytest.raises(ParameterOutOfRange):
        lazy_walk_measure(g, 0, 1)


def test_cycle_neighbors_cost_one():
    g = generate("cycle:6")
    res = w1(g, lazy_walk_measure(g, 0), lazy_walk_measure(g, 1))
    assert res.cost == 1
    assert certify(g, lazy_walk_measure(g, 0), lazy_walk_measure(g, 1), res) == []


def test_identical_measures():
    g = generate("hypercube:2")
    m = lazy_walk_measure(g, 0)
    res = w1(g, m, m)
    assert res.cost == 0
    assert all(x == y for x, y in res.plan)


def test_point_masses_give_distance():
    g = generate("torus:4,2")
    for y in range(g.n):
        assert w1(g, {0: Fraction(1)}, {y: Fraction(1)}).cost == g.distance(0, y)


def test_mass_errors():
    g = generate("cycle:5")
    with pytest.raises(MassMismatch):
        w1(g, {0: Fraction(1)}, {1: Fraction(1, 2)})
    with pytest.raises(MassMismatch):
        w1(g, {0: Fraction(0), 1: Fraction(1)}, {1: Fraction(1)})
    with pytest.raises(ParameterOutOfRange):
        w1(g, {9: Fraction(1)}, {1: Fraction(1)})


def test_stats_count_every_solve():
    g = generate("cycle:5")
    before = STATS["solved"]
    for y in range(1, 5):
        w1(g, lazy_walk_measure(g, 0), lazy_walk_measure(g, y))
    assert STATS["solved"] == before + 4
    assert STATS["gap_failures"] == 0


def test_lazy_pairs_match_oracle():
    for spec, g in GRAPHS.items():
        dist = TABLES[spec]
        for x, y in g.edges:
            mu, nu = lazy_measure(g, x), lazy_measure(g, y)
            assert w1(g, mu, nu).cost == w1_ssp(dist, mu, nu)


@st.composite
def instances(draw, max_support=4):
    spec = draw(st.sampled_from(sorted(GRAPHS)))
    g = GRAPHS[spec]

    def measure():
        verts = draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=max_support, unique=True))
        weights = draw(st.lists(st.integers(1, 7), min_size=len(verts), max_size=len(verts)))
        total = sum(weights)
        return {v: Fraction(w, total) for v, w in zip(verts, weights)}

    return spec, measure(), measure()


@settings(max_examples=200, deadline=None)
@given(instances())
def test_random_instances_against_ssp(inst):
    spec, mu, nu = inst
    g = GRAPHS[spec]
    res = w1(g, mu, nu)
    assert res.cost == w1_ssp(TABLES[spec], mu, nu)
    assert certify(g, mu, nu, res) == []


@settings(max_examples=100, deadline=None)
@given(instances(max_support=3))
def test_random_instances_against_basic_plans(inst):
    spec, mu, nu = inst
    g = GRAPHS[spec]
    assert w1(g, mu, nu).cost == w1_basic_plans(TABLES[spec], mu, nu)


@settings(max_examples=60, deadline=None)
@given(instances(), instances())
def test_triangle_inequality(a, b):
    spec, mu, nu = a
    _, _, rho = b
    g = GRAPHS[spec]
    merged = {}
    for v, m in rho.items():
        merged[v % g.n] = merged.get(v % g.n, Fraction(0)) + m
    assert w1(g, mu, merged).cost <= w1(g, mu, nu).cost + w1(g, nu, merged).cost


def test_certify_detects_tampering():
    g = generate("cycle:6")
    mu, nu = lazy_walk_measure(g, 0), lazy_walk_measure(g, 2)
    res = w1(g, mu, nu)
    bad_potential = dict(res.potential)
    key = next(iter(bad_potential))
    bad_potential[key] += 5
    tampered = type(res)(res.cost, res.plan, bad_potential)
    assert certify(g, mu, nu, tampered)
    cheaper = type(res)(res.cost - Fraction(1, 8), res.plan, res.potential)
    assert any("cost" in p for p in certify(g, mu, nu, cheaper))
