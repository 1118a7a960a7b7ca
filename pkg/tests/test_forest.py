import random
from fractions import Fraction

import pytest

from polycount import (
    BudgetError,
    Edge,
    Multigraph,
    SparsePolynomial,
    WeightAssignment,
    add_apex,
    apex_rhs,
    forest_poly_bruteforce,
    forest_poly_sp,
    forest_value_bruteforce,
    named_graph,
    pm_bruteforce,
    pm_coefficient_extract,
    stretch,
    stretched_edge_weight,
    tutte_y1,
)
from polycount.verify import (
    MULTIGRAPH_ZOO,
    RATIONAL_POOL,
    _apex_weights,
    random_simple_graph,
)

F = Fraction


def test_forest_poly_k3():
    result = forest_poly_bruteforce(named_graph("k3"), WeightAssignment.uniform(named_graph("k3"), "x"))
    assert result.poly == SparsePolynomial(("x",), {(0,): F(1), (1,): F(3), (2,): F(3)})
    assert result.forest_count == 7
    assert result.max_forest_size == 2


def test_forest_poly_single_edge():
    g = named_graph("k2")
    result = forest_poly_bruteforce(g)
    assert result.poly == SparsePolynomial(("w",), {(0,): F(1), (1,): F(1)})


def test_forest_poly_k4_count():
    assert forest_poly_bruteforce(named_graph("k4")).forest_count == 38


def test_forest_poly_constant_term_and_degree_bound():
    rng = random.Random(2)
    for _ in range(20):
        g = random_simple_graph(rng)
        res = forest_poly_bruteforce(g, WeightAssignment.uniform(g, "x"))
        assert res.poly.coefficient((0,) * len(res.poly.variables)) == 1
        assert res.max_forest_size <= g.n - g.component_count()


def test_forest_poly_guard():
    g = Multigraph(2, [Edge(0, 1, 23)])
    with pytest.raises(BudgetError):
        forest_poly_bruteforce(g)


def test_forest_sp_two_path():
    g = named_graph("p3")
    for w in (F(1), F(2), F(-1, 2), F(7, 3)):
        assert forest_poly_sp(g, {0: w, 1: w}) == 1 + 2 * w + w * w


def test_forest_sp_gadget_path_all_ones():
    # a path of 4 edges has no cycle: every subset is a forest
    g = Multigraph(5, [Edge(i, i + 1) for i in range(4)])
    assert forest_poly_sp(g, {i: F(1) for i in range(4)}) == 16


def test_forest_sp_tree_powers():
    star = Multigraph(4, [Edge(0, 1), Edge(0, 2), Edge(0, 3)])
    assert forest_poly_sp(star, {i: F(1) for i in range(3)}) == 8


def test_forest_sp_matches_enumeration_on_zoo():
    weights_pool = [F(1), F(-1, 2), F(2, 3), F(-2), F(1, 7)]
    rng = random.Random(4)
    for g in MULTIGRAPH_ZOO:
        for _ in range(3):
            weights = {i: rng.choice(weights_pool) for i in range(g.m)}
            assert forest_poly_sp(g, weights) == forest_value_bruteforce(g, weights)


def test_forest_sp_reduces_stretched_graphs():
    # far beyond the enumeration guard, but series-parallel collapsible
    g = stretch(named_graph("petersen"), 5)  # 75 edges
    value = forest_poly_sp(g, {i: F(1) for i in range(g.m)})
    m = named_graph("petersen").m
    inner = forest_value_bruteforce(
        named_graph("petersen"), {i: stretched_edge_weight(F(1), 5) for i in range(m)}
    )
    assert value == (F(2) ** 5 - 1) ** m * inner


def test_stretched_edge_weight():
    assert stretched_edge_weight(F(1), 3) == F(1, 7)
    assert stretched_edge_weight(F(-1, 2), 3) == F(-1, 2)
    with pytest.raises(ValueError):
        stretched_edge_weight(F(-1, 2), 2)


def test_tutte_bridge_examples():
    assert tutte_y1(named_graph("k2"), F(3)) == 3
    assert tutte_y1(named_graph("k3"), F(2)) == 7
    two_edges = Multigraph(4, [Edge(0, 1), Edge(2, 3)])
    assert tutte_y1(two_edges, F(2)) == 4
    with pytest.raises(ValueError):
        tutte_y1(named_graph("k3"), F(1))


def test_tutte_spanning_tree_adjacent_values():
    # at x = 2 the value is the forest count
    for name, forests in (("k3", 7), ("k4", 38), ("c4", 15)):
        assert tutte_y1(named_graph(name), F(2)) == forests


def test_apex_rhs_examples():
    k2 = named_graph("k2")
    for w in (F(2), F(-1), F(1, 3)):
        assert apex_rhs(k2, w, [F(-1), F(-1)]) == -w
    g = named_graph("k3")
    assert apex_rhs(g, F(5), [F(0)] * 3) == forest_value_bruteforce(g, {i: F(5) for i in range(3)})
    empty2 = Multigraph(2, [])
    z0, z1 = F(2), F(-3)
    assert apex_rhs(empty2, F(1), [z0, z1]) == (1 + z0) * (1 + z1)


def test_apex_identity_random():
    rng = random.Random(11)
    for _ in range(30):
        g = random_simple_graph(rng)
        wval = rng.choice([v for v in RATIONAL_POOL if v != 0])
        zvals = [rng.choice(RATIONAL_POOL) for _ in range(g.n)]
        gp, _ = add_apex(g)
        lhs = forest_value_bruteforce(gp, _apex_weights(g, wval, zvals))
        assert lhs == apex_rhs(g, wval, zvals)


def _apex_poly_at_z_minus_one(g):
    gp, _ = add_apex(g, collapse_z=True)
    poly = forest_poly_bruteforce(gp).poly
    return poly.substitute("z", F(-1))


def test_pm_extraction_examples():
    k2 = named_graph("k2")
    poly = _apex_poly_at_z_minus_one(k2)
    assert poly == SparsePolynomial(("w",), {(1,): F(-1)})
    assert pm_coefficient_extract(poly, 2) == (1, False)

    c4 = named_graph("c4")
    assert pm_coefficient_extract(_apex_poly_at_z_minus_one(c4), 4) == (2, False)

    k3 = named_graph("k3")
    assert pm_coefficient_extract(_apex_poly_at_z_minus_one(k3), 3) == (0, True)


def test_pm_extraction_random_graphs():
    rng = random.Random(23)
    for _ in range(20):
        g = random_simple_graph(rng, 2, 8, 12)
        count, odd = pm_coefficient_extract(_apex_poly_at_z_minus_one(g), g.n)
        if g.n % 2:
            assert (count, odd) == (0, True)
        else:
            assert not odd and count == pm_bruteforce(g)


def test_isolated_vertex_terms_vanish():
    # the star on 4 vertices has 2-edge forests but no perfect matching,
    # so the w^2 coefficient must cancel to zero
    star = Multigraph(4, [Edge(0, 1), Edge(0, 2), Edge(0, 3)])
    poly = _apex_poly_at_z_minus_one(star)
    assert poly.coefficient((2,)) == 0


def test_stretch_identity_invariant():
    rng = random.Random(31)
    for g in MULTIGRAPH_ZOO[:8]:
        m = g.total_mult
        for k in (2, 3, 4, 5):
            w = rng.choice([F(1), F(2), F(-2), F(1, 3)])
            denom = (w + 1) ** k - w**k
            if denom == 0:
                continue
            stretched = stretch(g, k)
            if stretched.total_mult <= 20:
                lhs = forest_value_bruteforce(stretched, {i: w for i in range(stretched.m)})
            else:
                lhs = forest_poly_sp(stretched, {i: w for i in range(stretched.m)})
            rhs = denom**m * forest_value_bruteforce(
                g, {i: stretched_edge_weight(w, k) for i in range(g.m)}
            )
            assert lhs == rhs
