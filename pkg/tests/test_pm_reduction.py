from fractions import Fraction

import pytest

from polycount import (
    Edge,
    Multigraph,
    PmReductionParams,
    add_apex,
    block_interpolation,
    count_pm,
    forest_poly_bruteforce,
    forest_value_bruteforce,
    named_graph,
    pm_bruteforce,
    simulate_oracle_via_stretch,
)
from polycount.errors import BudgetError
from polycount.forest import bruteforce_simple_oracle, sp_simple_oracle
from polycount.pm_reduction import (
    multigraph_from_multiplicities,
    stretch_backed_oracle,
)
from polycount.transcripts import OracleTranscript

F = Fraction


def test_params_validation():
    with pytest.raises(ValueError):
        PmReductionParams(C=0)
    with pytest.raises(ValueError):
        PmReductionParams(C=2, x=F(1))
    with pytest.raises(ValueError):
        PmReductionParams(C=2, k=2)
    p = PmReductionParams(C=2, x=F(2))
    assert p.t == 1 and p.z0 == F(1, 7)
    p = PmReductionParams(C=2, x=F(-1))
    assert p.t == F(-1, 2) and p.z0 == F(-1, 2)


def test_simulate_oracle_examples():
    params = PmReductionParams(C=2, x=F(3))  # t = 1/2
    z0 = params.z0
    oracle = sp_simple_oracle(params.t)

    double = Multigraph(2, [Edge(0, 1, 2)])
    assert simulate_oracle_via_stretch(double, params, oracle) == 1 + 2 * z0

    empty = Multigraph(3, [])
    assert simulate_oracle_via_stretch(empty, params, oracle) == 1

    single = named_graph("k2")
    assert simulate_oracle_via_stretch(single, params, oracle) == 1 + z0


def test_simulate_oracle_matches_bruteforce_on_stretched_graph():
    params = PmReductionParams(C=2, x=F(2))
    h = Multigraph(3, [Edge(0, 1, 2), Edge(1, 2)])
    got = simulate_oracle_via_stretch(h, params, sp_simple_oracle(params.t))
    # every parallel copy carries weight z0, so a bundle of 2 acts like 2*z0
    want = forest_value_bruteforce(h, {0: params.z0, 1: params.z0})
    assert got == want == 1 + 3 * params.z0 + 2 * params.z0**2


def test_block_interpolation_recovers_bivariate():
    for name in ("k2", "p3", "k3"):
        g = named_graph(name)
        gp, _ = add_apex(g, collapse_z=True)
        truth = forest_poly_bruteforce(gp).poly
        for C in (2, gp.m):
            params = PmReductionParams(C=C, x=F(2))
            transcript = OracleTranscript()
            got = block_interpolation(gp, params, stretch_backed_oracle(gp, params), transcript)
            assert got == truth
            n_classes = -(-g.m // C) + -(-g.n // C)
            assert len(transcript) == (C + 1) ** n_classes


def test_block_interpolation_no_z_edges():
    g = named_graph("k3")  # all edges labeled w, no apex
    params = PmReductionParams(C=2, x=F(2))
    poly = block_interpolation(g, params, stretch_backed_oracle(g, params))
    assert poly.variables == ("w", "z")
    assert poly.degree("z") == 0
    truth = forest_poly_bruteforce(g).poly  # univariate in w
    assert {e[0]: c for e, c in poly.terms.items()} == {e[0]: c for e, c in truth.terms.items()}


def test_block_interpolation_rejects_other_labels():
    g = Multigraph(2, [Edge(0, 1, 1, "q")])
    params = PmReductionParams(C=1, x=F(2))
    with pytest.raises(ValueError):
        block_interpolation(g, params, stretch_backed_oracle(g, params))


def test_oracle_independence():
    # two different correct simple-graph evaluators give identical polynomials
    for name, C in (("k2", 2), ("p3", 1)):
        g = named_graph(name)
        gp, _ = add_apex(g, collapse_z=True)
        params = PmReductionParams(C=C, x=F(2))
        via_sp = block_interpolation(gp, params, stretch_backed_oracle(gp, params))
        via_brute = block_interpolation(
            gp, params, stretch_backed_oracle(gp, params, bruteforce_simple_oracle(params.t))
        )
        assert via_sp == via_brute


def test_count_pm_examples():
    for name, expected in (("c4", 2), ("k4", 3), ("p4", 1)):
        g = named_graph(name)
        result = count_pm(g, PmReductionParams(C=2, x=F(2)))
        assert result.count == expected == pm_bruteforce(g)
        assert not result.odd_warning


def test_count_pm_odd_graph():
    result = count_pm(named_graph("k3"), PmReductionParams(C=2, x=F(2)))
    assert result.count == 0 and result.odd_warning
    assert result.query_count == 0


def test_count_pm_query_accounting():
    g = named_graph("c4")
    result = count_pm(g, PmReductionParams(C=2, x=F(2)))
    # 2 w-classes and 2 z-classes of size <= 2, grid base 3
    assert result.query_count == 3**4 == len(result.transcript)


def test_count_pm_across_points_and_class_sizes():
    graphs = [
        named_graph("k2"),
        named_graph("p4"),
        named_graph("c4"),
        Multigraph(6, [Edge(i, (i + 1) % 6) for i in range(6)]),  # C6
    ]
    for g in graphs:
        truth = pm_bruteforce(g)
        for C in (2, max(g.m, 1)):
            for x in (F(2), F(3), F(-1)):
                result = count_pm(g, PmReductionParams(C=C, x=x))
                assert result.count == truth, (g, C, x)


def test_count_pm_disconnected_even_graph():
    g = Multigraph(4, [Edge(0, 1), Edge(2, 3)])
    assert count_pm(g, PmReductionParams(C=2, x=F(2))).count == 1 == pm_bruteforce(g)
    lonely = Multigraph(4, [Edge(0, 1)])  # isolated vertices: no matching
    assert count_pm(lonely, PmReductionParams(C=2, x=F(2))).count == 0 == pm_bruteforce(lonely)


def test_count_pm_query_budget():
    g = named_graph("petersen")
    with pytest.raises(BudgetError):
        count_pm(g, PmReductionParams(C=1, x=F(2)), query_budget=100)


def test_transcript_replay():
    g = named_graph("c4")
    params = PmReductionParams(C=2, x=F(2))
    result = count_pm(g, params)
    gp, _ = add_apex(g, collapse_z=True)
    oracle = stretch_backed_oracle(gp, params)

    def rerun(query):
        mults = {int(k): v for k, v in query["multiplicities"].items()}
        full = {i: mults.get(i, 0) for i in range(gp.m)}
        return oracle(full)

    assert result.transcript.replay(rerun) == []


def test_transcript_jsonl(tmp_path):
    g = named_graph("k2")
    result = count_pm(g, PmReductionParams(C=1, x=F(2)))
    path = tmp_path / "queries.jsonl"
    result.transcript.write_jsonl(str(path))
    lines = path.read_text().strip().splitlines()
    assert len(lines) == result.query_count
    import json

    first = json.loads(lines[0])
    assert {"index", "purpose", "query", "answer", "derived"} <= set(first)


def test_oracle_failure_attached_to_transcript():
    gp, _ = add_apex(named_graph("k2"), collapse_z=True)
    params = PmReductionParams(C=1, x=F(2))
    transcript = OracleTranscript()
    calls = []

    def flaky(wprime):
        calls.append(dict(wprime))
        if len(calls) == 3:
            raise RuntimeError("synthetic oracle failure")
        return F(1)

    with pytest.raises(RuntimeError):
        block_interpolation(gp, params, flaky, transcript)
    assert len(transcript) == 3
    assert transcript.entries[-1].answer.startswith("error:")


def test_multigraph_from_multiplicities_drops_zeros():
    g = named_graph("k3")
    h = multigraph_from_multiplicities(g, {0: 2, 1: 0, 2: 1})
    assert h.m == 2 and h.total_mult == 3
