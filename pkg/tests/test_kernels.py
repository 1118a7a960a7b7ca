"""Backend agreement: the compiled kernels must match the pure lane exactly."""

import random

import pytest

from polycount import kernels
from polycount.kernels import _pure

try:
    from polycount.kernels import _fast
except ImportError:
    _fast = None

needs_fast = pytest.mark.skipif(_fast is None, reason="compiled kernels not built")

BACKENDS = [_pure] if _fast is None else [_pure, _fast]


def random_adj(rng, n, p=0.4):
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return adj


def test_active_backend_exposed():
    assert kernels.BACKEND in ("pure", "fast")


@needs_fast
def test_vertex_cover_agreement():
    rng = random.Random(1)
    for _ in range(10):
        n = rng.randint(0, 12)
        adj = random_adj(rng, n)
        req = rng.getrandbits(n) if n else 0
        forb = rng.getrandbits(n) & ~req if n else 0
        assert _pure.count_vertex_covers(n, adj, req, forb) == _fast.count_vertex_covers(
            n, adj, req, forb
        )


@needs_fast
def test_independent_set_agreement():
    rng = random.Random(2)
    for _ in range(10):
        n = rng.randint(0, 14)
        adj = random_adj(rng, n)
        assert _pure.count_independent_sets(n, adj) == _fast.count_independent_sets(n, adj)


@needs_fast
def test_perfect_matching_agreement():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(0, 10)
        adj = random_adj(rng, n, 0.6)
        assert _pure.count_perfect_matchings(n, adj) == _fast.count_perfect_matchings(n, adj)


@needs_fast
def test_forest_profile_agreement():
    rng = random.Random(4)
    for _ in range(10):
        n = rng.randint(2, 6)
        m = rng.randint(0, 10)
        eu, ev, labels = [], [], []
        n_labels = rng.randint(1, 3)
        for _ in range(m):
            u, v = rng.sample(range(n), 2)
            eu.append(u)
            ev.append(v)
            labels.append(rng.randrange(n_labels))
        caps = [max(1, labels.count(l)) for l in range(n_labels)]
        assert _pure.forest_label_profile(n, eu, ev, labels, n_labels, caps) == (
            _fast.forest_label_profile(n, eu, ev, labels, n_labels, caps)
        )


@needs_fast
def test_csp_agreement():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(1, 12)
        cons = []
        for _ in range(rng.randint(0, 5)):
            k = rng.randint(1, min(3, n))
            cons.append((rng.randrange(1 << (1 << k)), k, rng.sample(range(n), k)))
        relmasks = [c[0] for c in cons]
        arities = [c[1] for c in cons]
        scopes = [c[2] for c in cons]
        assert _pure.count_csp_models(n, relmasks, arities, scopes) == _fast.count_csp_models(
            n, relmasks, arities, scopes
        )


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda b: b.BACKEND)
def test_edge_cases(impl):
    assert impl.count_vertex_covers(0, []) == 1
    assert impl.count_independent_sets(0, []) == 1
    assert impl.count_perfect_matchings(0, []) == 1
    assert impl.count_perfect_matchings(3, [0, 0, 0]) == 0
    assert impl.forest_label_profile(3, [], [], [], 1, [0]) == {(0,): 1}
    assert impl.count_csp_models(2, [], [], []) == 4
    # a vertex pair with no edges: every subset is everything
    assert impl.count_vertex_covers(2, [0, 0]) == 4
    assert impl.count_independent_sets(2, [0, 0]) == 4


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda b: b.BACKEND)
def test_size_guard(impl):
    with pytest.raises(ValueError):
        impl.count_independent_sets(31, [0] * 31)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda b: b.BACKEND)
def test_known_counts(impl):
    # triangle: adj masks
    adj = [0b110, 0b101, 0b011]
    assert impl.count_independent_sets(3, adj) == 4
    assert impl.count_vertex_covers(3, adj) == 4
    assert impl.count_perfect_matchings(3, adj) == 0
    profile = impl.forest_label_profile(3, [0, 1, 0], [1, 2, 2], [0, 0, 0], 1, [3])
    assert profile == {(0,): 1, (1,): 3, (2,): 3}
