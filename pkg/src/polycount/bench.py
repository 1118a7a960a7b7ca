"""Benchmark the compiled kernels against the pure-Python fallback.

The enumeration kernels dominate the runtime of every verification suite, so
this is the comparison that justifies shipping the extension.  Run as
`polycount bench`.
"""

from __future__ import annotations

import random
import time
from typing import Callable

from .graphs import Edge, Multigraph, named_graph, partition_edges, substitute_gadget, add_apex
from .kernels import _pure

try:
    from .kernels import _fast
except ImportError:
    _fast = None


def _random_graph(seed: int, n: int, m: int) -> Multigraph:
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    return Multigraph(n, [Edge(u, v) for u, v in sorted(pairs[:m])], simple=True)


def _cases() -> list[tuple[str, Callable[[object], object]]]:
    g22 = _random_graph(7, 22, 40)
    adj22 = g22.adjacency_masks()
    gadget = substitute_gadget(named_graph("k3"), partition_edges(named_graph("k3"), 1), (2, 2, 2))
    adj_gadget = gadget.adjacency_masks()
    k12 = Multigraph(12, [Edge(u, v) for u in range(12) for v in range(u + 1, 12)], simple=True)
    adj_k12 = k12.adjacency_masks()
    apexed, _ = add_apex(named_graph("k33"), collapse_z=True)
    copies = [(e.u, e.v, 0 if e.label == "w" else 1) for e in apexed.edges]
    caps = [sum(1 for *_, l in copies if l == 0), sum(1 for *_, l in copies if l == 1)]
    rng = random.Random(11)
    n_vars = 18
    relmasks, arities, scopes = [], [], []
    for _ in range(12):
        scope = rng.sample(range(n_vars), 3)
        relmasks.append(rng.randrange(1, 256))
        arities.append(3)
        scopes.append(scope)

    return [
        (
            f"vertex covers, n={g22.n} m={g22.m}",
            lambda k: k.count_vertex_covers(g22.n, adj22),
        ),
        (
            f"independent sets, gadget n={gadget.n}",
            lambda k: k.count_independent_sets(gadget.n, adj_gadget),
        ),
        (
            "perfect matchings, complete n=12",
            lambda k: k.count_perfect_matchings(12, adj_k12),
        ),
        (
            f"forest profile, apexed bipartite n={apexed.n} m={apexed.m}",
            lambda k: k.forest_label_profile(
                apexed.n,
                [u for u, _, _ in copies],
                [v for _, v, _ in copies],
                [l for *_, l in copies],
                2,
                caps,
            ),
        ),
        (
            f"constraint models, n={n_vars} cons={len(relmasks)}",
            lambda k: k.count_csp_models(n_vars, relmasks, arities, scopes),
        ),
    ]


def _time_ms(fn: Callable[[], object], repeat: int) -> tuple[int, object]:
    best = None
    result = None
    for _ in range(repeat):
        start = time.monotonic()
        result = fn()
        elapsed = time.monotonic() - start
        best = elapsed if best is None else min(best, elapsed)
    return max(1, int(best * 1000)), result


def run_benchmarks(repeat: int = 3) -> None:
    print(f"{'case':<45} {'pure ms':>8} {'fast ms':>8} {'speedup':>8}")
    for name, runner in _cases():
        pure_ms, pure_val = _time_ms(lambda: runner(_pure), repeat)
        if _fast is None:
            print(f"{name:<45} {pure_ms:>8} {'n/a':>8} {'n/a':>8}")
            continue
        fast_ms, fast_val = _time_ms(lambda: runner(_fast), repeat)
        if pure_val != fast_val:
            raise AssertionError(f"backend disagreement on {name!r}: {pure_val} != {fast_val}")
        print(f"{name:<45} {pure_ms:>8} {fast_ms:>8} {'~' + str(pure_ms // fast_ms) + 'x':>8}")


if __name__ == "__main__":
    run_benchmarks()
