"""Pure-Python enumeration kernels.

Same API as the compiled module; used when the extension is unavailable or
when POLYCOUNT_PURE is set.  Semantics are deliberately plain subset
enumeration so the results are obviously correct.
"""

from __future__ import annotations

from typing import Sequence

BACKEND = "pure"

_MAX_BITS = 30


def _check_size(n: int) -> None:
    if n < 0 or n > _MAX_BITS:
        raise ValueError(f"kernel supports 0..{_MAX_BITS} items, got {n}")


def count_vertex_covers(n: int, adj: Sequence[int], required: int = 0, forbidden: int = 0) -> int:
    """Count S with required ⊆ S, S ∩ forbidden = ∅, S meeting every edge.

    adj[v] is the neighbor bitmask of v; S covers all edges iff no vertex
    outside S has a neighbor outside S.
    """
    _check_size(n)
    full = (1 << n) - 1
    count = 0
    for s in range(1 << n):
        if s & required != required or s & forbidden:
            continue
        comp = full & ~s
        rest = comp
        ok = True
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if adj[v] & comp:
                ok = False
                break
        if ok:
            count += 1
    return count


def count_independent_sets(n: int, adj: Sequence[int]) -> int:
    """Count S such that no edge has both endpoints in S."""
    _check_size(n)
    count = 0
    for s in range(1 << n):
        rest = s
        ok = True
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if adj[v] & s:
                ok = False
                break
        if ok:
            count += 1
    return count


def count_perfect_matchings(n: int, adj: Sequence[int]) -> int:
    """Count perfect matchings by always matching the lowest unmatched vertex."""
    _check_size(n)
    if n == 0:
        return 1
    if n % 2 == 1:
        return 0
    full = (1 << n) - 1

    def rec(matched: int) -> int:
        if matched == full:
            return 1
        v = ((~matched) & -(~matched)).bit_length() - 1
        total = 0
        cand = adj[v] & ~matched
        while cand:
            u = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            total += rec(matched | (1 << v) | (1 << u))
        return total

    return rec(0)


def forest_label_profile(
    n: int,
    edges_u: Sequence[int],
    edges_v: Sequence[int],
    labels: Sequence[int],
    n_labels: int,
    caps: Sequence[int],
) -> dict[tuple[int, ...], int]:
    """Count acyclic edge subsets, bucketed by per-label usage counts.

    Enumerates subsets of the m given edges (parallel copies must already be
    expanded into separate entries) by a prefix recursion that prunes as soon
    as an edge would close a cycle; since every superset of a cyclic set is
    cyclic, exactly the acyclic subsets survive.  Returns a map from label
    exponent vector to the number of forests with that usage.
    """
    m = len(edges_u)
    if not (len(edges_v) == len(labels) == m):
        raise ValueError("edge arrays must have equal length")
    if any(not 0 <= l < n_labels for l in labels):
        raise ValueError("label index out of range")
    strides = [0] * n_labels
    size = 1
    for l in range(n_labels):
        strides[l] = size
        size *= caps[l] + 1
    if size > 1 << 24:
        raise ValueError(f"profile table would need {size} cells; refusing")
    table = [0] * size
    parent = list(range(n))
    rank = [0] * n

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i: int, idx: int) -> None:
        if i == m:
            table[idx] += 1
            return
        rec(i + 1, idx)
        ru, rv = find(edges_u[i]), find(edges_v[i])
        if ru == rv:
            return
        if rank[ru] < rank[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        bumped = rank[ru] == rank[rv]
        if bumped:
            rank[ru] += 1
        rec(i + 1, idx + strides[labels[i]])
        parent[rv] = rv
        if bumped:
            rank[ru] -= 1

    rec(0, 0)
    out = {}
    for idx, cnt in enumerate(table):
        if cnt == 0:
            continue
        exps = []
        rem = idx
        for l in range(n_labels):
            rem, e = divmod(rem, caps[l] + 1)
            exps.append(e)
        out[tuple(exps)] = cnt
    return out


def count_csp_models(
    n_vars: int,
    relmasks: Sequence[int],
    arities: Sequence[int],
    scopes: Sequence[Sequence[int]],
) -> int:
    """Count assignments satisfying every constraint.

    relmasks[c] has bit t set iff the arity-k tuple encoded with scope[0] as
    the most significant bit is allowed.
    """
    _check_size(n_vars)
    count = 0
    ncons = len(relmasks)
    for a in range(1 << n_vars):
        ok = True
        for c in range(ncons):
            idx = 0
            for var in scopes[c]:
                idx = (idx << 1) | ((a >> var) & 1)
            if not (relmasks[c] >> idx) & 1:
                ok = False
                break
        if ok:
            count += 1
    return count
