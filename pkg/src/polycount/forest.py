"""Forest generating functions: brute-force polynomials, a series-parallel
evaluator for large-but-reducible graphs, the Tutte slice at y = 1, and the
apex machinery that encodes perfect matchings into coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from . import kernels
from .errors import BudgetError
from .graphs import Edge, Multigraph, WeightAssignment
from .polynomials import Rat, SparsePolynomial

ENUMERATION_GUARD = 22  # edges counted with multiplicity; ~4M subsets


# ---------------------------------------------------------------------------
# Brute-force polynomial
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ForestPolyResult:
    """A forest polynomial plus cheap summary statistics."""

    poly: SparsePolynomial
    forest_count: int  # value at all-ones weights
    max_forest_size: int


def _expanded_edges(g: Multigraph) -> list[tuple[int, int, int]]:
    """(u, v, record index) per edge copy; parallel copies listed separately."""
    out = []
    for i, e in enumerate(g.edges):
        out.extend((e.u, e.v, i) for _ in range(e.mult))
    return out


def _profile_by_class(
    g: Multigraph, class_of_record: Sequence[object], guard: int
) -> tuple[list[object], dict[tuple[int, ...], int]]:
    """Forest counts bucketed by how many edges of each class are used.

    class_of_record assigns an arbitrary hashable class key per edge record;
    copies of a record share its class.  Returns the class keys in first-
    appearance order and the usage profile.
    """
    copies = _expanded_edges(g)
    if len(copies) > guard:
        raise BudgetError(
            f"{len(copies)} edges exceeds the enumeration guard of {guard}; "
            "use the series-parallel evaluator for large graphs"
        )
    class_order: list[object] = []
    class_index: dict[object, int] = {}
    labels = []
    for _, _, rec in copies:
        key = class_of_record[rec]
        if key not in class_index:
            class_index[key] = len(class_order)
            class_order.append(key)
        labels.append(class_index[key])
    caps = [0] * len(class_order)
    for l in labels:
        caps[l] += 1
    profile = kernels.forest_label_profile(
        g.n,
        [u for u, _, _ in copies],
        [v for _, v, _ in copies],
        labels,
        len(class_order),
        caps,
    )
    return class_order, profile


def forest_poly_bruteforce(
    g: Multigraph, w: Optional[WeightAssignment] = None, guard: int = ENUMERATION_GUARD
) -> ForestPolyResult:
    """Sum over all acyclic edge subsets of the product of edge weights.

    Symbolic weights become polynomial variables (in first-appearance order);
    rational weights fold into the coefficients.  Parallel copies are
    enumerated individually.
    """
    if w is None:
        w = WeightAssignment.from_labels(g)
    class_of = [w[i] if isinstance(w[i], str) else ("val", Fraction(w[i])) for i in range(g.m)]
    class_order, profile = _profile_by_class(g, class_of, guard)
    sym_positions = [i for i, key in enumerate(class_order) if isinstance(key, str)]
    val_positions = [i for i, key in enumerate(class_order) if not isinstance(key, str)]
    variables = [class_order[i] for i in sym_positions]
    terms: dict[tuple[int, ...], Rat] = {}
    forest_count = 0
    max_size = 0
    for exps, cnt in profile.items():
        forest_count += cnt
        max_size = max(max_size, sum(exps))
        coeff = Fraction(cnt)
        for i in val_positions:
            if exps[i]:
                coeff *= class_order[i][1] ** exps[i]
        key = tuple(exps[i] for i in sym_positions)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    poly = SparsePolynomial(variables, terms)
    return ForestPolyResult(poly, forest_count, max_size)


def forest_value_bruteforce(
    g: Multigraph, weights: Mapping[int, Rat], guard: int = ENUMERATION_GUARD
) -> Rat:
    """Exact weighted forest sum by enumeration; used as a ground-truth oracle."""
    class_of = [("val", Fraction(weights[i])) for i in range(g.m)]
    class_order, profile = _profile_by_class(g, class_of, guard)
    values = [key[1] for key in class_order]
    total = Fraction(0)
    for exps, cnt in profile.items():
        term = Fraction(cnt)
        for v, e in zip(values, exps):
            if e:
                term *= v**e
        total += term
    return total


# ---------------------------------------------------------------------------
# Series-parallel evaluator
# ---------------------------------------------------------------------------


def stretched_edge_weight(w: Rat, k: int) -> Rat:
    """The reparameterized weight w^k / ((w+1)^k - w^k) induced by a k-stretch.

    Total for every odd k; for even k the denominator vanishes at w = -1/2
    (and nowhere else), which is rejected.
    """
    if k < 1:
        raise ValueError("stretch factor must be >= 1")
    w = Fraction(w)
    denom = (w + 1) ** k - w**k
    if denom == 0:
        raise ValueError(f"(w+1)^{k} - w^{k} vanishes at w={w}; use an odd stretch factor")
    return w**k / denom


def _chain_factor(ws: Sequence[Rat]) -> Rat:
    """prod(1+w) - prod(w): the forest weight of all proper subsets of a chain."""
    all_plus = Fraction(1)
    all_used = Fraction(1)
    for w in ws:
        all_plus *= 1 + w
        all_used *= w
    return all_plus - all_used


def forest_poly_sp(
    g: Multigraph,
    weights: Optional[Mapping[int, Rat]] = None,
    core_guard: int = ENUMERATION_GUARD,
) -> Rat:
    """Evaluate the weighted forest sum by graph reduction plus a small core.

    Exhaustively applies value-preserving reductions: zero-weight edges are
    dropped, parallel bundles collapse to their weight sum, pendant edges
    contribute a factor (1 + w), and maximal chains through degree-2 vertices
    of weights w_1..w_k collapse to a single edge of weight
    prod(w)/ (prod(1+w) - prod(w)) with global prefactor prod(1+w) - prod(w)
    (the k-stretch identity read backwards; a chain closing on itself just
    contributes the prefactor).  Whatever remains is evaluated by enumeration
    and must fit the core guard.

    A chain whose prefactor vanishes is left for the core rather than divided
    by zero; uniform odd-length chains, the only kind the reduction pipelines
    produce, never hit this.
    """
    if weights is None:
        weights = WeightAssignment.from_labels(g).rational_values()
    # working copy: list of [u, v, weight]; multiplicities expand here and
    # immediately re-merge in the first parallel pass.
    work: list[list] = []
    for i, e in enumerate(g.edges):
        wv = Fraction(weights[i])
        for _ in range(e.mult):
            work.append([e.u, e.v, wv])
    prefactor = Fraction(1)
    n = g.n

    changed = True
    while changed:
        changed = False
        # drop zero-weight edges
        kept = [rec for rec in work if rec[2] != 0]
        if len(kept) != len(work):
            work = kept
            changed = True
        # merge parallel bundles
        merged: dict[frozenset[int], Fraction] = {}
        order = []
        for u, v, wv in work:
            key = frozenset((u, v))
            if key not in merged:
                merged[key] = Fraction(0)
                order.append(key)
            merged[key] += wv
        if len(order) != len(work):
            work = [[min(k), max(k), merged[k]] for k in order]
            changed = True
        # degree census
        deg = [0] * n
        incident: dict[int, list[int]] = {v: [] for v in range(n)}
        for idx, (u, v, wv) in enumerate(work):
            deg[u] += 1
            deg[v] += 1
            incident[u].append(idx)
            incident[v].append(idx)
        # pendant edges: factor (1 + w)
        pendant = next(
            (idx for idx, (u, v, wv) in enumerate(work) if deg[u] == 1 or deg[v] == 1),
            None,
        )
        if pendant is not None:
            prefactor *= 1 + work[pendant][2]
            del work[pendant]
            changed = True
            continue
        # maximal chain through a degree-2 vertex; skip chains whose factor
        # vanishes (they stay for the core) and try the next one
        for start in (v for v in range(n) if deg[v] == 2):
            collapsed = _collapse_one_chain(work, incident, deg, start)
            if collapsed is not None:
                factor, replacement, removed = collapsed
                prefactor *= factor
                work = [rec for idx, rec in enumerate(work) if idx not in removed]
                if replacement is not None:
                    work.append(list(replacement))
                changed = True
                break
    if work:
        core = Multigraph(n, [Edge(u, v, 1, "w") for u, v, _ in work])
        core_weights = {i: wv for i, (_, _, wv) in enumerate(work)}
        total = forest_value_bruteforce(core, core_weights, guard=core_guard)
    else:
        total = Fraction(1)
    return prefactor * total


def _collapse_one_chain(work, incident, deg, start):
    """Collapse the maximal degree-2 chain through `start`, if its factor
    is nonzero.  Returns (factor, replacement edge or None, removed indices),
    or None when every chain through start has a vanishing factor.
    """

    def other_end(idx: int, at: int) -> int:
        u, v, _ = work[idx]
        return v if u == at else u

    # walk in both directions until a vertex of degree != 2 (or a loop back)
    edges_path = []
    left = start
    first = incident[start][0]
    edges_path.append(first)
    left = other_end(first, start)
    while deg[left] == 2 and left != start:
        nxt = next(i for i in incident[left] if i != edges_path[-1])
        edges_path.append(nxt)
        left = other_end(nxt, left)
    if left == start:
        # isolated cycle component: all proper subsets survive
        ws = [work[i][2] for i in edges_path]
        return _chain_factor(ws), None, set(edges_path)
    edges_back = []
    right = start
    second = incident[start][1]
    edges_back.append(second)
    right = other_end(second, start)
    while deg[right] == 2:
        nxt = next(i for i in incident[right] if i != edges_back[-1])
        edges_back.append(nxt)
        right = other_end(nxt, right)
    chain = list(reversed(edges_path)) + edges_back
    ws = [work[i][2] for i in chain]
    factor = _chain_factor(ws)
    if left == right:
        # chain closes on a single attachment vertex: pure multiplicative
        # factor (possibly zero), no replacement edge, no division
        return factor, None, set(chain)
    if factor == 0:
        return None
    weight = Fraction(1)
    for w in ws:
        weight *= w
    weight /= factor
    return factor, (left, right, weight), set(chain)


# ---------------------------------------------------------------------------
# Tutte slice y = 1
# ---------------------------------------------------------------------------


def tutte_y1(g: Multigraph, x: Rat, core_guard: int = ENUMERATION_GUARD) -> Rat:
    """Evaluate T(G; x, 1) = (x-1)^(n - components) * F(G; 1/(x-1)).

    Only forests survive at y = 1, which is what makes the bridge to the
    forest sum work; x = 1 is rejected because the bridge divides by x - 1.
    """
    x = Fraction(x)
    if x == 1:
        raise ValueError("x = 1 is excluded: the forest-sum bridge divides by x - 1")
    g = g.as_simple()
    t = 1 / (x - 1)
    value = forest_poly_sp(g, {i: t for i in range(g.m)}, core_guard=core_guard)
    return (x - 1) ** (g.n - g.component_count()) * value


# ---------------------------------------------------------------------------
# Apex machinery
# ---------------------------------------------------------------------------


def apex_rhs(
    g: Multigraph,
    wval: Rat,
    zvals: Sequence[Rat],
    guard: int = ENUMERATION_GUARD,
) -> Rat:
    """Closed form for the forest sum of the apexed graph, computed on the
    original graph: sum over forests A of wval^|A| times, per tree component
    (singletons included), the factor 1 + sum of z over the tree's vertices.
    """
    g = g.as_simple()
    if len(zvals) != g.n:
        raise ValueError(f"need one z value per vertex ({g.n}), got {len(zvals)}")
    if g.m > guard:
        raise BudgetError(f"{g.m} edges exceeds the enumeration guard of {guard}")
    wval = Fraction(wval)
    zvals = [Fraction(z) for z in zvals]
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    total = Fraction(0)

    def leaf(size: int) -> Fraction:
        sums: dict[int, Fraction] = {}
        for v in range(g.n):
            r = find(v)
            sums[r] = sums.get(r, Fraction(0)) + zvals[v]
        factor = wval**size
        for s in sums.values():
            factor *= 1 + s
        return factor

    def rec(i: int, size: int) -> None:
        nonlocal total
        if i == g.m:
            total += leaf(size)
            return
        rec(i + 1, size)
        e = g.edges[i]
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            return
        parent[rv] = ru
        rec(i + 1, size + 1)
        parent[rv] = rv

    rec(0, 0)
    return total


def pm_coefficient_extract(apex_poly: SparsePolynomial, n: int) -> tuple[int, bool]:
    """Read the perfect-matching count out of the apexed forest polynomial.

    Expects the univariate polynomial in w obtained by setting every
    apex-edge weight to -1.  Each matched pair contributes a tree factor
    1 - 2 = -1, so the raw w^(n/2) coefficient carries a global sign
    (-1)^(n/2), which is corrected here.  Odd n has no perfect matching:
    returns (0, True) where the flag warns about the odd order.
    """
    if n % 2 == 1:
        return 0, True
    if apex_poly.variables not in ((), ("w",)):
        raise ValueError(f"expected a polynomial in 'w', got variables {apex_poly.variables}")
    if apex_poly.variables == ():
        coeff = apex_poly.coefficient(()) if n == 0 else Fraction(0)
    else:
        coeff = apex_poly.coefficient((n // 2,))
    value = (-1) ** (n // 2) * coeff
    if value.denominator != 1:
        raise ValueError(f"matching count came out non-integer: {value}")
    return int(value), False


SimpleOracle = Callable[[Multigraph], Rat]


def sp_simple_oracle(t: Rat, core_guard: int = ENUMERATION_GUARD) -> SimpleOracle:
    """Evaluator of the forest sum at the fixed rational t on simple graphs."""
    t = Fraction(t)

    def oracle(h: Multigraph) -> Rat:
        return forest_poly_sp(h, {i: t for i in range(h.m)}, core_guard=core_guard)

    return oracle


def bruteforce_simple_oracle(t: Rat, guard: int = ENUMERATION_GUARD) -> SimpleOracle:
    """Enumeration-backed evaluator at t; only viable on small query graphs."""
    t = Fraction(t)

    def oracle(h: Multigraph) -> Rat:
        return forest_value_bruteforce(h, {i: t for i in range(h.m)}, guard=guard)

    return oracle
