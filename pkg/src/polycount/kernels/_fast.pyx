# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Bit-for-bit the same semantics as the pure module: plain subset enumeration
with machine-word bitmasks.  All counts fit in 64 bits under the budgets the
oracle layer enforces (at most 2^30 subsets).
"""

from libc.stdlib cimport calloc, free, malloc

BACKEND = "fast"

ctypedef unsigned long long u64
ctypedef long long i64

DEF MAX_BITS = 30


cdef inline int _lowest_bit(u64 x) nogil:
    cdef int i = 0
    while not (x >> i) & 1:
        i += 1
    return i


def count_vertex_covers(int n, adj, u64 required=0, u64 forbidden=0):
    if n < 0 or n > MAX_BITS:
        raise ValueError(f"kernel supports 0..{MAX_BITS} items, got {n}")
    cdef u64* a = <u64*> malloc(max(n, 1) * sizeof(u64))
    if a == NULL:
        raise MemoryError()
    cdef int v
    for v in range(n):
        a[v] = adj[v]
    cdef u64 full = ((<u64> 1) << n) - 1
    cdef u64 total = (<u64> 1) << n
    cdef u64 s, comp, rest
    cdef i64 count = 0
    cdef bint ok
    with nogil:
        for s in range(total):
            if (s & required) != required or (s & forbidden):
                continue
            comp = full & ~s
            rest = comp
            ok = True
            while rest:
                v = _lowest_bit(rest)
                rest &= rest - 1
                if a[v] & comp:
                    ok = False
                    break
            if ok:
                count += 1
    free(a)
    return count


def count_independent_sets(int n, adj):
    if n < 0 or n > MAX_BITS:
        raise ValueError(f"kernel supports 0..{MAX_BITS} items, got {n}")
    cdef u64* a = <u64*> malloc(max(n, 1) * sizeof(u64))
    if a == NULL:
        raise MemoryError()
    cdef int v
    for v in range(n):
        a[v] = adj[v]
    cdef u64 total = (<u64> 1) << n
    cdef u64 s, rest
    cdef i64 count = 0
    cdef bint ok
    with nogil:
        for s in range(total):
            rest = s
            ok = True
            while rest:
                v = _lowest_bit(rest)
                rest &= rest - 1
                if a[v] & s:
                    ok = False
                    break
            if ok:
                count += 1
    free(a)
    return count


cdef i64 _pm_rec(int n, u64* adj, u64 matched, u64 full) nogil:
    if matched == full:
        return 1
    cdef int v = _lowest_bit(~matched)
    cdef u64 cand = adj[v] & ~matched
    cdef i64 total = 0
    cdef int u
    while cand:
        u = _lowest_bit(cand)
        cand &= cand - 1
        total += _pm_rec(n, adj, matched | ((<u64> 1) << v) | ((<u64> 1) << u), full)
    return total


def count_perfect_matchings(int n, adj):
    if n < 0 or n > MAX_BITS:
        raise ValueError(f"kernel supports 0..{MAX_BITS} items, got {n}")
    if n == 0:
        return 1
    if n % 2 == 1:
        return 0
    cdef u64* a = <u64*> malloc(n * sizeof(u64))
    if a == NULL:
        raise MemoryError()
    cdef int v
    for v in range(n):
        a[v] = adj[v]
    cdef u64 full = ((<u64> 1) << n) - 1
    cdef i64 count
    with nogil:
        count = _pm_rec(n, a, 0, full)
    free(a)
    return count


cdef int _uf_find(int* parent, int x) nogil:
    while parent[x] != x:
        x = parent[x]
    return x


cdef void _forest_rec(int i, int m, int* eu, int* ev, int* elab, long* strides,
                      i64* table, long idx, int* parent, int* rank) nogil:
    if i == m:
        table[idx] += 1
        return
    _forest_rec(i + 1, m, eu, ev, elab, strides, table, idx, parent, rank)
    cdef int ru = _uf_find(parent, eu[i])
    cdef int rv = _uf_find(parent, ev[i])
    if ru == rv:
        return
    cdef int tmp
    if rank[ru] < rank[rv]:
        tmp = ru
        ru = rv
        rv = tmp
    parent[rv] = ru
    cdef bint bumped = rank[ru] == rank[rv]
    if bumped:
        rank[ru] += 1
    _forest_rec(i + 1, m, eu, ev, elab, strides, table, idx + strides[elab[i]], parent, rank)
    parent[rv] = rv
    if bumped:
        rank[ru] -= 1


def forest_label_profile(int n, edges_u, edges_v, labels, int n_labels, caps):
    cdef int m = len(edges_u)
    if len(edges_v) != m or len(labels) != m:
        raise ValueError("edge arrays must have equal length")
    cdef long size = 1
    cdef long* strides = <long*> malloc(max(n_labels, 1) * sizeof(long))
    cdef int l
    for l in range(n_labels):
        strides[l] = size
        size *= <long> caps[l] + 1
        if size > (1 << 24):
            free(strides)
            raise ValueError(f"profile table would need more than {1 << 24} cells; refusing")
    cdef int* eu = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* ev = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* elab = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* parent = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* rank = <int*> malloc(max(n, 1) * sizeof(int))
    cdef i64* table = <i64*> calloc(size, sizeof(i64))
    if eu == NULL or ev == NULL or elab == NULL or parent == NULL or rank == NULL or table == NULL:
        raise MemoryError()
    cdef int i
    try:
        for i in range(m):
            eu[i] = edges_u[i]
            ev[i] = edges_v[i]
            elab[i] = labels[i]
            if not 0 <= elab[i] < n_labels:
                raise ValueError("label index out of range")
        for i in range(n):
            parent[i] = i
            rank[i] = 0
        with nogil:
            _forest_rec(0, m, eu, ev, elab, strides, table, 0, parent, rank)
        out = {}
        for idx in range(size):
            if table[idx] == 0:
                continue
            exps = []
            rem = idx
            for l in range(n_labels):
                exps.append(rem % (caps[l] + 1))
                rem //= caps[l] + 1
            out[tuple(exps)] = table[idx]
        return out
    finally:
        free(eu)
        free(ev)
        free(elab)
        free(parent)
        free(rank)
        free(table)
        free(strides)


def count_csp_models(int n_vars, relmasks, arities, scopes):
    if n_vars < 0 or n_vars > MAX_BITS:
        raise ValueError(f"kernel supports 0..{MAX_BITS} items, got {n_vars}")
    cdef int ncons = len(relmasks)
    cdef int total_scope = 0
    cdef int c
    for c in range(ncons):
        if arities[c] > 6:
            raise ValueError("compiled path handles arity <= 6")
        total_scope += len(scopes[c])
    cdef u64* masks = <u64*> malloc(max(ncons, 1) * sizeof(u64))
    cdef int* offs = <int*> malloc((ncons + 1) * sizeof(int))
    cdef int* flat = <int*> malloc(max(total_scope, 1) * sizeof(int))
    if masks == NULL or offs == NULL or flat == NULL:
        raise MemoryError()
    cdef int pos = 0, j
    for c in range(ncons):
        masks[c] = relmasks[c]
        offs[c] = pos
        for j in range(len(scopes[c])):
            flat[pos] = scopes[c][j]
            pos += 1
    offs[ncons] = pos
    cdef u64 total = (<u64> 1) << n_vars
    cdef u64 a
    cdef i64 count = 0
    cdef int idx
    cdef bint ok
    with nogil:
        for a in range(total):
            ok = True
            for c in range(ncons):
                idx = 0
                for j in range(offs[c], offs[c + 1]):
                    idx = (idx << 1) | <int> ((a >> flat[j]) & 1)
                if not (masks[c] >> idx) & 1:
                    ok = False
                    break
            if not ok:
                continue
            count += 1
    free(masks)
    free(offs)
    free(flat)
    return count
