"""Sparse exact multivariate polynomials, grid interpolation, and the
structured Vandermonde/Kronecker linear algebra behind the reductions.

Everything here is exact: coefficients are unbounded rationals and no
operation may introduce rounding.  Matrix entries like 30**192 overflow any
fixed-width integer immediately, so machine-word arithmetic is off limits in
this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

Rat = Fraction

# ---------------------------------------------------------------------------
# Sparse polynomials
# ---------------------------------------------------------------------------


class SparsePolynomial:
    """Multivariate polynomial: ordered variables, exponent-vector terms.

    Invariants: no stored zero coefficients; every exponent vector has the
    same arity as the variable list.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], Rat]):
        self.variables = tuple(variables)
        clean: dict[tuple[int, ...], Rat] = {}
        k = len(self.variables)
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != k:
                raise ValueError(f"exponent vector {exps} has arity {len(exps)}, expected {k}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = Fraction(coeff)
            if c != 0:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, variables: Sequence[str], value: Rat) -> "SparsePolynomial":
        value = Fraction(value)
        zero = tuple(0 for _ in variables)
        return cls(variables, {zero: value} if value else {})

    def evaluate(self, point: Mapping[str, Rat]) -> Rat:
        """Exact value at a point binding every variable."""
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise ValueError(f"missing bindings for {missing}")
        total = Fraction(0)
        vals = [Fraction(point[v]) for v in self.variables]
        for exps, coeff in self.terms.items():
            term = coeff
            for val, e in zip(vals, exps):
                if e:
                    term *= val**e
            total += term
        return total

    def substitute(self, name: str, value: Rat) -> "SparsePolynomial":
        """Bind one variable to a rational; it disappears from the result."""
        if name not in self.variables:
            raise ValueError(f"unknown variable {name!r}")
        pos = self.variables.index(name)
        value = Fraction(value)
        rest = self.variables[:pos] + self.variables[pos + 1 :]
        out: dict[tuple[int, ...], Rat] = {}
        for exps, coeff in self.terms.items():
            key = exps[:pos] + exps[pos + 1 :]
            c = coeff * value ** exps[pos]
            out[key] = out.get(key, Fraction(0)) + c
        return SparsePolynomial(rest, out)

    def coefficient(self, exps: Sequence[int]) -> Rat:
        return self.terms.get(tuple(exps), Fraction(0))

    def degree(self, name: str) -> int:
        if name not in self.variables:
            raise ValueError(f"unknown variable {name!r}")
        pos = self.variables.index(name)
        return max((exps[pos] for exps in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(exps) for exps in self.terms), default=0)

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        if self.variables != other.variables:
            raise ValueError("variable lists differ")
        merged = dict(self.terms)
        for exps, coeff in other.terms.items():
            merged[exps] = merged.get(exps, Fraction(0)) + coeff
        return SparsePolynomial(self.variables, merged)

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        if self.variables != other.variables:
            raise ValueError("variable lists differ")
        out: dict[tuple[int, ...], Rat] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return SparsePolynomial(self.variables, out)

    def scale(self, factor: Rat) -> "SparsePolynomial":
        factor = Fraction(factor)
        return SparsePolynomial(self.variables, {e: c * factor for e, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparsePolynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e)):
            coeff = self.terms[exps]
            factors = []
            for var, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(var)
                elif e > 1:
                    factors.append(f"{var}^{e}")
            if not factors:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append("*".join(factors))
            elif coeff == -1:
                pieces.append("-" + "*".join(factors))
            else:
                pieces.append(f"{coeff}*" + "*".join(factors))
        out = " + ".join(pieces)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.variables}, {len(self.terms)} terms)"

    def to_json(self) -> str:
        data = {
            "variables": list(self.variables),
            "terms": [
                [list(exps), str(c.numerator), str(c.denominator)]
                for exps, c in sorted(self.terms.items())
            ],
        }
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> "SparsePolynomial":
        data = json.loads(text)
        terms = {
            tuple(exps): Fraction(int(num), int(den))
            for exps, num, den in data["terms"]
        }
        return cls(data["variables"], terms)


def poly_eval(p: SparsePolynomial, point: Mapping[str, Rat]) -> Rat:
    return p.evaluate(point)


# ---------------------------------------------------------------------------
# Grid interpolation
# ---------------------------------------------------------------------------


def lagrange_coefficient_rows(nodes: Sequence[Rat]) -> list[list[Rat]]:
    """Row i holds the monomial coefficients of the Lagrange basis polynomial
    that is 1 at nodes[i] and 0 at the other nodes.

    This is the exact inverse transpose of the Vandermonde matrix on the
    nodes; applying it to sampled values yields polynomial coefficients.
    """
    nodes = [Fraction(x) for x in nodes]
    if len(set(nodes)) != len(nodes):
        raise ValueError("interpolation nodes must be pairwise distinct")
    n = len(nodes)
    # master(t) = prod (t - x_j), coefficients low-to-high
    master = [Fraction(1)]
    for x in nodes:
        nxt = [Fraction(0)] * (len(master) + 1)
        for j, c in enumerate(master):
            nxt[j + 1] += c
            nxt[j] -= c * x
        master = nxt
    rows = []
    for i, xi in enumerate(nodes):
        # synthetic division: master / (t - xi)
        q = [Fraction(0)] * n
        carry = master[n]
        for j in range(n - 1, -1, -1):
            q[j] = carry
            carry = master[j] + carry * xi
        denom = Fraction(1)
        for j, xj in enumerate(nodes):
            if j != i:
                denom *= xi - xj
        rows.append([c / denom for c in q])
    return rows


def grid_interpolate(
    values: Mapping[tuple[Rat, ...], Rat],
    degree_bounds: Mapping[str, int],
    nodes: Mapping[str, Sequence[Rat]],
) -> SparsePolynomial:
    """Recover the unique polynomial matching values on a full node grid.

    The variable order is the iteration order of ``degree_bounds``; keys of
    ``values`` are node-value tuples in that order.  Each variable needs
    exactly degree_bound + 1 pairwise-distinct nodes, and values must cover
    the whole Cartesian grid.  Implemented as tensorized univariate Lagrange
    interpolation, one variable (mode) at a time.
    """
    variables = list(degree_bounds.keys())
    node_lists = []
    for v in variables:
        lst = [Fraction(x) for x in nodes[v]]
        if len(lst) != degree_bounds[v] + 1:
            raise ValueError(f"variable {v!r}: need {degree_bounds[v] + 1} nodes, got {len(lst)}")
        if len(set(lst)) != len(lst):
            raise ValueError(f"variable {v!r}: duplicate interpolation nodes")
        node_lists.append(lst)
    sizes = [len(lst) for lst in node_lists]
    total = 1
    for s in sizes:
        total *= s
    grid_points = list(product(*node_lists))
    if len(values) != total or any(pt not in values for pt in grid_points):
        raise ValueError("values do not cover the interpolation grid exactly")
    # Flat tensor, row-major with the first variable slowest.
    tensor = [Fraction(values[pt]) for pt in grid_points]
    for mode, lst in enumerate(node_lists):
        rows = lagrange_coefficient_rows(lst)
        tensor = _apply_mode(tensor, sizes, mode, rows, transpose=True)
    poly_terms: dict[tuple[int, ...], Rat] = {}
    for flat, coeff in enumerate(tensor):
        if coeff == 0:
            continue
        exps = _unflatten(flat, sizes)
        poly_terms[tuple(exps)] = coeff
    return SparsePolynomial(variables, poly_terms)


def _unflatten(flat: int, sizes: Sequence[int]) -> list[int]:
    out = [0] * len(sizes)
    for i in range(len(sizes) - 1, -1, -1):
        flat, out[i] = divmod(flat, sizes[i])
    return out


def _apply_mode(
    tensor: list[Rat],
    sizes: Sequence[int],
    mode: int,
    matrix: Sequence[Sequence[Rat]],
    transpose: bool = False,
) -> list[Rat]:
    """Multiply a flat row-major tensor by a square matrix along one mode.

    With transpose=True computes new[j] = sum_i M[i][j] * old[i] along the
    mode, which is what coefficient extraction from Lagrange rows needs.
    """
    n = sizes[mode]
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("matrix does not match mode size")
    inner = 1
    for s in sizes[mode + 1 :]:
        inner *= s
    outer = 1
    for s in sizes[:mode]:
        outer *= s
    out = [Fraction(0)] * len(tensor)
    for o in range(outer):
        base_o = o * n * inner
        for inn in range(inner):
            fiber = [tensor[base_o + i * inner + inn] for i in range(n)]
            for j in range(n):
                acc = Fraction(0)
                for i in range(n):
                    coeff = matrix[i][j] if transpose else matrix[j][i]
                    if fiber[i]:
                        acc += coeff * fiber[i]
                out[base_o + j * inner + inn] = acc
    return out


# ---------------------------------------------------------------------------
# Exact dense linear algebra (small matrices only)
# ---------------------------------------------------------------------------


def exact_inverse(rows: Sequence[Sequence[Rat]]) -> list[list[Rat]]:
    """Gauss-Jordan inverse over the rationals; raises on singular input."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    a = [[Fraction(x) for x in r] for r in rows]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def exact_det(rows: Sequence[Sequence[Rat]]) -> Rat:
    """Determinant by fraction-preserving Gaussian elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        p = a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def kron(a: Sequence[Sequence[Rat]], b: Sequence[Sequence[Rat]]) -> list[list[Rat]]:
    """Kronecker product: block matrix of a[i][j]-scaled copies of b."""
    return [
        [a[i][j] * b[k][l] for j in range(len(a[0])) for l in range(len(b[0]))]
        for i in range(len(a))
        for k in range(len(b))
    ]


def kron_det_check(a: Sequence[Sequence[Rat]], b: Sequence[Sequence[Rat]]) -> bool:
    """Self-test of the Kronecker implementation on one pair of square
    matrices: det(A (x) B) must equal det(A)**nb * det(B)**na exactly."""
    na, nb = len(a), len(b)
    if any(len(r) != na for r in a) or any(len(r) != nb for r in b):
        raise ValueError("inputs must be square")
    lhs = exact_det(kron(a, b))
    rhs = exact_det(a) ** nb * exact_det(b) ** na
    return lhs == rhs


# ---------------------------------------------------------------------------
# The structured Vandermonde factor and its Kronecker powers
# ---------------------------------------------------------------------------

# Above this size, Gauss-Jordan on the factor is hopeless (entry bit sizes
# make every pivot a megabit gcd), so the inverse switches to the
# node-polynomial (Lagrange) construction, which only ever touches numbers
# the size of the matrix entries.  Both paths are exact and are cross-checked
# against each other in the test suite at small sizes.
_GAUSS_JORDAN_LIMIT = 27


@dataclass
class VandermondeFactor:
    """The square integer matrix with rows ell = 1..(d+1)^3, columns indexed
    by triples tau in {0..d}^3 (lexicographic), and entries
    (2^tau1 * 3^tau2 * 5^tau3) ** ell.

    Distinct triples give distinct column bases (unique prime factorization),
    which makes the matrix an invertible transposed Vandermonde matrix.
    """

    d: int
    _inverse_cache: list[list[Rat]] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("block size d must be >= 1")

    @property
    def size(self) -> int:
        return (self.d + 1) ** 3

    @property
    def taus(self) -> list[tuple[int, int, int]]:
        r = range(self.d + 1)
        return [(t1, t2, t3) for t1 in r for t2 in r for t3 in r]

    @property
    def bases(self) -> list[int]:
        return [2**t1 * 3**t2 * 5**t3 for t1, t2, t3 in self.taus]

    def entry(self, ell: int, tau_index: int) -> int:
        if not 1 <= ell <= self.size:
            raise ValueError(f"row index ell must be in 1..{self.size}")
        return self.bases[tau_index] ** ell

    def matrix(self) -> list[list[int]]:
        bases = self.bases
        return [[b**ell for b in bases] for ell in range(1, self.size + 1)]

    def inverse(self) -> list[list[Rat]]:
        if self._inverse_cache is None:
            if self.size <= _GAUSS_JORDAN_LIMIT:
                self._inverse_cache = exact_inverse(self.matrix())
            else:
                self._inverse_cache = transpose_vandermonde_inverse(self.bases)
        return self._inverse_cache


def transpose_vandermonde_inverse(points: Sequence[int]) -> list[list[Rat]]:
    """Exact inverse of the matrix A[ell][j] = points[j] ** ell, ell = 1..N.

    A factors as W * diag(points) with W[ell][j] = points[j] ** (ell - 1), and
    W is the transpose of the Vandermonde matrix on the points, whose inverse
    rows are the Lagrange basis coefficients.  Hence
    A^-1[j][ell-1] = (coefficient of t^(ell-1) in L_j(t)) / points[j].
    """
    pts = [Fraction(p) for p in points]
    rows = lagrange_coefficient_rows(pts)
    return [[c / pts[j] for c in rows[j]] for j in range(len(pts))]


@dataclass
class KroneckerSystem:
    """A right-hand side indexed by the full grid {1..N}^b together with the
    factor whose b-fold Kronecker power is the system matrix."""

    factor: VandermondeFactor
    b: int
    rhs: Mapping[tuple[int, ...], Rat]

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("need at least one tensor mode")
        size = self.factor.size
        expected = size**self.b
        if len(self.rhs) != expected:
            raise ValueError(f"rhs must cover the full grid of {expected} points, got {len(self.rhs)}")
        for key in self.rhs:
            if len(key) != self.b or any(not 1 <= e <= size for e in key):
                raise ValueError(f"rhs key {key} outside grid (1..{size})^{self.b}")


def kronecker_solve(system: KroneckerSystem) -> dict[tuple[tuple[int, int, int], ...], Rat]:
    """Solve (A tensor ... tensor A) x = rhs without materializing the power.

    The exact inverse of the single factor is applied along each of the b
    tensor modes in turn.  Keys of the result are b-tuples of column triples,
    one per mode, in the same mode order as the rhs indices.
    """
    factor = system.factor
    n = factor.size
    sizes = [n] * system.b
    # Flatten: first mode slowest, consistent with A (x) (A (x) ...) indexing.
    tensor = [Fraction(0)] * (n**system.b)
    for key, val in system.rhs.items():
        flat = 0
        for e in key:
            flat = flat * n + (e - 1)
        tensor[flat] = Fraction(val)
    inv = factor.inverse()
    for mode in range(system.b):
        tensor = _apply_mode(tensor, sizes, mode, inv)
    taus = factor.taus
    out: dict[tuple[tuple[int, int, int], ...], Rat] = {}
    for flat, val in enumerate(tensor):
        idx = _unflatten(flat, sizes)
        out[tuple(taus[i] for i in idx)] = val
    return out


def kronecker_apply(factor: VandermondeFactor, b: int, x: Mapping[tuple[tuple[int, int, int], ...], Rat]) -> dict[tuple[int, ...], Rat]:
    """Multiply the b-fold Kronecker power of the factor by x (residual check)."""
    n = factor.size
    sizes = [n] * b
    tau_index = {tau: i for i, tau in enumerate(factor.taus)}
    tensor = [Fraction(0)] * (n**b)
    for key, val in x.items():
        flat = 0
        for tau in key:
            flat = flat * n + tau_index[tau]
        tensor[flat] = Fraction(val)
    mat = [[Fraction(v) for v in row] for row in factor.matrix()]
    for mode in range(b):
        tensor = _apply_mode(tensor, sizes, mode, mat)
    out: dict[tuple[int, ...], Rat] = {}
    for flat, val in enumerate(tensor):
        idx = _unflatten(flat, sizes)
        out[tuple(i + 1 for i in idx)] = val
    return out


def build_vandermonde(d: int) -> VandermondeFactor:
    return VandermondeFactor(d)
