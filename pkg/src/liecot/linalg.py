"""Exact dense linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`fractions.Fraction`. Every
subspace is stored through its reduced row-echelon basis, so two subspaces are
equal exactly when their bases are equal entry by entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotSymmetric

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def fraction_str(x: Fraction) -> str:
    return str(x)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(tuple(to_fraction(x) for x in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def as_vector(v: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in v)


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def zeros(rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    z = Fraction(0)
    return tuple((z,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt)
                 for row in a)


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = to_fraction(c)
    return tuple(tuple(c * x for x in r) for r in a)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(matmul(a, b), matmul(b, a))


def linear_combination(coeffs: Sequence, mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise ValueError("empty combination")
    out = zeros(*shape(mats[0]))
    for c, m in zip(coeffs, mats):
        out = mat_add(out, mat_scale(c, m))
    return out


def flatten(m: Matrix) -> Vector:
    return tuple(x for row in m for x in row)


def unflatten(v: Sequence[Fraction], rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    if len(v) != rows * cols:
        raise DimensionMismatch(f"vector of length {len(v)} is not {rows}x{cols}")
    return tuple(tuple(v[i * cols:(i + 1) * cols]) for i in range(rows))


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def is_symmetric(m: Matrix) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


# ---------------------------------------------------------------------------
# Row reduction


def rref(m: Matrix | Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns.

    Pivots are the first nonzero entry found scanning columns left to right,
    rows top to bottom. Zero rows are kept at the bottom so the shape is
    preserved.
    """
    rows = [list(r) for r in as_matrix(m)]
    nrows, ncols = len(rows), (len(rows[0]) if rows else 0)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), pivots


def rank(m: Matrix | Sequence[Sequence]) -> int:
    return len(rref(m)[1])


class _Echelon:
    """Incremental sparse Gauss-Jordan elimination.

    Rows are dicts ``{column: value}``. Pivot rows stay fully reduced against
    each other, so reducing an incoming row takes one pass. Constraint systems
    for operator spaces are very sparse and mostly redundant; this keeps the
    working set at most ``ncols`` rows.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, Fraction]] = {}

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = {c: v for c, v in row.items() if v != 0}
        for c in [c for c in row if c in self.rows]:
            f = row.get(c)
            if not f:
                continue
            for cc, vv in self.rows[c].items():
                nv = row.get(cc, 0) - f * vv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        return row

    def add(self, row: dict[int, Fraction]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        for other in self.rows.values():
            f = other.get(p)
            if f:
                for cc, vv in row.items():
                    nv = other.get(cc, 0) - f * vv
                    if nv:
                        other[cc] = nv
                    else:
                        other.pop(cc, None)
        self.rows[p] = row
        return True

    def kernel_basis(self) -> list[Vector]:
        free = [c for c in range(self.ncols) if c not in self.rows]
        zero = Fraction(0)
        basis = []
        for f in free:
            v = [zero] * self.ncols
            v[f] = Fraction(1)
            for p, row in self.rows.items():
                x = row.get(f)
                if x:
                    v[p] = -x
            basis.append(tuple(v))
        return basis


def sparse_nullspace(rows: Iterable[dict[int, Fraction]], ncols: int) -> "Subspace":
    """Kernel of a system given as sparse rows ``{column: coefficient}``."""
    ech = _Echelon(ncols)
    for row in rows:
        ech.add(row)
    return span(ncols, ech.kernel_basis())


# ---------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[Vector]:
        return list(self.basis)

    def contains(self, v: Sequence) -> bool:
        return contains(self, v)

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in the canonical basis; raises if ``v`` is outside."""
        v = as_vector(v)
        if not contains(self, v):
            raise ValueError("vector is not in the subspace")
        piv = [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]
        return tuple(v[p] for p in piv)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def span(ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
    vecs = [as_vector(v) for v in vectors]
    for v in vecs:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    if not vecs:
        return Subspace(ambient_dim, ())
    ech = _Echelon(ambient_dim)
    for v in vecs:
        ech.add({i: x for i, x in enumerate(v) if x != 0})
    zero = Fraction(0)
    basis = []
    for p in sorted(ech.rows):
        row = [zero] * ambient_dim
        for c, x in ech.rows[p].items():
            row[c] = x
        basis.append(tuple(row))
    return Subspace(ambient_dim, tuple(basis))


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, identity(n))


def nullspace(m: Matrix | Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Kernel of ``m`` as a canonical subspace; ``ncols`` is needed for 0-row input."""
    m = as_matrix(m)
    n = len(m[0]) if m else ncols
    if n is None:
        raise DimensionMismatch("column count of an empty matrix is unknown")
    return sparse_nullspace(({j: x for j, x in enumerate(row) if x != 0} for row in m), n)


def _check(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def annihilator(a: Subspace) -> Subspace:
    """Vectors w with <w, v> = 0 for every v in ``a`` (standard dot product)."""
    return nullspace(a.basis, a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    rows = annihilator(a).basis + annihilator(b).basis
    return nullspace(rows, a.ambient_dim)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return span(a.ambient_dim, a.basis + b.basis)


def contains(a: Subspace, v: Sequence) -> bool:
    v = as_vector(v)
    if len(v) != a.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {a.ambient_dim}")
    work = list(v)
    for row in a.basis:
        p = next(j for j, x in enumerate(row) if x != 0)
        f = work[p]
        if f:
            work = [x - f * y for x, y in zip(work, row)]
    return not any(work)


def is_subspace(a: Subspace, b: Subspace) -> bool:
    """True when ``a`` is contained in ``b``."""
    _check(a, b)
    return all(contains(b, v) for v in a.basis)


def equals(a: Subspace, b: Subspace) -> bool:
    _check(a, b)
    return a.basis == b.basis


# ---------------------------------------------------------------------------
# Inertia


def inertia(b: Matrix | Sequence[Sequence]) -> tuple[int, int, int]:
    """Sylvester inertia ``(n_plus, n_minus, n_zero)`` by symmetric congruence.

    Works entirely over the rationals. When every remaining diagonal entry is
    zero but some off-diagonal ``a[i][j]`` is not, row/column ``j`` is added
    to row/column ``i``, producing the nonzero pivot ``2*a[i][j]``; the pair
    then contributes one positive and one negative square.
    """
    a = [list(r) for r in as_matrix(b)]
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("inertia needs a square matrix")
    if not is_symmetric(tuple(tuple(r) for r in a)):
        raise NotSymmetric("inertia needs a symmetric matrix")
    pos = neg = 0
    k = 0
    while k < n:
        p = next((i for i in range(k, n) if a[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            p = i
        if p != k:
            a[k], a[p] = a[p], a[k]
            for r in a:
                r[k], r[p] = r[p], r[k]
        d = a[k][k]
        for j in range(k + 1, n):
            f = a[j][k] / d
            if f:
                for c in range(k, n):
                    a[j][c] -= f * a[k][c]
                for r in range(k, n):
                    a[r][j] -= f * a[r][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return pos, neg, n - pos - neg
