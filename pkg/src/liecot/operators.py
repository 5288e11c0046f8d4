"""Linear solvers for spaces of operators attached to a Lie algebra.

Every space is the kernel of one sparse linear system whose unknowns are the
entries of an ``n x n`` matrix flattened row-major (entry ``(a, b)`` is
unknown ``a*n + b``). Column ``j`` of an operator matrix is the image of the
``j``-th basis vector, the same convention as :meth:`LieAlgebra.ad_matrix`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import linalg as la
from .algebra import LieAlgebra, base_algebra, cotangent
from .errors import DecompositionMismatch
from .linalg import Matrix, Subspace


@dataclass(frozen=True)
class OperatorSpace:
    algebra: LieAlgebra
    kind: str
    space: Subspace

    @property
    def n(self) -> int:
        return self.algebra.dim

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrices(self) -> list[Matrix]:
        return [la.unflatten(v, self.n) for v in self.space.basis]

    def contains(self, m: Sequence[Sequence]) -> bool:
        return self.space.contains(la.flatten(la.as_matrix(m)))

    def __repr__(self):
        return f"{type(self).__name__}({self.kind}, {self.algebra.name}, dim={self.dim})"


@dataclass(frozen=True, repr=False)
class MixedMapSpace(OperatorSpace):
    """Maps g -> g* (``kind='cocycles'``) or g* -> g (``kind='psi'``) as n x n matrices."""


class _System:
    """Accumulates sparse constraint rows indexed by (row, col) of the unknown matrix."""

    def __init__(self, n: int):
        self.n = n
        self.ech = la._Echelon(n * n)

    def add(self, terms: dict[tuple[int, int], Fraction]):
        n = self.n
        row = {a * n + b: v for (a, b), v in terms.items() if v != 0}
        if row:
            self.ech.add(row)

    def solve(self) -> Subspace:
        return la.span(self.n * self.n, self.ech.kernel_basis())


def _acc(terms, key, v):
    if v:
        terms[key] = terms.get(key, Fraction(0)) + v


def _commutation_rows(sys: _System, left: Matrix, right: Matrix | None = None):
    """Constraint X.left - right.X = 0 (``right`` defaults to ``left``)."""
    right = left if right is None else right
    n = sys.n
    for a in range(n):
        for b in range(n):
            terms: dict[tuple[int, int], Fraction] = {}
            for m in range(n):
                _acc(terms, (a, m), left[m][b])
                _acc(terms, (m, b), -right[a][m])
            sys.add(terms)


# ---------------------------------------------------------------------------
# Endomorphism spaces of g


def derivations(g: LieAlgebra) -> OperatorSpace:
    n = g.dim
    sys = _System(n)
    br = g.basis_bracket
    for i, j in combinations(range(n), 2):
        cij = br(i, j)
        for k in range(n):
            terms: dict[tuple[int, int], Fraction] = {}
            for m in range(n):
                _acc(terms, (k, m), cij[m])
                _acc(terms, (m, i), -br(m, j)[k])
                _acc(terms, (m, j), -br(i, m)[k])
            sys.add(terms)
    return OperatorSpace(g, "der", sys.solve())


def inner_derivations(g: LieAlgebra) -> OperatorSpace:
    n = g.dim
    return OperatorSpace(g, "inner", la.span(n * n, [la.flatten(a) for a in g.ad_basis]))


def _double_brackets(g: LieAlgebra):
    n = g.dim
    br = g.basis_bracket
    zero = (Fraction(0),) * n
    out = {}
    for b, c in product(range(n), repeat=2):
        u = br(b, c)
        for a in range(n):
            out[a, b, c] = g.bracket(g.basis_vector(a), u) if any(u) else zero
    return out


def prederivations(g: LieAlgebra) -> OperatorSpace:
    """p[x,[y,z]] = [px,[y,z]] + [x,[py,z]] + [x,[y,pz]] on all basis triples.

    The identity is antisymmetric in (y, z), so triples with j < k suffice.
    """
    n = g.dim
    sys = _System(n)
    br = g.basis_bracket
    db = _double_brackets(g)
    for i in range(n):
        for j, k in combinations(range(n), 2):
            u = br(j, k)
            w = db[i, j, k]
            ad_u = [g.bracket(g.basis_vector(m), u) for m in range(n)] if any(u) else None
            for l in range(n):
                terms: dict[tuple[int, int], Fraction] = {}
                for m in range(n):
                    _acc(terms, (l, m), w[m])
                    if ad_u is not None:
                        _acc(terms, (m, i), -ad_u[m][l])
                    _acc(terms, (m, j), -db[i, m, k][l])
                    _acc(terms, (m, k), -db[i, j, m][l])
                sys.add(terms)
    return OperatorSpace(g, "pder", sys.solve())


def adjoint_invariant_J(g: LieAlgebra) -> OperatorSpace:
    """Endomorphisms commuting with every ad_x."""
    sys = _System(g.dim)
    for a in g.ad_basis:
        _commutation_rows(sys, a)
    return OperatorSpace(g, "J", sys.solve())


def adjoint_invariant_Jprime(g: LieAlgebra) -> OperatorSpace:
    """Endomorphisms commuting with every product ad_x ad_y."""
    sys = _System(g.dim)
    ads = g.ad_basis
    for a, b in product(ads, repeat=2):
        _commutation_rows(sys, la.matmul(a, b))
    return OperatorSpace(g, "J'", sys.solve())


# ---------------------------------------------------------------------------
# Mixed maps


def coadjoint_cocycles(g: LieAlgebra) -> MixedMapSpace:
    """beta: g -> g* with beta([x,y]) = ad*_x beta(y) - ad*_y beta(x)."""
    n = g.dim
    sys = _System(n)
    coad = g.coad_basis
    for i, j in combinations(range(n), 2):
        cij = g.basis_bracket(i, j)
        for k in range(n):
            terms: dict[tuple[int, int], Fraction] = {}
            for m in range(n):
                _acc(terms, (k, m), cij[m])
                _acc(terms, (m, j), -coad[i][k][m])
                _acc(terms, (m, i), coad[j][k][m])
            sys.add(terms)
    return MixedMapSpace(g, "cocycles", sys.solve())


def coadjoint_coboundaries(g: LieAlgebra) -> MixedMapSpace:
    """Span of x -> -ad*_x f for f running over the dual basis."""
    n = g.dim
    coad = g.coad_basis
    gens = []
    for j in range(n):
        m = tuple(tuple(-coad[i][k][j] for i in range(n)) for k in range(n))
        gens.append(la.flatten(m))
    return MixedMapSpace(g, "coboundaries", la.span(n * n, gens))


def equivariant_psi(g: LieAlgebra) -> MixedMapSpace:
    """psi: g* -> g with psi o ad*_x = ad_x o psi and ad*_{psi f} h = ad*_{psi h} f."""
    n = g.dim
    sys = _System(n)
    coad = g.coad_basis
    for i in range(n):
        _commutation_rows(sys, coad[i], g.ad_basis[i])
    for j, k in combinations(range(n), 2):
        for l in range(n):
            terms: dict[tuple[int, int], Fraction] = {}
            for m in range(n):
                _acc(terms, (m, j), coad[m][l][k])
                _acc(terms, (m, k), -coad[m][l][j])
            sys.add(terms)
    return MixedMapSpace(g, "psi", sys.solve())


# ---------------------------------------------------------------------------
# Cohomology


def h1_adjoint(g: LieAlgebra) -> int:
    return derivations(g).dim - inner_derivations(g).dim


def h1_coadjoint(g: LieAlgebra) -> int:
    return coadjoint_cocycles(g).dim - coadjoint_coboundaries(g).dim


def _h1_cotangent_direct(g: LieAlgebra) -> int:
    d = cotangent(g)
    return derivations(d).dim - inner_derivations(d).dim


@dataclass(frozen=True)
class H1Summary:
    h1_adjoint: int
    dim_J: int
    h1_coadjoint: int
    dim_psi: int
    h1_cotangent: int

    def as_dict(self) -> dict:
        return {
            "h1_adjoint": self.h1_adjoint,
            "dim_J": self.dim_J,
            "h1_coadjoint": self.h1_coadjoint,
            "dim_psi": self.dim_psi,
            "h1_cotangent": self.h1_cotangent,
        }


def h1_summary(g: LieAlgebra) -> H1Summary:
    """Both sides of dim H1(D,D) = dim H1(g,g) + dim J + dim H1(g,g*) + dim Psi.

    Raises :class:`DecompositionMismatch` when they disagree.
    """
    s = H1Summary(h1_adjoint(g), adjoint_invariant_J(g).dim, h1_coadjoint(g),
                  equivariant_psi(g).dim, _h1_cotangent_direct(g))
    rhs = s.h1_adjoint + s.dim_J + s.h1_coadjoint + s.dim_psi
    if rhs != s.h1_cotangent:
        raise DecompositionMismatch(
            f"H1 decomposition fails for {g.name}: direct {s.h1_cotangent}, summands {rhs}")
    return s


def h1_cotangent(g: LieAlgebra) -> int:
    return h1_summary(g).h1_cotangent


# ---------------------------------------------------------------------------
# Structure of der(T*g)


def _block_space(n: int, diagonal: bool) -> Subspace:
    """Operators on a 2n-space that are block-diagonal (or block-antidiagonal)."""
    N = 2 * n
    gens = []
    for a, b in product(range(N), repeat=2):
        same = (a < n) == (b < n)
        if same == diagonal:
            v = [Fraction(0)] * (N * N)
            v[a * N + b] = Fraction(1)
            gens.append(v)
    return la.span(N * N, gens)


def embed_cocycle(beta: Matrix) -> Matrix:
    n = len(beta)
    z = Fraction(0)
    return tuple(tuple(z for _ in range(2 * n)) for _ in range(n)) + \
        tuple(tuple(beta[a]) + (z,) * n for a in range(n))


def embed_psi(psi: Matrix) -> Matrix:
    n = len(psi)
    z = Fraction(0)
    return tuple((z,) * n + tuple(psi[a]) for a in range(n)) + \
        tuple(tuple(z for _ in range(2 * n)) for _ in range(n))


@dataclass(frozen=True)
class GradedSplit:
    der: OperatorSpace
    even: OperatorSpace
    odd: OperatorSpace


def graded_split(d: LieAlgebra) -> GradedSplit:
    """Split der(T*g) into block-diagonal (even) and block-antidiagonal (odd) parts.

    Checks dim even + dim odd = dim der, the Z/2 closure of commutators, and
    that cocycles and equivariant maps form abelian subalgebras; a failure
    raises :class:`DecompositionMismatch`.
    """
    g = base_algebra(d)
    n = g.dim
    der = derivations(d)
    even = OperatorSpace(d, "G0", la.intersect(der.space, _block_space(n, True)))
    odd = OperatorSpace(d, "G1", la.intersect(der.space, _block_space(n, False)))
    if even.dim + odd.dim != der.dim:
        raise DecompositionMismatch(f"dim G0 + dim G1 = {even.dim + odd.dim} != dim der = {der.dim}")
    E, O = even.matrices(), odd.matrices()
    for target, left, right, label in ((even, E, E, "[G0,G0]"), (odd, E, O, "[G0,G1]"),
                                       (even, O, O, "[G1,G1]")):
        for a in left:
            for b in right:
                if not target.contains(la.commutator(a, b)):
                    raise DecompositionMismatch(f"{label} is not contained in {target.kind}")
    for space, embed in ((coadjoint_cocycles(g), embed_cocycle), (equivariant_psi(g), embed_psi)):
        mats = [embed(m) for m in space.matrices()]
        for a, b in combinations(mats, 2):
            if not la.is_zero(la.commutator(a, b)):
                raise DecompositionMismatch(f"[{space.kind}, {space.kind}] != 0")
    return GradedSplit(der, even, odd)


def blocks(m: Matrix, n: int) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """(alpha, psi, beta, xi) with phi(x, f) = (alpha x + psi f, beta x + xi f)."""
    alpha = tuple(tuple(m[a][:n]) for a in range(n))
    psi = tuple(tuple(m[a][n:]) for a in range(n))
    beta = tuple(tuple(m[a][:n]) for a in range(n, 2 * n))
    xi = tuple(tuple(m[a][n:]) for a in range(n, 2 * n))
    return alpha, psi, beta, xi


def xi_decomposition_check(d: LieAlgebra) -> bool:
    """For each basis derivation: [xi, ad*_x] = ad*_{alpha x} and xi^T + alpha in J(g)."""
    g = base_algebra(d)
    n = g.dim
    J = adjoint_invariant_J(g)
    for m in derivations(d).matrices():
        alpha, _, _, xi = blocks(m, n)
        for i in range(n):
            lhs = la.commutator(xi, g.coad_basis[i])
            rhs = g.coad_matrix(tuple(alpha[k][i] for k in range(n)))
            if lhs != rhs:
                return False
        if not J.contains(la.mat_add(la.transpose(xi), alpha)):
            return False
    return True
