"""Ad-invariant symmetric bilinear forms and the operators they single out.

A form is stored as its full symmetric Gram matrix ``B`` with
``B[i][j] = mu(e_i, e_j)``. Ad-invariance ``mu([x,y],z) + mu(y,[x,z]) = 0``
reads ``B.ad_x + ad_x^T.B = 0`` in matrix form, which is also the statement
that ``theta = B`` intertwines the adjoint and coadjoint actions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .algebra import LieAlgebra, base_algebra, cotangent, cotangent_base_dim, is_semisimple, killing_form
from .errors import Degenerate, DimensionMismatch, NotCotangent, NotOrthogonal, NotSimple, NotSymmetric
from .linalg import Matrix, Subspace
from .operators import OperatorSpace, _acc, _System, adjoint_invariant_J, inner_derivations, prederivations


@dataclass(frozen=True)
class BilinearForm:
    algebra: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        m = la.as_matrix(self.matrix)
        n = self.algebra.dim
        if la.shape(m) != (n, n):
            raise DimensionMismatch(f"form matrix must be {n}x{n}, got {la.shape(m)}")
        if not la.is_symmetric(m):
            raise NotSymmetric("form matrix is not symmetric")
        object.__setattr__(self, "matrix", m)

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(la.as_vector(x), la.matvec(self.matrix, la.as_vector(y)))),
                   Fraction(0))

    def radical(self) -> Subspace:
        return la.nullspace(self.matrix)


@dataclass(frozen=True)
class FormSpace:
    algebra: LieAlgebra
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrices(self) -> list[Matrix]:
        return [la.unflatten(v, self.algebra.dim) for v in self.space.basis]

    def forms(self) -> list[BilinearForm]:
        return [BilinearForm(self.algebra, m) for m in self.matrices()]

    def contains(self, m) -> bool:
        if isinstance(m, BilinearForm):
            m = m.matrix
        return self.space.contains(la.flatten(la.as_matrix(m)))

    def combination(self, coeffs: Sequence) -> BilinearForm:
        if len(coeffs) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coefficients, got {len(coeffs)}")
        coeffs = [la.to_fraction(c) for c in coeffs]
        return BilinearForm(self.algebra, la.linear_combination(coeffs, self.matrices()))


def _is_invariant(g: LieAlgebra, b: Matrix) -> bool:
    for ad in g.ad_basis:
        if not la.is_zero(la.mat_add(la.matmul(b, ad), la.matmul(la.transpose(ad), b))):
            return False
    return True


def invariant_forms(g: LieAlgebra) -> FormSpace:
    n = g.dim
    sys = _System(n)
    for a in range(n):
        for b in range(a + 1, n):
            sys.add({(a, b): Fraction(1), (b, a): Fraction(-1)})
    for ad in g.ad_basis:
        for a in range(n):
            for b in range(n):
                terms: dict = {}
                for m in range(n):
                    _acc(terms, (a, m), ad[m][b])
                    _acc(terms, (m, b), ad[m][a])
                sys.add(terms)
    return FormSpace(g, sys.solve())


def form_inertia(b: BilinearForm) -> tuple[int, int, int]:
    return la.inertia(b.matrix)


def is_orthogonal_structure(b: BilinearForm) -> bool:
    return _is_invariant(b.algebra, b.matrix) and form_inertia(b)[2] == 0


def theta_equivariance_check(b: BilinearForm) -> bool:
    """theta o ad_x = ad*_x o theta for the map theta: g -> g* induced by b."""
    if form_inertia(b)[2] > 0:
        raise Degenerate("form is degenerate, theta is not an isomorphism")
    g = b.algebra
    for ad, coad in zip(g.ad_basis, g.coad_basis):
        if la.matmul(b.matrix, ad) != la.matmul(coad, b.matrix):
            return False
    return True


def skew_prederivations(g: LieAlgebra, b: BilinearForm) -> OperatorSpace:
    """Prederivations p with b(px, y) + b(x, py) = 0."""
    if b.algebra != g:
        b = BilinearForm(g, b.matrix)
    if not is_orthogonal_structure(b):
        raise NotOrthogonal("form is not an orthogonal structure on " + g.name)
    n = g.dim
    B = b.matrix
    sys = _System(n)
    for r in range(n):
        for s in range(r, n):
            terms: dict = {}
            for m in range(n):
                _acc(terms, (m, s), B[r][m])
                _acc(terms, (m, r), B[m][s])
            sys.add(terms)
    skew = sys.solve()
    return OperatorSpace(g, "skewpder", la.intersect(prederivations(g).space, skew))


# ---------------------------------------------------------------------------
# Named forms


def duality_pairing(d: LieAlgebra) -> BilinearForm:
    """<(x,f),(y,g)> = f(y) + g(x) on a cotangent algebra."""
    n = cotangent_base_dim(d)
    if n is None:
        raise NotCotangent(f"{d.name} does not have the block structure of a cotangent algebra")
    N = 2 * n
    one, zero = Fraction(1), Fraction(0)
    m = tuple(tuple(one if abs(a - b) == n else zero for b in range(N)) for a in range(N))
    form = BilinearForm(d, m)
    assert _is_invariant(d, m) and form_inertia(form) == (n, n, 0)
    return form


def killing_extended(d: LieAlgebra) -> BilinearForm:
    """Killing form of the base pulled back along T*g -> g."""
    g = base_algebra(d)
    n = g.dim
    k = killing_form(g)
    z = Fraction(0)
    m = tuple(tuple(k[a][b] if a < n and b < n else z for b in range(2 * n)) for a in range(2 * n))
    return BilinearForm(d, m)


def mu_ab(d: LieAlgebra, a, b) -> BilinearForm:
    """a * duality pairing + b * extended Killing form.

    On T*aff(R) this is a<(x,f),(y,g)> + b x1 y1, on T*sl2 the second term is
    4b(2 x1 y1 + x2 y3 + x3 y2).
    """
    a, b = la.to_fraction(a), la.to_fraction(b)
    m = la.mat_add(la.mat_scale(a, duality_pairing(d).matrix), la.mat_scale(b, killing_extended(d).matrix))
    return BilinearForm(d, m)


def oscillator_form(lam=1) -> Matrix:
    """x^-1 y^0 + x^0 y^-1 + (x^1 y^1 + xc^1 yc^1) / lam on the oscillator algebra."""
    lam = la.to_fraction(lam)
    m = [[Fraction(0)] * 4 for _ in range(4)]
    m[0][1] = m[1][0] = Fraction(1)
    m[2][2] = m[3][3] = 1 / lam
    return la.as_matrix(m)


def oscillator_cotangent_form(lam, A, B, C, D, E) -> Matrix:
    """A.duality + B.mu_lam(x,y) + C(x^-1 g^0 + y^-1 f^0) + D x^-1 y^-1 + E f^0 g^0."""
    A, B, C, D, E = (la.to_fraction(v) for v in (A, B, C, D, E))
    mu = oscillator_form(lam)
    m = [[Fraction(0)] * 8 for _ in range(8)]
    for i in range(4):
        m[i][i + 4] = m[i + 4][i] = A
        for j in range(4):
            m[i][j] += B * mu[i][j]
    m[0][5] += C
    m[5][0] += C
    m[0][0] += D
    m[5][5] += E
    return la.as_matrix(m)


def semisimple_cotangent_form_family_check(g: LieAlgebra) -> bool:
    """Invariant forms on T*g are exactly span{duality pairing, extended Killing form}."""
    if not is_semisimple(g) or adjoint_invariant_J(g).dim != 1:
        raise NotSimple(f"{g.name} is not simple")
    d = cotangent(g)
    forms = invariant_forms(d)
    expected = la.span(forms.space.ambient_dim, [la.flatten(duality_pairing(d).matrix),
                                                 la.flatten(killing_extended(d).matrix)])
    return forms.dim == 2 and la.equals(forms.space, expected)


def skew_equals_inner(d: LieAlgebra, b: BilinearForm) -> bool:
    return la.equals(skew_prederivations(d, b).space, inner_derivations(d).space)
