"""Lie algebras given by structure constants.

A :class:`LieAlgebra` stores ``c[(i, j)] = {k: c_ij^k}`` for ``i < j`` (0-based
internally, 1-based in the JSON format). Brackets, adjoint and coadjoint
matrices, the Killing form, the cotangent algebra and the catalog all derive
from that table.

Operator matrices act on column vectors: column ``j`` of ``ad_matrix(x)`` is
``[x, e_j]``. The coadjoint action is ``ad*_x f = -f o ad_x``, whose matrix in
the dual basis is ``-ad_matrix(x)^T``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg as la
from .errors import AlgebraMismatch, InputError, InvalidParam, JacobiError, UnknownName
from .linalg import Matrix, Subspace, Vector


class LieAlgebra:
    def __init__(self, name: str, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]],
                 basis_labels: Sequence[str] | None = None, check: bool = True):
        if dim < 0:
            raise InputError("dimension must be non-negative")
        self.name = name
        self.dim = dim
        labels = list(basis_labels) if basis_labels is not None else [f"e{i + 1}" for i in range(dim)]
        if len(labels) != dim:
            raise InputError(f"expected {dim} basis labels, got {len(labels)}")
        self.basis_labels = tuple(labels)
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise InputError(f"bracket index ({i + 1},{j + 1}) out of range")
            if i == j:
                if any(la.to_fraction(v) != 0 for v in coeffs.values()):
                    raise InputError(f"[e{i + 1}, e{i + 1}] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            row = table.setdefault((i, j), {})
            for k, v in coeffs.items():
                if not 0 <= k < dim:
                    raise InputError(f"bracket coefficient index {k + 1} out of range")
                row[k] = row.get(k, Fraction(0)) + sign * la.to_fraction(v)
        self._c = {key: {k: v for k, v in sorted(row.items()) if v != 0}
                   for key, row in sorted(table.items())}
        self._c = {key: row for key, row in self._c.items() if row}
        if check:
            self.check_jacobi()

    # -- structure constants -------------------------------------------------

    @property
    def structure_constants(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return {key: dict(row) for key, row in self._c.items()}

    def c(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self._c.get((i, j), {}).get(k, Fraction(0))
        return -self._c.get((j, i), {}).get(k, Fraction(0))

    def basis_bracket(self, i: int, j: int) -> Vector:
        """Coordinates of [e_i, e_j]."""
        return self._bracket_table[i][j]

    @cached_property
    def _bracket_table(self) -> tuple[tuple[Vector, ...], ...]:
        n = self.dim
        return tuple(tuple(tuple(self.c(i, j, k) for k in range(n)) for j in range(n))
                     for i in range(n))

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        x, y = la.as_vector(x), la.as_vector(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise AlgebraMismatch(f"vectors do not belong to {self.name} (dim {self.dim})")
        out = [Fraction(0)] * self.dim
        for (i, j), row in self._c.items():
            w = x[i] * y[j] - x[j] * y[i]
            if w:
                for k, v in row.items():
                    out[k] += w * v
        return tuple(out)

    def check_jacobi(self):
        n = self.dim
        for i, j, k in combinations(range(n), 3):
            s = [Fraction(0)] * n
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.basis_bracket(b, c)
                for m, v in enumerate(inner):
                    if v:
                        for q, w in enumerate(self.basis_bracket(a, m)):
                            s[q] += v * w
            if any(s):
                raise JacobiError((i, j, k), tuple(s))

    # -- operators -------------------------------------------------------------

    @cached_property
    def ad_basis(self) -> tuple[Matrix, ...]:
        n = self.dim
        return tuple(tuple(tuple(self.c(i, j, k) for j in range(n)) for k in range(n))
                     for i in range(n))

    @cached_property
    def coad_basis(self) -> tuple[Matrix, ...]:
        return tuple(la.mat_scale(-1, la.transpose(a)) for a in self.ad_basis)

    def ad_matrix(self, x: Sequence) -> Matrix:
        x = la.as_vector(x)
        if len(x) != self.dim:
            raise AlgebraMismatch(f"vector does not belong to {self.name}")
        if self.dim == 0:
            return ()
        return la.linear_combination(x, self.ad_basis)

    def coad_matrix(self, x: Sequence) -> Matrix:
        return la.mat_scale(-1, la.transpose(self.ad_matrix(x), self.dim))

    # -- comparison / display --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.name, self.dim, self.basis_labels, self._c) == \
            (other.name, other.dim, other.basis_labels, other._c)

    def __hash__(self):
        return hash((self.name, self.dim, self.basis_labels))

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    def nonzero_brackets(self) -> list[tuple[int, int, dict[int, Fraction]]]:
        return [(i, j, dict(row)) for (i, j), row in self._c.items()]

    # -- JSON ------------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis_labels),
            "brackets": [
                {"i": i + 1, "j": j + 1, "coeffs": {str(k + 1): str(v) for k, v in row.items()}}
                for (i, j), row in self._c.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: Mapping) -> "LieAlgebra":
        try:
            dim = int(data["dim"])
            name = str(data.get("name", "g"))
            labels = data.get("basis")
            brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
            for entry in data.get("brackets", []):
                i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
                if i >= j:
                    raise InputError(f"bracket entries must have i < j, got ({i + 1},{j + 1})")
                if (i, j) in brackets:
                    raise InputError(f"duplicate bracket entry ({i + 1},{j + 1})")
                coeffs = {int(k) - 1: _parse_rational(v) for k, v in entry["coeffs"].items()}
                brackets[(i, j)] = coeffs
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed algebra description: {exc}") from exc
        return cls(name, dim, brackets, labels)

    @classmethod
    def from_json(cls, text: str) -> "LieAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InputError("algebra JSON must be an object")
        return cls.from_dict(data)


def _parse_rational(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise InputError(f"rational expected as string or integer, got {v!r}")
    return la.to_fraction(v)


# ---------------------------------------------------------------------------
# Invariants and derived objects


def killing_form(g: LieAlgebra) -> Matrix:
    ads = g.ad_basis
    n = g.dim
    prods = [[la.matmul(ads[i], ads[j]) for j in range(n)] for i in range(n)]
    return tuple(tuple(sum((prods[i][j][k][k] for k in range(n)), Fraction(0)) for j in range(n))
                 for i in range(n))


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    # x central iff [e_i, x] = 0 for all i: stack the ad(e_i) matrices
    rows = [row for a in g.ad_basis for row in a]
    return la.nullspace(rows, n)


def derived_ideal(g: LieAlgebra) -> Subspace:
    n = g.dim
    return la.span(n, [tuple(row.get(k, Fraction(0)) for k in range(n)) for row in g._c.values()])


def is_perfect(g: LieAlgebra) -> bool:
    return derived_ideal(g).dim == g.dim


def is_semisimple(g: LieAlgebra) -> bool:
    """Cartan criterion: the Killing form is nondegenerate."""
    if g.dim == 0:
        return True
    return la.inertia(killing_form(g))[2] == 0


def is_abelian(g: LieAlgebra) -> bool:
    return not g._c


def cotangent(g: LieAlgebra) -> LieAlgebra:
    """The semidirect sum g + g* via the coadjoint action, basis (e_1..e_n, e_1*..e_n*).

    [(x, f), (y, h)] = ([x, y], ad*_x h - ad*_y f).
    """
    n = g.dim
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), row in g._c.items():
        brackets[(i, j)] = dict(row)
    for i in range(n):
        coad = g.coad_basis[i]
        for j in range(n):
            # [e_i, e_j*] = ad*_{e_i} e_j*, the j-th column of coad(e_i)
            col = {n + k: coad[k][j] for k in range(n) if coad[k][j] != 0}
            if col:
                brackets[(i, n + j)] = col
    labels = list(g.basis_labels) + [f"{lab}*" for lab in g.basis_labels]
    return LieAlgebra(f"T*{g.name}", 2 * n, brackets, labels)


def cotangent_base_dim(d: LieAlgebra) -> int | None:
    """Base dimension n if ``d`` has the bracket pattern of a cotangent algebra, else None.

    Requires even dimension, the first half closed under the bracket, the
    second half an abelian ideal, and the mixed brackets equal to the
    coadjoint action of the first half.
    """
    if d.dim % 2:
        return None
    n = d.dim // 2
    for (i, j), row in d._c.items():
        if i < n and j < n:
            if any(k >= n for k in row):
                return None
        elif i >= n and j >= n:
            return None
        else:
            if any(k < n for k in row):
                return None
    base = {(i, j): row for (i, j), row in d._c.items() if j < n}
    try:
        g = LieAlgebra("base", n, base, d.basis_labels[:n], check=False)
    except InputError:
        return None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d.c(i, n + j, n + k) != g.coad_basis[i][k][j]:
                    return None
    return n


def base_algebra(d: LieAlgebra) -> LieAlgebra:
    from .errors import NotCotangent
    n = cotangent_base_dim(d)
    if n is None:
        raise NotCotangent(f"{d.name} does not have the block structure of a cotangent algebra")
    name = d.name[2:] if d.name.startswith("T*") else f"base({d.name})"
    base = {(i, j): row for (i, j), row in d._c.items() if j < n}
    return LieAlgebra(name, n, base, d.basis_labels[:n])


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    n = a.dim
    brackets = {key: dict(row) for key, row in a._c.items()}
    for (i, j), row in b._c.items():
        brackets[(n + i, n + j)] = {n + k: v for k, v in row.items()}
    labels = [f"{lab}" for lab in a.basis_labels] + [f"{lab}'" for lab in b.basis_labels]
    if len(set(labels)) != len(labels):
        labels = [f"e{i + 1}" for i in range(a.dim + b.dim)]
    return LieAlgebra(f"{a.name}+{b.name}", a.dim + b.dim, brackets, labels)


# ---------------------------------------------------------------------------
# Catalog


def abelian(n: int) -> LieAlgebra:
    if n < 0:
        raise InvalidParam("dimension must be non-negative")
    return LieAlgebra(f"abelian{n}", n, {})


def aff_r() -> LieAlgebra:
    return LieAlgebra("aff_r", 2, {(0, 1): {1: 1}})


def sl2() -> LieAlgebra:
    return LieAlgebra("sl2", 3, {(0, 1): {1: -2}, (0, 2): {2: 2}, (1, 2): {0: -1}})


def so3() -> LieAlgebra:
    return LieAlgebra("so3", 3, {(0, 1): {2: -1}, (0, 2): {1: 1}, (1, 2): {0: -1}})


def h3() -> LieAlgebra:
    return LieAlgebra("h3", 3, {(0, 1): {2: 1}})


def oscillator(lam=1) -> LieAlgebra:
    """4-dimensional oscillator algebra, basis (e_-1, e_0, e_1, ě_1)."""
    lam = la.to_fraction(lam)
    if lam <= 0:
        raise InvalidParam("oscillator parameter lambda must be positive")
    return LieAlgebra(f"oscillator({lam})", 4,
                      {(0, 2): {3: lam}, (0, 3): {2: -lam}, (2, 3): {1: 1}},
                      ["e_-1", "e_0", "e_1", "ce_1"])


CATALOG_NAMES = ("abelian", "aff_r", "sl2", "so3", "h3", "oscillator")


def catalog(name: str, **params) -> LieAlgebra:
    if name == "abelian":
        return abelian(int(params.get("n", 1)))
    if name == "aff_r":
        return aff_r()
    if name == "sl2":
        return sl2()
    if name == "so3":
        return so3()
    if name == "h3":
        return h3()
    if name == "oscillator":
        return oscillator(params.get("lam", params.get("lambda", 1)))
    raise UnknownName(f"unknown catalog algebra {name!r}; known: {', '.join(CATALOG_NAMES)}")
