"""Floating-point geometry of Aff(R)_0 and of its double T*Aff(R)_0.

Coordinates: an element of Aff(R)_0 is ``(a, b)`` acting as ``x -> a x + b``
with ``a > 0``. The double is R x| H3 with coordinates ``(x1, x2, x3, x4)``
and Lie algebra basis e1..e4, [e1,e2]=e2, [e1,e4]=-e4, [e2,e4]=e3, which is
``cotangent(aff_r())`` with e3 = e1*, e4 = e2*.

Christoffel symbols are stored 0-based as ``G[i][j][k] = Gamma_{ij}^k`` with
``nabla_{e_i} e_j = Gamma_{ij}^k e_k``; geodesics solve
``x''_k + Gamma_{ij}^k x'_i x'_j = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import linalg as la
from .algebra import aff_r, cotangent
from .errors import DomainError, NotInvertibleHere

EXACT_BRANCH = 1e-12
TAYLOR_BRANCH = 1e-6


class AffElement(NamedTuple):
    a: float
    b: float


class AffTangent(NamedTuple):
    xi1: float
    xi2: float


class DoubleElement(NamedTuple):
    x1: float
    x2: float
    x3: float
    x4: float


class DoubleTangent(NamedTuple):
    xi1: float
    xi2: float
    xi3: float
    xi4: float


IDENTITY = AffElement(1.0, 0.0)
DOUBLE_IDENTITY = DoubleElement(0.0, 0.0, 0.0, 0.0)


def _e1(x: float) -> float:
    """(e^x - 1) / x."""
    ax = abs(x)
    if ax < EXACT_BRANCH:
        return 1.0
    if ax < TAYLOR_BRANCH:
        return 1.0 + x / 2 + x * x / 6
    return math.expm1(x) / x


def _e2(x: float) -> float:
    """(e^-x - 1 + x) / x^2."""
    ax = abs(x)
    if ax < EXACT_BRANCH:
        return 0.5
    if ax < TAYLOR_BRANCH:
        return 0.5 - x / 6 + x * x / 24
    return (math.expm1(-x) + x) / (x * x)


# ---------------------------------------------------------------------------
# Aff(R)_0


def _aff(p) -> AffElement:
    p = AffElement(*map(float, p))
    if not p.a > 0:
        raise DomainError(f"a = {p.a} is outside the identity component (a > 0)")
    return p


def aff_mul(p, q) -> AffElement:
    p, q = _aff(p), _aff(q)
    return AffElement(p.a * q.a, p.a * q.b + p.b)


def aff_inv(p) -> AffElement:
    p = _aff(p)
    return AffElement(1 / p.a, -p.b / p.a)


def aff_exp(xi) -> AffElement:
    xi = AffTangent(*map(float, xi))
    return AffElement(math.exp(xi.xi1), xi.xi2 * _e1(xi.xi1))


def aff_log(p) -> AffTangent:
    p = _aff(p)
    s = math.log(p.a)
    return AffTangent(s, p.b / _e1(s))


def aff_integral_curve(xi, t: float) -> AffElement:
    """Integral curve through the identity of the left-invariant field of xi."""
    xi = AffTangent(*xi)
    return aff_exp((t * xi.xi1, t * xi.xi2))


def symplectic_form():
    """omega_0 with omega_0(e1, e2) = 1."""
    return la.as_matrix([[0, 1], [-1, 0]])


def aff_geodesic(xi, t: float) -> AffElement:
    """Geodesic of the affine structure through the identity with velocity xi.

    gamma(t) = (1 - ln|xi1 t - 1|, -(xi2/xi1) ln|xi1 t - 1|), or (1, xi2 t)
    when xi1 = 0. Defined for t != 1/xi1 with |xi1 t - 1| < e, where the
    first coordinate stays positive.
    """
    xi = AffTangent(*xi)
    if xi.xi1 == 0:
        return AffElement(1.0, xi.xi2 * t)
    u = xi.xi1 * t - 1
    if u == 0 or abs(u) >= math.e:
        raise DomainError(f"t = {t} is outside the geodesic domain for xi1 = {xi.xi1}")
    # log1p keeps -ln(1 - xi1 t)/xi1 accurate for small xi1
    ln = math.log1p(-xi.xi1 * t) if u < 0 else math.log(u)
    return AffElement(1 - ln, -(xi.xi2 / xi.xi1) * ln)


def aff_exp_connection(xi) -> AffElement:
    """Exp_e(xi) = gamma_xi(1)."""
    return aff_geodesic(xi, 1.0)


def aff_log_connection(p) -> AffTangent:
    """Inverse of Exp_e; it only exists on the slice {(1, x)}."""
    p = _aff(p)
    if not math.isclose(p.a, 1.0, rel_tol=0.0, abs_tol=EXACT_BRANCH):
        raise NotInvertibleHere("Log_e is only defined on points (1, x)")
    return AffTangent(0.0, p.b)


# ---------------------------------------------------------------------------
# Connections and geodesic integration


@dataclass(frozen=True)
class Connection:
    christoffel: np.ndarray

    @property
    def dim(self) -> int:
        return self.christoffel.shape[0]

    def symbol(self, i: int, j: int, k: int) -> float:
        """Gamma_{ij}^k with 1-based indices."""
        return float(self.christoffel[i - 1, j - 1, k - 1])

    def nonzero(self) -> dict[tuple[int, int, int], int]:
        G = self.christoffel
        return {(int(i) + 1, int(j) + 1, int(k) + 1): int(G[i, j, k]) for i, j, k in zip(*np.nonzero(G))}

    def acceleration(self, v: np.ndarray) -> np.ndarray:
        return -np.einsum("ijk,i,j->k", self.christoffel, v, v)


def _connection(n: int, symbols: dict) -> Connection:
    G = np.zeros((n, n, n))
    for (i, j, k), v in symbols.items():
        G[i - 1, j - 1, k - 1] = v
    G.setflags(write=False)
    return Connection(G)


def aff_connection() -> Connection:
    """nabla_{e1} e1 = -e1, nabla_{e2} e1 = -e2, the rest zero."""
    return _connection(2, {(1, 1, 1): -1, (2, 1, 2): -1})


def double_connection() -> Connection:
    return _connection(4, {
        (1, 1, 1): -1, (1, 3, 2): 1, (1, 4, 1): -1, (1, 4, 4): -1,
        (2, 1, 2): -1, (2, 4, 3): 1, (3, 1, 2): 1, (3, 4, 3): -1,
        (4, 1, 1): -1, (4, 1, 4): -1, (4, 2, 3): 1, (4, 4, 4): -1,
    })


def geodesic_integrate(conn: Connection, x0: Sequence[float], v0: Sequence[float],
                       t_end: float, steps: int = 1000) -> list[tuple[float, ...]]:
    """Fixed-step RK4 for x'' = -Gamma(x', x'); rows are (t, x_1, ..., x_n)."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    n = conn.dim
    y = np.concatenate([np.asarray(x0, float), np.asarray(v0, float)])
    h = t_end / steps

    def f(y):
        return np.concatenate([y[n:], conn.acceleration(y[n:])])

    out = [(0.0, *y[:n].tolist())]
    for s in range(1, steps + 1):
        k1 = f(y)
        k2 = f(y + h / 2 * k1)
        k3 = f(y + h / 2 * k2)
        k4 = f(y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append((s * h, *y[:n].tolist()))
    return out


def aff_geodesic_integrate(xi, t_end: float, steps: int = 1000):
    return geodesic_integrate(aff_connection(), IDENTITY, AffTangent(*xi), t_end, steps)


def double_geodesic_integrate(xi, t_end: float = 1.0, steps: int = 1000):
    return geodesic_integrate(double_connection(), DOUBLE_IDENTITY, DoubleTangent(*xi), t_end, steps)


def richardson_factor(xi, t_end: float = 1.0, steps: int = 20) -> float:
    """Ratio of successive endpoint changes under step halving; about 16 for RK4."""
    ends = [np.array(double_geodesic_integrate(xi, t_end, steps * 2 ** r)[-1][1:]) for r in range(3)]
    return float(np.max(np.abs(ends[0] - ends[1])) / np.max(np.abs(ends[1] - ends[2])))


# ---------------------------------------------------------------------------
# The double group


def _dbl(x) -> DoubleElement:
    return DoubleElement(*map(float, x))


def double_mul(x, y) -> DoubleElement:
    x, y = _dbl(x), _dbl(y)
    return DoubleElement(
        x.x1 + y.x1,
        x.x2 + y.x2 * math.exp(x.x1),
        x.x3 + y.x3 + x.x2 * y.x4 * math.exp(-x.x1),
        x.x4 + y.x4 * math.exp(-x.x1),
    )


def double_inv(x) -> DoubleElement:
    x = _dbl(x)
    return DoubleElement(-x.x1, -x.x2 * math.exp(-x.x1), -x.x3 + x.x2 * x.x4, -x.x4 * math.exp(x.x1))


def double_exp(xi) -> DoubleElement:
    xi = DoubleTangent(*map(float, xi))
    s = xi.xi1
    return DoubleElement(s, xi.xi2 * _e1(s), xi.xi3 + xi.xi2 * xi.xi4 * _e2(s), xi.xi4 * _e1(-s))


def double_log(x) -> DoubleTangent:
    x = _dbl(x)
    s = x.x1
    xi2 = x.x2 / _e1(s)
    xi4 = x.x4 / _e1(-s)
    return DoubleTangent(s, xi2, x.x3 - xi2 * xi4 * _e2(s), xi4)


def heis_exp(xi):
    """Exponential of the Heisenberg group, coordinates (xi2, xi3, xi4).

    Works on any number type; Fraction input gives exact results.
    """
    a, b, c = xi
    return (a, b + a * c / 2, c)


def heis_log(y):
    a, b, c = y
    return (a, b - a * c / 2, c)


# ---------------------------------------------------------------------------
# Left-invariant complex structure


def complex_structure_identity():
    """j at the identity: e1 -> e4, e2 -> -e3, e3 -> e2, e4 -> -e1."""
    m = [[Fraction(0)] * 4 for _ in range(4)]
    m[3][0] = Fraction(1)
    m[2][1] = Fraction(-1)
    m[1][2] = Fraction(1)
    m[0][3] = Fraction(-1)
    return la.as_matrix(m)


def complex_structure_checks() -> dict:
    """j^2 = -Id, and the witness j[e1,e2] != [e1, j e2] that j is not bi-invariant."""
    j = complex_structure_identity()
    d = cotangent(aff_r())
    e1, e2 = d.basis_vector(0), d.basis_vector(1)
    j_bracket = la.matvec(j, d.bracket(e1, e2))
    bracket_j = d.bracket(e1, la.matvec(j, e2))
    return {
        "j_squared_is_minus_identity": la.matmul(j, j) == la.mat_scale(-1, la.identity(4)),
        "j_bracket_e1_e2": j_bracket,
        "bracket_e1_j_e2": bracket_j,
        "bi_invariant": j_bracket == bracket_j,
    }
