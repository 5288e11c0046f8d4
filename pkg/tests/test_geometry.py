import math
import random
from fractions import Fraction
from itertools import product

import pytest

from liecot import geometry as geo
from liecot import linalg as la
from liecot.algebra import aff_r, cotangent
from liecot.errors import DomainError, NotInvertibleHere

rng = random.Random(7)


def close(p, q, tol):
    return max(abs(a - b) for a, b in zip(p, q)) < tol


# -- Aff(R)_0 ---------------------------------------------------------------


def test_aff_group_law():
    assert geo.aff_mul((1, 0), (3.5, -2)) == (3.5, -2)
    assert geo.aff_mul((2, 1), (3, 4)) == (6, 9)
    for _ in range(100):
        p = (rng.uniform(0.1, 5), rng.uniform(-5, 5))
        assert close(geo.aff_mul(p, geo.aff_inv(p)), (1, 0), 1e-12)
        assert close(geo.aff_mul(geo.aff_inv(p), p), (1, 0), 1e-12)


def test_aff_rejects_other_component():
    with pytest.raises(DomainError):
        geo.aff_mul((-1, 0), (1, 0))


def test_aff_exp_log_examples():
    assert geo.aff_exp((0, 5)) == (1, 5)
    assert close(geo.aff_exp((1, 0)), (math.e, 0), 1e-15)
    assert geo.aff_log((1, 7)) == (0, 7)


def test_aff_exp_is_one_parameter_subgroup():
    for _ in range(200):
        xi = (rng.uniform(-2, 2), rng.uniform(-2, 2))
        s, t = rng.uniform(-1, 1), rng.uniform(-1, 1)
        lhs = geo.aff_exp(((s + t) * xi[0], (s + t) * xi[1]))
        rhs = geo.aff_mul(geo.aff_exp((s * xi[0], s * xi[1])), geo.aff_exp((t * xi[0], t * xi[1])))
        assert close(lhs, rhs, 1e-9)


def test_aff_exp_is_integral_curve():
    # d/dt exp(t xi) = dL_{exp(t xi)} xi = (a xi1, a xi2) at (a, b)
    h = 1e-6
    for _ in range(20):
        xi = (rng.uniform(-2, 2), rng.uniform(-2, 2))
        t = rng.uniform(-1, 1)
        p = geo.aff_integral_curve(xi, t)
        fwd, back = geo.aff_integral_curve(xi, t + h), geo.aff_integral_curve(xi, t - h)
        deriv = [(u - v) / (2 * h) for u, v in zip(fwd, back)]
        assert close(deriv, (p.a * xi[0], p.a * xi[1]), 1e-6)


def test_series_branches_are_continuous():
    def e2_series(x):
        return sum((-x) ** k / math.factorial(k + 2) for k in range(30))

    for x in (0.0, 1e-13, -1e-13, 3e-7, -3e-7, 2e-6, -2e-6, 0.01, 1.5):
        e1 = geo._e1(x)
        ref = 1.0 if x == 0 else math.expm1(x) / x
        # below 1e-12 the exact branch is off by at most |x|/2
        assert abs(e1 - ref) < 1e-12
        assert abs(geo._e2(x) - e2_series(x)) < 1e-9


def test_symplectic_form():
    w = geo.symplectic_form()
    assert w[0][1] == 1 and w[1][0] == -1 and w[0][0] == w[1][1] == 0
    assert la.inertia(la.zeros(2)) == (0, 0, 2)
    assert la.rank(w) == 2


def test_connection_defined_by_symplectic_form():
    # omega(nabla_{e_i} e_j, e_k) = -omega(e_j, [e_i, e_k])
    w = geo.symplectic_form()
    G = geo.aff_connection()
    g = aff_r()

    def om(x, y):
        return sum(x[a] * w[a][b] * y[b] for a in range(2) for b in range(2))

    for i, j, k in product(range(2), repeat=3):
        nab = [G.symbol(i + 1, j + 1, m + 1) for m in range(2)]
        ek = g.basis_vector(k)
        assert om(nab, ek) == -om(g.basis_vector(j), g.bracket(g.basis_vector(i), ek))


def test_geodesic_examples():
    assert geo.aff_geodesic((0, 3), 2.5) == (1, 7.5)
    p = geo.aff_geodesic((0.5, 1), 1.0)
    assert close(p, (1 + math.log(2), 2 * math.log(2)), 1e-14)


def test_geodesic_initial_conditions():
    h = 1e-6
    for xi in ((0.5, 1), (-0.7, 0.3), (1.3, -2)):
        assert close(geo.aff_geodesic(xi, 0.0), (1, 0), 1e-15)
        fwd, back = geo.aff_geodesic(xi, h), geo.aff_geodesic(xi, -h)
        assert close([(u - v) / (2 * h) for u, v in zip(fwd, back)], xi, 1e-8)


def test_geodesic_domain():
    with pytest.raises(DomainError):
        geo.aff_geodesic((0.5, 1), 2.0)
    with pytest.raises(DomainError):
        geo.aff_geodesic((1, 1), (1 + math.e) + 0.01)
    with pytest.raises(DomainError):
        geo.aff_geodesic((1, 1), 1 - math.e - 0.01)
    # past the singularity the closed form still has positive first coordinate
    assert geo.aff_geodesic((1, 1), 2.0).a > 0


def rk4_oracle(xi, t_end, steps):
    """Plain scalar RK4 for y1'' = y1'^2, y2'' = y1' y2'."""
    y1, y2, v1, v2 = 1.0, 0.0, float(xi[0]), float(xi[1])
    h = t_end / steps

    def f(s):
        a, b, c, d = s
        return (c, d, c * c, c * d)

    s = (y1, y2, v1, v2)
    for _ in range(steps):
        k1 = f(s)
        k2 = f(tuple(x + h / 2 * k for x, k in zip(s, k1)))
        k3 = f(tuple(x + h / 2 * k for x, k in zip(s, k2)))
        k4 = f(tuple(x + h * k for x, k in zip(s, k3)))
        s = tuple(x + h / 6 * (a + 2 * b + 2 * c + d) for x, a, b, c, d in zip(s, k1, k2, k3, k4))
    return s[:2]


def test_geodesic_vs_independent_rk4():
    for xi in ((0.5, 1), (-0.8, 0.4), (0.9, -1.2)):
        t_end = 0.8 / xi[0] if xi[0] > 0 else 1.0
        assert close(rk4_oracle(xi, t_end, 2000), geo.aff_geodesic(xi, t_end), 1e-9)
        traj = geo.aff_geodesic_integrate(xi, t_end, 2000)
        assert close(traj[-1][1:], rk4_oracle(xi, t_end, 2000), 1e-12)


def test_geodesic_and_integral_curve_share_a_line():
    # both satisfy a = (xi1/xi2) b + 1
    for _ in range(20):
        xi = (rng.uniform(0.1, 1), rng.uniform(0.1, 1) * rng.choice((-1, 1)))
        for t in (0.1, 0.4, 0.7):
            for p in (geo.aff_geodesic(xi, t / xi[0]), geo.aff_integral_curve(xi, t)):
                assert abs(p.a - (xi[0] / xi[1] * p.b + 1)) < 1e-9


def test_connection_exponential():
    assert geo.aff_exp_connection((0, 4)) == (1, 4)
    assert geo.aff_log_connection((1, 3)) == (0, 3)
    with pytest.raises(NotInvertibleHere):
        geo.aff_log_connection((2, 0))
    with pytest.raises(DomainError):
        geo.aff_exp_connection((1, 2))


# -- the double -----------------------------------------------------------


def rand4(lo=-2, hi=2):
    return tuple(rng.uniform(lo, hi) for _ in range(4))


def test_double_group_law():
    x = rand4()
    assert geo.double_mul(geo.DOUBLE_IDENTITY, x) == x
    assert close(geo.double_mul((1, 1, 0, 0), (0, 0, 0, 1)), (1, 1, math.exp(-1), math.exp(-1)), 1e-15)
    for _ in range(200):
        x, y, z = rand4(), rand4(), rand4()
        assert close(geo.double_mul(x, geo.double_inv(x)), (0, 0, 0, 0), 1e-12)
        assert close(geo.double_mul(geo.double_mul(x, y), z), geo.double_mul(x, geo.double_mul(y, z)), 1e-10)


def test_double_exp_log_examples():
    assert geo.double_exp((0, 2, 1, 3)) == (0, 2, 4, 3)
    assert geo.double_log((0, 2, 1, 3)) == (0, 2, -2, 3)


def test_double_round_trip():
    for _ in range(500):
        xi = (rng.choice((-1, 1)) * rng.uniform(0.1, 3),) + rand4()[1:]
        assert close(geo.double_log(geo.double_exp(xi)), xi, 1e-10)
        x = rand4()
        assert close(geo.double_exp(geo.double_log(x)), x, 1e-10)
    for s in (1e-13, 5e-7, 2e-6):
        xi = (s, 1.5, -0.5, 2.0)
        assert close(geo.double_log(geo.double_exp(xi)), xi, 1e-12)


def test_double_exp_is_integral_curve():
    h = 1e-6
    for _ in range(20):
        xi = rand4()
        t = rng.uniform(-1, 1)
        p = geo.double_exp([t * v for v in xi])
        fwd = geo.double_exp([(t + h) * v for v in xi])
        back = geo.double_exp([(t - h) * v for v in xi])
        deriv = [(u - v) / (2 * h) for u, v in zip(fwd, back)]
        # left translation of xi to p
        left = [(u - v) / (2 * h) for u, v in zip(geo.double_mul(p, [h * v for v in xi]),
                                                     geo.double_mul(p, [-h * v for v in xi]))]
        assert close(deriv, left, 1e-6)


def test_double_subgroup_law():
    for _ in range(200):
        xi = rand4()
        s, t = rng.uniform(-1, 1), rng.uniform(-1, 1)
        lhs = geo.double_exp([(s + t) * v for v in xi])
        rhs = geo.double_mul(geo.double_exp([s * v for v in xi]), geo.double_exp([t * v for v in xi]))
        assert close(lhs, rhs, 1e-9)


def test_heisenberg_exact():
    assert geo.heis_exp((0, 0, 0)) == (0, 0, 0)
    assert geo.heis_exp((2, 0, 3)) == (2, 3, 3)
    for _ in range(100):
        xi = tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(3))
        assert geo.heis_log(geo.heis_exp(xi)) == xi
        assert geo.heis_exp(geo.heis_log(xi)) == xi


def test_heisenberg_is_the_double_at_x1_zero():
    xi = (0.0, 1.25, -0.5, 3.0)
    assert geo.double_exp(xi)[1:] == geo.heis_exp(xi[1:])


def test_double_christoffel_table():
    G = geo.double_connection()
    assert G.symbol(1, 1, 1) == -1 and G.symbol(2, 4, 3) == 1 and G.symbol(4, 4, 4) == -1
    assert len(G.nonzero()) == 12


def test_double_geodesic_system():
    # x1'' = x1'^2 + 2 x1' x4', and so on; compare the tensor with the written ODEs
    G = geo.double_connection()
    v = [0.3, -0.7, 1.1, 0.4]
    acc = G.acceleration(v)
    expected = [v[0] ** 2 + 2 * v[0] * v[3], v[0] * v[1] - 2 * v[0] * v[2],
                v[2] * v[3] - 2 * v[1] * v[3], v[3] ** 2 + 2 * v[0] * v[3]]
    assert close(acc, expected, 1e-15)


def test_double_geodesic_trivial_and_order():
    traj = geo.double_geodesic_integrate((0, 0, 0, 0), 1.0, 10)
    assert all(row[1:] == (0, 0, 0, 0) for row in traj)
    assert 12 <= geo.richardson_factor((0.3, 0.1, 0.0, 0.2), 1.0, 20) <= 20
    with pytest.raises(ValueError):
        geo.double_geodesic_integrate((1, 0, 0, 0), 1.0, 0)


def test_complex_structure():
    j = geo.complex_structure_identity()
    assert la.matmul(j, j) == la.mat_scale(-1, la.identity(4))
    d = cotangent(aff_r())
    assert la.matvec(j, d.basis_vector(0)) == d.basis_vector(3)
    r = geo.complex_structure_checks()
    assert r["j_bracket_e1_e2"] == la.mat_scale(-1, (d.basis_vector(2),))[0]
    assert not any(r["bracket_e1_j_e2"])
    assert r["bi_invariant"] is False
