"""Acceptance criteria, one test each. Every test prints a single PASS/FAIL line."""
import math
import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from liecot import geometry as geo
from liecot import linalg as la
from liecot import metrics as mt
from liecot import operators as ops
from liecot import tables
from liecot.algebra import abelian, aff_r, cotangent, direct_sum, h3, killing_form, oscillator, sl2, so3

CATALOG = [abelian(1), abelian(2), abelian(3), aff_r(), sl2(), so3(), h3(), oscillator(1), oscillator(2)]


@pytest.fixture
def verdict(capsys, request):
    def emit(ok, detail=""):
        with capsys.disabled():
            print(f"\n[{request.node.name}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


def _all_in(space, table, n):
    return all(space.contains(m) for m in tables.matrices(table, n))


def test_criterion_01_der_cotangent_aff(verdict):
    der = ops.derivations(cotangent(aff_r()))
    verdict(der.dim == 5 and _all_in(der, tables.AFF_DERIVATIONS, 4), f"dim der = {der.dim}")


def test_criterion_02_der_cotangent_so3_sl2(verdict):
    d_so3 = ops.derivations(cotangent(so3()))
    d_sl2 = ops.derivations(cotangent(sl2()))
    ok = (d_so3.dim == 7 and d_sl2.dim == 7 and _all_in(d_so3, tables.SO3_DERIVATIONS, 6)
          and _all_in(d_sl2, tables.SL2_DERIVATIONS, 6))
    verdict(ok, f"so3 {d_so3.dim}, sl2 {d_sl2.dim}")


def test_criterion_03_pder_equals_der_semisimple(verdict):
    eq = [la.equals(ops.prederivations(cotangent(g)).space, ops.derivations(cotangent(g)).space)
          for g in (sl2(), so3())]
    verdict(all(eq), f"sl2 {eq[0]}, so3 {eq[1]}")


def test_criterion_04_pder_oscillator(verdict):
    p = ops.prederivations(cotangent(oscillator(1)))
    verdict(p.dim == 13 and _all_in(p, tables.oscillator_prederivations(1), 8), f"dim Pder = {p.dim}")


def test_criterion_05_h1_values(verdict):
    got = [ops.h1_cotangent(g) for g in (sl2(), so3(), direct_sum(sl2(), so3()), direct_sum(so3(), abelian(1)))]
    verdict(got == [1, 1, 2, 5], f"{got}")


def test_criterion_06_h1_decomposition(verdict):
    bad = []
    for g in CATALOG:
        s = ops.h1_summary(g)
        if s.h1_cotangent != s.h1_adjoint + s.dim_J + s.h1_coadjoint + s.dim_psi:
            bad.append(g.name)
    verdict(not bad, f"{len(CATALOG)} algebras" + (f", fails {bad}" if bad else ""))


def test_criterion_07_killing_sl2(verdict):
    k = killing_form(sl2())
    verdict(k == la.as_matrix([[8, 0, 0], [0, 0, 4], [0, 4, 0]]), str([[str(x) for x in r] for r in k]))


def test_criterion_08_invariant_form_dims(verdict):
    got = [mt.invariant_forms(g).dim for g in
           (cotangent(aff_r()), cotangent(sl2()), cotangent(oscillator(1)), oscillator(1))]
    verdict(got == [2, 2, 5, 2], f"{got}")


def test_criterion_09_inertia(verdict):
    ok = all(mt.form_inertia(mt.duality_pairing(cotangent(g))) == (g.dim, g.dim, 0) for g in CATALOG)
    daff, dsl2 = cotangent(aff_r()), cotangent(sl2())
    for a, b in product((1, -1, 3), (-2, 0, 5)):
        ok = ok and mt.form_inertia(mt.mu_ab(daff, a, b)) == (2, 2, 0)
        ok = ok and mt.form_inertia(mt.mu_ab(dsl2, a, b)) == (3, 3, 0)
    verdict(ok, "duality (n,n,0); mu_ab (2,2,0), (3,3,0)")


def test_criterion_10_skew_prederivations(verdict):
    d = cotangent(sl2())
    inner = ops.inner_derivations(d).space
    ok = True
    for a, b in ((1, 0), (1, 1), (-2, 3), (Fraction(1, 2), -5)):
        s = mt.skew_prederivations(d, mt.mu_ab(d, a, b))
        ok = ok and s.dim == 6 and la.equals(s.space, inner)
    daff = cotangent(aff_r())
    expected = la.span(16, [la.flatten(m) for m in tables.matrices(tables.AFF_SKEW, 4)])
    for a, b in ((1, 0), (2, 7), (-1, -2)):
        s = mt.skew_prederivations(daff, mt.mu_ab(daff, a, b))
        ok = ok and s.dim == 3 and la.equals(s.space, expected)
    verdict(ok, "T*sl2 -> inner (dim 6); T*aff -> span(phi1, phi2, phi4)")


def test_criterion_11_graded_split(verdict):
    ok = True
    for g in CATALOG:
        split = ops.graded_split(cotangent(g))
        E, O = split.even.matrices(), split.odd.matrices()
        ok = ok and split.even.dim + split.odd.dim == split.der.dim
        ok = ok and all(split.even.contains(la.commutator(a, b)) for a in E for b in E)
        ok = ok and all(split.odd.contains(la.commutator(a, b)) for a in E for b in O)
        ok = ok and all(split.even.contains(la.commutator(a, b)) for a in O for b in O)
    verdict(ok, f"{len(CATALOG)} cotangents")


def test_criterion_12_xi_decomposition(verdict):
    bad = [g.name for g in CATALOG if not ops.xi_decomposition_check(cotangent(g))]
    verdict(not bad, "all catalog cotangents" if not bad else f"fails {bad}")


def test_criterion_13_geodesic_vs_rk4(verdict):
    rng = random.Random(13)
    worst = 0.0
    for _ in range(20):
        xi = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        if xi[0] > 0:
            t_end = min(0.8 / xi[0], 2.0)
        else:
            t_end = min(0.8 * (math.e - 1) / max(-xi[0], 1e-9), 2.0)
        traj = geo.aff_geodesic_integrate(xi, t_end, 1000)
        for row in traj[10::10]:
            exact = geo.aff_geodesic(xi, row[0])
            worst = max(worst, abs(exact.a - row[1]), abs(exact.b - row[2]))
    verdict(worst < 1e-8, f"max error {worst:.2e} over 20 x 100 points")


def test_criterion_14_round_trips(verdict):
    rng = random.Random(14)
    worst = 0.0
    for _ in range(1000):
        xi = (rng.uniform(-3, 3), rng.uniform(-3, 3))
        worst = max(worst, max(abs(u - v) for u, v in zip(geo.aff_log(geo.aff_exp(xi)), xi)))
        p = (rng.uniform(0.05, 20), rng.uniform(-3, 3))
        worst = max(worst, max(abs(u - v) for u, v in zip(geo.aff_exp(geo.aff_log(p)), p)))
        dxi = (rng.choice((-1, 1)) * rng.uniform(0.1, 3), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))
        worst = max(worst, max(abs(u - v) for u, v in zip(geo.double_log(geo.double_exp(dxi)), dxi)))
        x = geo.double_exp(dxi)
        worst = max(worst, max(abs(u - v) for u, v in zip(geo.double_exp(geo.double_log(x)), x)))
    sub = 0.0
    for _ in range(1000):
        dxi = [rng.uniform(-2, 2) for _ in range(4)]
        s, t = rng.uniform(-1, 1), rng.uniform(-1, 1)
        lhs = geo.double_exp([(s + t) * v for v in dxi])
        rhs = geo.double_mul(geo.double_exp([s * v for v in dxi]), geo.double_exp([t * v for v in dxi]))
        sub = max(sub, max(abs(u - v) for u, v in zip(lhs, rhs)))
    verdict(worst < 1e-10 and sub < 1e-9, f"round trip {worst:.1e}, subgroup law {sub:.1e}")


def test_criterion_15_complex_structure(verdict):
    j = geo.complex_structure_identity()
    d = cotangent(aff_r())
    e1, e2 = d.basis_vector(0), d.basis_vector(1)
    sq = la.matmul(j, j) == la.mat_scale(-1, la.identity(4))
    lhs = la.matvec(j, d.bracket(e1, e2))
    rhs = d.bracket(e1, la.matvec(j, e2))
    ok = sq and lhs == la.as_vector([0, 0, -1, 0]) and not any(rhs)
    verdict(ok, f"j^2 = -Id: {sq}; j[e1,e2] = -e3, [e1, j e2] = 0")


def test_criterion_16_double_connection(verdict):
    table = {
        (1, 1, 1): -1, (1, 3, 2): 1, (1, 4, 1): -1, (1, 4, 4): -1,
        (2, 1, 2): -1, (2, 4, 3): 1, (3, 1, 2): 1, (3, 4, 3): -1,
        (4, 1, 1): -1, (4, 1, 4): -1, (4, 2, 3): 1, (4, 4, 4): -1,
    }
    G = geo.double_connection()
    exact = G.nonzero() == table
    xi = (0.3, 0.1, 0.0, 0.2)
    ends = [np.array(geo.double_geodesic_integrate(xi, 1.0, n)[-1][1:]) for n in (20, 40, 80)]
    factor = float(np.max(np.abs(ends[0] - ends[1])) / np.max(np.abs(ends[1] - ends[2])))
    verdict(exact and 12 <= factor <= 20, f"table exact: {exact}; Richardson factor {factor:.2f}")
