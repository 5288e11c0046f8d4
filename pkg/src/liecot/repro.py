"""Reproduction suite for the worked examples, one check per acceptance criterion.

Each check returns ``(passed, detail)``. Used by ``liecot repro``.
"""
from __future__ import annotations

import math
import random
import time
from fractions import Fraction

from . import geometry as geo
from . import linalg as la
from . import metrics as mt
from . import operators as ops
from . import tables
from .algebra import (LieAlgebra, abelian, aff_r, cotangent, direct_sum, h3, killing_form, oscillator, sl2,
                      so3)

SEED = 20240611


def catalog_algebras() -> list[LieAlgebra]:
    return [abelian(1), abelian(2), abelian(3), aff_r(), sl2(), so3(), h3(), oscillator(1), oscillator(2)]


def _contains_all(space, table, n):
    return all(space.contains(m) for m in tables.matrices(table, n))


def c01_der_aff():
    der = ops.derivations(cotangent(aff_r()))
    ok = der.dim == 5 and _contains_all(der, tables.AFF_DERIVATIONS, 4)
    return ok, f"dim {der.dim}"


def c02_der_so3_sl2():
    d_so3 = ops.derivations(cotangent(so3()))
    d_sl2 = ops.derivations(cotangent(sl2()))
    ok = (d_so3.dim == 7 and d_sl2.dim == 7 and _contains_all(d_so3, tables.SO3_DERIVATIONS, 6)
          and _contains_all(d_sl2, tables.SL2_DERIVATIONS, 6))
    return ok, f"so3 {d_so3.dim}, sl2 {d_sl2.dim}"


def c03_pder_semisimple():
    ok = True
    for g in (sl2(), so3()):
        d = cotangent(g)
        ok = ok and la.equals(ops.prederivations(d).space, ops.derivations(d).space)
    return ok, "Pder = der for T*sl2, T*so3"


def c04_pder_oscillator():
    p = ops.prederivations(cotangent(oscillator(1)))
    ok = p.dim == 13 and _contains_all(p, tables.oscillator_prederivations(1), 8)
    return ok, f"dim {p.dim}"


def c05_h1_values():
    got = [ops.h1_cotangent(g) for g in (sl2(), so3(), direct_sum(sl2(), so3()), direct_sum(so3(), abelian(1)))]
    return got == [1, 1, 2, 5], f"sl2, so3, sl2+so3, so3+R -> {got}"


def c06_h1_decomposition():
    try:
        for g in catalog_algebras():
            ops.h1_summary(g)
    except ops.DecompositionMismatch as exc:
        return False, str(exc)
    return True, f"{len(catalog_algebras())} algebras"


def c07_killing_sl2():
    k = killing_form(sl2())
    return k == la.as_matrix([[8, 0, 0], [0, 0, 4], [0, 4, 0]]), "[[8,0,0],[0,0,4],[0,4,0]]"


def c08_form_dims():
    got = [mt.invariant_forms(g).dim for g in
           (cotangent(aff_r()), cotangent(sl2()), cotangent(oscillator(1)), oscillator(1))]
    return got == [2, 2, 5, 2], f"{got}"


def c09_inertia():
    ok = all(mt.form_inertia(mt.duality_pairing(cotangent(g))) == (g.dim, g.dim, 0) for g in catalog_algebras())
    daff, dsl2 = cotangent(aff_r()), cotangent(sl2())
    for a in (1, -1, 3):
        for b in (-2, 0, 5):
            ok = ok and mt.form_inertia(mt.mu_ab(daff, a, b)) == (2, 2, 0)
            ok = ok and mt.form_inertia(mt.mu_ab(dsl2, a, b)) == (3, 3, 0)
    return ok, "duality (n,n,0); mu_ab (2,2,0) and (3,3,0)"


def c10_skew_prederivations():
    d = cotangent(sl2())
    ok = True
    for a, b in ((1, 0), (1, 1), (-2, 3), (Fraction(1, 2), -5)):
        s = mt.skew_prederivations(d, mt.mu_ab(d, a, b))
        ok = ok and s.dim == 6 and la.equals(s.space, ops.inner_derivations(d).space)
    daff = cotangent(aff_r())
    expected = la.span(16, [la.flatten(m) for m in tables.matrices(tables.AFF_SKEW, 4)])
    for a, b in ((1, 0), (2, 7)):
        s = mt.skew_prederivations(daff, mt.mu_ab(daff, a, b))
        ok = ok and s.dim == 3 and la.equals(s.space, expected)
    return ok, "T*sl2 -> inner (6), T*aff -> span(phi1, phi2, phi4)"


def c11_graded_split():
    try:
        for g in catalog_algebras():
            ops.graded_split(cotangent(g))
    except ops.DecompositionMismatch as exc:
        return False, str(exc)
    return True, f"{len(catalog_algebras())} cotangents"


def c12_xi_check():
    bad = [g.name for g in catalog_algebras() if not ops.xi_decomposition_check(cotangent(g))]
    return not bad, "all hold" if not bad else f"fails on {bad}"


def geodesic_grid_error(xi, points: int = 100, steps: int = 1000) -> float:
    """Largest coordinate gap between the closed-form geodesic and RK4 on a grid from 0."""
    xi1 = xi[0]
    if xi1 > 0:
        t_end = min(0.8 / xi1, 2.0)
    elif xi1 < 0:
        t_end = min(0.8 * (math.e - 1) / -xi1, 2.0)
    else:
        t_end = 2.0
    traj = geo.aff_geodesic_integrate(xi, t_end, steps)
    stride = steps // points
    err = 0.0
    for row in traj[stride::stride]:
        exact = geo.aff_geodesic(xi, row[0])
        err = max(err, abs(exact.a - row[1]), abs(exact.b - row[2]))
    return err


def c13_geodesic_rk4():
    rng = random.Random(SEED)
    err = max(geodesic_grid_error((rng.uniform(-1, 1), rng.uniform(-1, 1))) for _ in range(20))
    return err < 1e-8, f"max error {err:.2e}"


def c14_round_trips():
    rng = random.Random(SEED)
    worst = 0.0
    for _ in range(1000):
        xi = (rng.uniform(-3, 3), rng.uniform(-3, 3))
        p = (rng.uniform(0.05, 20), rng.uniform(-3, 3))
        worst = max(worst, max(abs(u - v) for u, v in zip(geo.aff_log(geo.aff_exp(xi)), xi)),
                    max(abs(u - v) for u, v in zip(geo.aff_exp(geo.aff_log(p)), p)))
        s = rng.choice((-1, 1)) * rng.uniform(0.1, 3)
        dxi = (s, rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))
        worst = max(worst, max(abs(u - v) for u, v in zip(geo.double_log(geo.double_exp(dxi)), dxi)))
        x = geo.double_exp(dxi)
        worst = max(worst, max(abs(u - v) for u, v in zip(geo.double_exp(geo.double_log(x)), x)))
    sub = 0.0
    for _ in range(200):
        dxi = [rng.uniform(-2, 2) for _ in range(4)]
        s, t = rng.uniform(-1, 1), rng.uniform(-1, 1)
        lhs = geo.double_exp([(s + t) * v for v in dxi])
        rhs = geo.double_mul(geo.double_exp([s * v for v in dxi]), geo.double_exp([t * v for v in dxi]))
        sub = max(sub, max(abs(u - v) for u, v in zip(lhs, rhs)))
    return worst < 1e-10 and sub < 1e-9, f"round trip {worst:.1e}, subgroup law {sub:.1e}"


def c15_complex_structure():
    r = geo.complex_structure_checks()
    ok = (r["j_squared_is_minus_identity"] and not r["bi_invariant"]
          and r["j_bracket_e1_e2"] == la.as_vector([0, 0, -1, 0]) and not any(r["bracket_e1_j_e2"]))
    return ok, "j^2 = -Id; j[e1,e2] = -e3, [e1,je2] = 0"


DOUBLE_CHRISTOFFEL = {
    (1, 1, 1): -1, (1, 3, 2): 1, (1, 4, 1): -1, (1, 4, 4): -1,
    (2, 1, 2): -1, (2, 4, 3): 1, (3, 1, 2): 1, (3, 4, 3): -1,
    (4, 1, 1): -1, (4, 1, 4): -1, (4, 2, 3): 1, (4, 4, 4): -1,
}


def c16_double_connection():
    table_ok = geo.double_connection().nonzero() == DOUBLE_CHRISTOFFEL
    factor = geo.richardson_factor((0.3, 0.1, 0.0, 0.2), 1.0, 20)
    return table_ok and 12 <= factor <= 20, f"12 symbols {'match' if table_ok else 'differ'}, Richardson {factor:.2f}"


CRITERIA = [
    (1, "der T*aff(R) = 5 with phi1..phi5", c01_der_aff),
    (2, "der T*so3 = der T*sl2 = 7 with phis", c02_der_so3_sl2),
    (3, "Pder = der for T*sl2, T*so3", c03_pder_semisimple),
    (4, "Pder T*G_1 = 13 with phi1..phi13", c04_pder_oscillator),
    (5, "H1(D,D): 1, 1, 2, 5", c05_h1_values),
    (6, "H1 decomposition identity", c06_h1_decomposition),
    (7, "Killing form of sl2", c07_killing_sl2),
    (8, "invariant form dimensions", c08_form_dims),
    (9, "inertia of duality and mu_ab", c09_inertia),
    (10, "skew-symmetric prederivations", c10_skew_prederivations),
    (11, "graded split closure", c11_graded_split),
    (12, "xi decomposition", c12_xi_check),
    (13, "aff geodesic vs RK4", c13_geodesic_rk4),
    (14, "exp/log round trips", c14_round_trips),
    (15, "complex structure j", c15_complex_structure),
    (16, "double Christoffels and RK4 order", c16_double_connection),
]


def run_all(only=None) -> list[dict]:
    rows = []
    for num, title, fn in CRITERIA:
        if only and num not in only:
            continue
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort of the table
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append({"criterion": num, "title": title, "passed": bool(ok), "detail": detail,
                     "seconds": round(time.perf_counter() - start, 3)})
    return rows
