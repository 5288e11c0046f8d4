"""``liecot`` command-line front end.

Symbolic commands print a canonical JSON report ``{command, inputs, results,
warnings}`` (sorted keys, rationals as strings). ``catalog`` and
``cotangent`` print algebra JSON. Geometry commands print floats with 15
significant digits, trajectories as CSV.

Exit codes: 0 success, 1 bad input, 2 violated precondition, 3 an internal
identity check failed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import geometry as geo
from . import linalg as la
from . import metrics as mt
from . import operators as ops
from .algebra import (CATALOG_NAMES, LieAlgebra, aff_r, base_algebra, catalog, center, cotangent,
                      cotangent_base_dim, derived_ideal, is_abelian, is_perfect, is_semisimple, killing_form)
from .errors import DecompositionMismatch, InputError, LiecotError, PreconditionError

PDER_AFF_WARNING = ("Pder(T*aff(R)) is computed as 5-dimensional and equal to der; a 6-parameter "
                    "prederivation matrix (extra entry alpha_24) appearing in the source example "
                    "does not satisfy the prederivation identity")


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# serialization


def _jsonable(x):
    if isinstance(x, Fraction):
        return la.fraction_str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return float("%.15g" % x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return _jsonable(x.item())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def report(command: str, inputs: dict, results, warnings=()) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "warnings": list(warnings)}


def _fmt(x: float) -> str:
    return "%.15g" % x


# ---------------------------------------------------------------------------
# input


def load_algebra(source: str, stdin=None) -> LieAlgebra:
    """A JSON file, ``-`` for stdin, or a catalog spec such as ``sl2``,
    ``oscillator:2``, ``abelian:3`` or ``T*aff_r`` (cotangent of a catalog entry).
    """
    if source == "-":
        stdin = stdin if stdin is not None else sys.stdin
        return LieAlgebra.from_json(stdin.read())
    if os.path.exists(source):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc}") from exc
        return LieAlgebra.from_json(text)
    spec = source
    cot = spec.startswith("T*")
    if cot:
        spec = spec[2:]
    name, _, param = spec.partition(":")
    if name not in CATALOG_NAMES:
        raise UsageError(f"{source!r} is neither a file nor a catalog algebra ({', '.join(CATALOG_NAMES)})")
    params = {}
    if param:
        params = {"n": param} if name == "abelian" else {"lam": param}
    try:
        g = catalog(name, **params)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad parameter in {source!r}: {exc}") from exc
    return cotangent(g) if cot else g


def _parse_coeffs(text: str) -> list[Fraction]:
    try:
        return [la.to_fraction(c.strip()) for c in text.split(",") if c.strip()]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"bad coefficient list {text!r}") from exc


def load_form(g: LieAlgebra, spec: str, coeffs: str | None) -> mt.BilinearForm:
    """``duality``, ``killing``, ``mu:a,b``, a basis index of the invariant
    form space, ``space`` (with ``--coeffs``) or a JSON file holding a matrix.
    """
    if spec == "duality":
        return mt.duality_pairing(g)
    if spec == "killing":
        return mt.BilinearForm(g, killing_form(g))
    if spec.startswith("mu:"):
        ab = _parse_coeffs(spec[3:])
        if len(ab) != 2:
            raise UsageError("mu form needs two coefficients, e.g. mu:1,0")
        return mt.mu_ab(g, *ab)
    if spec == "space":
        if coeffs is None:
            raise UsageError("--form space needs --coeffs")
        return mt.invariant_forms(g).combination(_parse_coeffs(coeffs))
    if spec.isdigit():
        forms = mt.invariant_forms(g)
        k = int(spec)
        if k >= forms.dim:
            raise UsageError(f"form index {k} out of range, the invariant form space has dim {forms.dim}")
        return forms.forms()[k]
    if os.path.exists(spec):
        try:
            with open(spec, encoding="utf-8") as fh:
                data = json.load(fh)
            if isinstance(data, dict):
                data = data["matrix"]
            return mt.BilinearForm(g, la.as_matrix(data))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read form from {spec}: {exc}") from exc
    raise UsageError(f"unknown form {spec!r}")


def _floats(values, n: int, what: str) -> list[float]:
    if len(values) != n:
        raise UsageError(f"{what} needs {n} numbers, got {len(values)}")
    try:
        return [float(v) for v in values]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands


def _space_results(space) -> dict:
    return {"kind": space.kind, "dim": space.dim, "basis": space.matrices()}


def _algebra_inputs(g: LieAlgebra, args) -> dict:
    return {"algebra": g.name, "source": args.algebra_src, "dim": g.dim}


def cmd_check(g, args):
    base = cotangent_base_dim(g)
    results = {
        "jacobi": True,
        "dim": g.dim,
        "abelian": is_abelian(g),
        "perfect": is_perfect(g),
        "semisimple": is_semisimple(g),
        "center_dim": center(g).dim,
        "derived_dim": derived_ideal(g).dim,
        "cotangent_of_dim": base,
    }
    return report("check", _algebra_inputs(g, args), results)


SPACE_COMMANDS = {
    "der": ops.derivations,
    "pder": ops.prederivations,
    "inner": ops.inner_derivations,
    "jspace": ops.adjoint_invariant_J,
    "jprime": ops.adjoint_invariant_Jprime,
    "cocycles": ops.coadjoint_cocycles,
    "psi": ops.equivariant_psi,
}


def cmd_space(g, args):
    space = SPACE_COMMANDS[args.command](g)
    results = _space_results(space)
    warnings = []
    if args.command == "pder":
        results["der_dim"] = ops.derivations(g).dim
        if g == cotangent(aff_r()):
            warnings.append(PDER_AFF_WARNING)
    return report(args.command, _algebra_inputs(g, args), results, warnings)


def cmd_h1(g, args):
    return report("h1", _algebra_inputs(g, args), ops.h1_summary(g).as_dict())


def cmd_forms(g, args):
    forms = mt.invariant_forms(g)
    return report("forms", _algebra_inputs(g, args), {"dim": forms.dim, "basis": forms.matrices()})


def _form_inputs(g, args):
    inputs = _algebra_inputs(g, args)
    inputs["form"] = args.form
    if args.coeffs is not None:
        inputs["coeffs"] = args.coeffs
    return inputs


def cmd_inertia(g, args):
    b = load_form(g, args.form, args.coeffs)
    p, n, z = mt.form_inertia(b)
    return report("inertia", _form_inputs(g, args), {"n_plus": p, "n_minus": n, "n_zero": z})


def cmd_skewpder(g, args):
    b = load_form(g, args.form, args.coeffs)
    space = mt.skew_prederivations(g, b)
    results = _space_results(space)
    results["equals_inner"] = la.equals(space.space, ops.inner_derivations(g).space)
    return report("skewpder", _form_inputs(g, args), results)


def cmd_graded(g, args):
    split = ops.graded_split(g)
    results = {
        "der_dim": split.der.dim,
        "G0_dim": split.even.dim,
        "G1_dim": split.odd.dim,
        "G0_basis": split.even.matrices(),
        "G1_basis": split.odd.matrices(),
    }
    return report("graded", _algebra_inputs(g, args), results)


def cmd_xicheck(g, args):
    base_algebra(g)
    return report("xicheck", _algebra_inputs(g, args), {"holds": ops.xi_decomposition_check(g)})


def _trajectory_csv(rows, names) -> str:
    lines = [",".join(["t", *names])]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def cmd_aff(args):
    op, vals = args.op, args.values
    inputs = {"op": op, "values": vals}
    if op == "mul":
        v = _floats(vals, 4, "aff mul")
        res = geo.aff_mul(v[:2], v[2:])._asdict()
    elif op == "inv":
        res = geo.aff_inv(_floats(vals, 2, "aff inv"))._asdict()
    elif op == "exp":
        res = geo.aff_exp(_floats(vals, 2, "aff exp"))._asdict()
    elif op == "log":
        res = geo.aff_log(_floats(vals, 2, "aff log"))._asdict()
    elif op == "expc":
        res = geo.aff_exp_connection(_floats(vals, 2, "aff expc"))._asdict()
    elif op == "logc":
        res = geo.aff_log_connection(_floats(vals, 2, "aff logc"))._asdict()
    elif op == "christoffel":
        res = {"nonzero": [[i, j, k, v] for (i, j, k), v in sorted(geo.aff_connection().nonzero().items())]}
    elif op == "geodesic":
        xi = _floats(vals, 2, "aff geodesic")
        if args.t is not None:
            inputs["t"] = args.t
            res = geo.aff_geodesic(xi, args.t)._asdict()
        else:
            if args.rk4:
                rows = geo.aff_geodesic_integrate(xi, args.t_end, args.steps)
            else:
                h = args.t_end / args.steps
                rows = [(s * h, *geo.aff_geodesic(xi, s * h)) for s in range(args.steps + 1)]
            return _trajectory_csv(rows, ["x1", "x2"])
    else:
        raise UsageError(f"unknown aff operation {op!r}")
    return report("aff", inputs, res)


def cmd_double(args):
    op, vals = args.op, args.values
    inputs = {"op": op, "values": vals}
    if op == "mul":
        v = _floats(vals, 8, "double mul")
        res = geo.double_mul(v[:4], v[4:])._asdict()
    elif op == "inv":
        res = geo.double_inv(_floats(vals, 4, "double inv"))._asdict()
    elif op == "exp":
        res = geo.double_exp(_floats(vals, 4, "double exp"))._asdict()
    elif op == "log":
        res = geo.double_log(_floats(vals, 4, "double log"))._asdict()
    elif op == "christoffel":
        res = {"nonzero": [[i, j, k, v] for (i, j, k), v in sorted(geo.double_connection().nonzero().items())]}
    elif op == "jcheck":
        res = geo.complex_structure_checks()
        res["j"] = geo.complex_structure_identity()
    elif op == "geodesic":
        xi = _floats(vals, 4, "double geodesic")
        rows = geo.double_geodesic_integrate(xi, args.t_end, args.steps)
        return _trajectory_csv(rows, ["x1", "x2", "x3", "x4"])
    else:
        raise UsageError(f"unknown double operation {op!r}")
    return report("double", inputs, res)


def cmd_repro(args, out, err):
    from .repro import run_all

    rows = run_all(set(args.only) if args.only else None)
    width = max(len(r["title"]) for r in rows)
    for r in rows:
        out.write(f"{r['criterion']:>2}  {r['title']:<{width}}  {'PASS' if r['passed'] else 'FAIL'}  "
                  f"{r['detail']}\n")
    failed = sum(not r["passed"] for r in rows)
    out.write(f"{len(rows) - failed}/{len(rows)} passed\n")
    return 0 if not failed else 3


# ---------------------------------------------------------------------------
# parser and dispatch


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="liecot", description="Exact computations on Lie algebras and their cotangent doubles.")
    p.add_argument("--verbose", action="store_true", help="print a summary to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def algebra_cmd(name, help_text, form=False):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("algebra", nargs="?", help="JSON file, '-' for stdin, or catalog spec (sl2, T*aff_r, ...)")
        sp.add_argument("--algebra", dest="algebra_opt", metavar="ALGEBRA")
        sp.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
        if form:
            sp.add_argument("--form", required=True, help="duality | killing | mu:a,b | <index> | space | file")
            sp.add_argument("--coeffs", help="comma-separated rationals for --form space")
        return sp

    algebra_cmd("check", "validate an algebra and report structural data")
    algebra_cmd("cotangent", "print the cotangent algebra T*g as JSON")
    for name, text in (("der", "derivations"), ("pder", "prederivations"), ("inner", "inner derivations"),
                       ("jspace", "endomorphisms commuting with every ad_x"),
                       ("jprime", "endomorphisms commuting with every ad_x ad_y"),
                       ("cocycles", "1-cocycles g -> g* for the coadjoint action"),
                       ("psi", "ad-equivariant symmetric maps g* -> g"),
                       ("h1", "dimensions of H1(T*g, T*g) and its summands"),
                       ("forms", "ad-invariant symmetric bilinear forms"),
                       ("graded", "even/odd split of der(T*g)"),
                       ("xicheck", "check the block decomposition of der(T*g)")):
        algebra_cmd(name, text)
    algebra_cmd("inertia", "signature of a bilinear form", form=True)
    algebra_cmd("skewpder", "prederivations skew-symmetric for a form", form=True)

    sp = sub.add_parser("catalog", help="print a catalog algebra as JSON")
    sp.add_argument("name", nargs="?", help=", ".join(CATALOG_NAMES))
    sp.add_argument("--n", default="1", help="dimension for abelian")
    sp.add_argument("--lam", default="1", help="parameter for oscillator")
    sp.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)

    for name, ops_ in (("aff", "mul inv exp log expc logc geodesic christoffel"),
                       ("double", "mul inv exp log geodesic christoffel jcheck")):
        sp = sub.add_parser(name, help=f"geometry of the {name} group: {ops_}")
        sp.add_argument("op", choices=ops_.split())
        sp.add_argument("values", nargs="*", help="coordinates")
        sp.add_argument("--t", type=float, help="single time for the geodesic")
        sp.add_argument("--t-end", type=float, default=1.0)
        sp.add_argument("--steps", type=int, default=100)
        sp.add_argument("--rk4", action="store_true", help="integrate the geodesic ODE instead of the closed form")
        sp.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)

    sp = sub.add_parser("repro", help="run the worked-example suite")
    sp.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    sp.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    return p


def _summary(out) -> str:
    if isinstance(out, dict) and "command" in out:
        res = out["results"]
        keys = [k for k in sorted(res) if not isinstance(res[k], (list, tuple, dict))] if isinstance(res, dict) else []
        body = ", ".join(f"{k}={_jsonable(res[k])}" for k in keys)
        return f"{out['command']} {out['inputs'].get('algebra', '')}: {body}".strip()
    return ""


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "repro":
            return cmd_repro(args, stdout, stderr)
        if args.command == "catalog":
            if args.name is None:
                out = report("catalog", {}, {"names": list(CATALOG_NAMES)})
            else:
                params = {"n": args.n} if args.name == "abelian" else {"lam": args.lam}
                try:
                    out = catalog(args.name, **params).to_dict()
                except (ValueError, ZeroDivisionError) as exc:
                    if isinstance(exc, LiecotError):
                        raise
                    raise UsageError(str(exc)) from exc
        elif args.command == "aff":
            out = cmd_aff(args)
        elif args.command == "double":
            out = cmd_double(args)
        else:
            if args.algebra and args.algebra_opt:
                raise UsageError("give the algebra either positionally or with --algebra, not both")
            args.algebra_src = args.algebra or args.algebra_opt
            if not args.algebra_src:
                raise UsageError("no algebra given")
            g = load_algebra(args.algebra_src, stdin)
            if args.command == "cotangent":
                out = cotangent(g).to_dict()
            elif args.command in SPACE_COMMANDS:
                out = cmd_space(g, args)
            else:
                out = globals()["cmd_" + args.command](g, args)
        stdout.write(out if isinstance(out, str) else dumps(out))
        if args.verbose:
            line = _summary(out)
            if line:
                stderr.write(line + "\n")
            if isinstance(out, dict):
                for w in out.get("warnings", []):
                    stderr.write("warning: " + w + "\n")
        return 0
    except InputError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except PreconditionError as exc:
        stderr.write(f"precondition failed: {exc}\n")
        return 2
    except DecompositionMismatch as exc:
        stderr.write(f"internal check failed: {exc}\n")
        return 3


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
