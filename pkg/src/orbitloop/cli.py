"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical check fails (the report is
still printed), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import fock, lie, orbit, parabolic, virasoro
from .exact import RationalMatrix, parse_rational_list, rational_str, to_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def jsonable(obj):
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return obj


def _cell(x) -> str:
    if isinstance(x, Fraction):
        return rational_str(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_cell(y) for y in x) + "]"
    return str(x)


def grid(headers_row: list, headers_col: list, rows: list) -> str:
    cells = [[""] + [_cell(h) for h in headers_row]]
    for h, row in zip(headers_col, rows):
        cells.append([_cell(h)] + [_cell(x) for x in row])
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _table(report: dict, indent: int = 0) -> str:
    pad = " " * indent
    lines = []
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_table(val, indent + 2))
        elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            lines.append(f"{pad}{key}:")
            for v in val:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={_cell(v[k])}" for k in sorted(v)))
        else:
            lines.append(f"{pad}{key}: {_cell(val)}")
    return "\n".join(line for line in lines if line)


def emit(report: dict, fmt: str) -> str:
    """Render a report; JSON is canonical (sorted keys, rationals as strings)."""
    if fmt == "json":
        return json.dumps(jsonable(report), sort_keys=True, indent=2)
    tables = report.pop("_tables", None) if isinstance(report, dict) else None
    text = _table(report)
    if tables:
        text = "\n\n".join([text] + tables) if text else "\n\n".join(tables)
    return text


# -- argument helpers -----------------------------------------------------------


def load_algebra(ref: str, check: bool = True) -> lie.LieAlgebra:
    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            return lie.LieAlgebra.from_json(fh.read(), check=check)
    try:
        return lie.catalog(ref)
    except KeyError as exc:
        raise UsageError(f"{ref!r} is neither a file nor a catalog algebra ({exc.args[0]})") from None


def load_functional(g: lie.LieAlgebra, text: str) -> lie.Functional:
    F = lie.Functional(parse_rational_list(text))
    if len(F.coords) != g.dim:
        raise UsageError(f"--functional has {len(F.coords)} entries, algebra has dimension {g.dim}")
    return F


def _vector_from_json(g: lie.LieAlgebra, item) -> tuple:
    if isinstance(item, str):
        return g.basis_vector(item)
    vals = tuple(to_rational(x) for x in item)
    if len(vals) != g.dim:
        raise lie.ParseError(f"vector {item} has wrong length for dimension {g.dim}")
    return vals


def load_subspace(g: lie.LieAlgebra, path: str) -> list:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise lie.ParseError(f"invalid JSON in {path}: {exc}") from exc
    items = data["basis"] if isinstance(data, dict) else data
    return [_vector_from_json(g, it) for it in items]


def random_functional(rng: random.Random, dim: int) -> lie.Functional:
    return lie.Functional(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(dim)))


# -- subcommands ----------------------------------------------------------------


def cmd_jacobi(args) -> tuple:
    g = load_algebra(args.algebra, check=False)
    rep = lie.check_jacobi(g)
    return rep.to_dict(g.labels), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_classify(args) -> tuple:
    g = load_algebra(args.algebra)
    return lie.classify(g), EXIT_OK


def cmd_polarize(args) -> tuple:
    g = load_algebra(args.algebra)
    F = load_functional(g, args.functional)
    flag = None
    if args.flag:
        with open(args.flag, encoding="utf-8") as fh:
            flag = [[_vector_from_json(g, v) for v in step] for step in json.load(fh)]
    p = orbit.vergne_polarization(g, F, flag)
    stab = orbit.stabilizer(g, F)
    rep = orbit.check_polarization(g, F, p)
    out = {
        "functional": str(F),
        "stabilizer": stab.labels(),
        "polarization": p.labels(),
        "polarization_vectors": [list(v) for v in p.basis],
        "variables": g.dim - p.dim,
        "check": rep.to_dict(),
    }
    return out, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_quantize(args) -> tuple:
    g = load_algebra(args.algebra)
    F = load_functional(g, args.functional)
    if args.polarization:
        vecs = load_subspace(g, args.polarization)
        rep = orbit.check_polarization(g, F, vecs)
        if not rep.passed:
            return {"check": rep.to_dict(), "status": "fail"}, EXIT_FAIL
        p = lie.Subalgebra(g, tuple(vecs))
    else:
        p = None
    Q = orbit.quantize_nilpotent(g, F, p, momentum=args.coordinates == "momentum")
    failures = Q.check()
    out = {
        "functional": str(F),
        "polarization": Q.polarization.labels(),
        "variables": Q.k,
        "coordinates": args.coordinates,
        "operators": {lab: str(op) for lab, op in Q.as_dict().items()},
        "homomorphism": {
            "status": "pass" if not failures else "fail",
            "failures": [[g.labels[i], g.labels[j]] for i, j in failures],
        },
    }
    if args.random_checks:
        rng = random.Random(args.seed)
        results = []
        for _ in range(args.random_checks):
            G = random_functional(rng, g.dim)
            bad = orbit.quantize_nilpotent(g, G).check()
            results.append({"functional": str(G), "status": "pass" if not bad else "fail"})
            failures = failures or bad
        out["random_checks"] = results
    if args.format == "table":
        out["_tables"] = [grid(["operator"], list(g.labels), [[str(op)] for op in Q.rho])]
        del out["operators"]
    return out, EXIT_OK if not failures else EXIT_FAIL


def cmd_verma(args) -> tuple:
    V = virasoro.VermaModule(to_rational(args.c), to_rational(args.h))
    out: dict = {"c": V.c, "h": V.h, "level": args.level}
    tables = []
    status = EXIT_OK
    if args.gram:
        G = virasoro.gram_matrix(V, args.level)
        out["gram"] = G.to_dict()
        tables.append(grid([list(p) for p in G.basis], [list(p) for p in G.basis], G.matrix.to_rows()))
    if args.det:
        out["kac_determinant"] = virasoro.kac_determinant(V, args.level)
    if args.singular:
        if args.level < 1:
            raise UsageError("--singular needs --level >= 1")
        basis = list(virasoro.partitions(args.level))
        out["singular"] = {
            "basis": [list(p) for p in basis],
            "vectors": [v.to_list(basis) for v in virasoro.singular_vectors(V, args.level)],
        }
    if args.irreducible_dims:
        out["irreducible_dims"] = virasoro.irreducible_graded_dims(V, args.level)
    if args.check_relations is not None:
        bad = virasoro.relation_failures(V, args.check_relations, args.level)
        out["relations"] = {
            "status": "pass" if not bad else "fail",
            "failures": [{"m": m, "n": n, "state": list(p)} for m, n, p in bad],
        }
        status = EXIT_OK if not bad else EXIT_FAIL
    if tables and args.format == "table":
        out.pop("gram")
        out["_tables"] = tables
    return out, status


def cmd_sugawara(args) -> tuple:
    rep = fock.virasoro_check(args.max_mode, args.level, to_rational(args.momentum), args.cocycle_denominator)
    out = rep.to_dict()
    out.update({"max_mode": args.max_mode, "level": args.level, "momentum": to_rational(args.momentum)})
    return out, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_expdim(args) -> tuple:
    dims = [int(x) for x in args.dims.split(",")] if args.dims.strip() else []
    return {"dims": dims, "max": args.max, "exp_dims": fock.exp_graded_dims(dims, args.max)}, EXIT_OK


def cmd_loopbracket(args) -> tuple:
    g = load_algebra(args.algebra)
    A, B = fock.parse_loop(g, args.a), fock.parse_loop(g, args.b)
    form = None
    if args.form:
        with open(args.form, encoding="utf-8") as fh:
            form = RationalMatrix.from_rows([[to_rational(x) for x in row] for row in json.load(fh)], g.dim)
    out = {"a": str(A), "b": str(B), "bracket": str(fock.loop_bracket(A, B, form))}
    status = EXIT_OK
    if args.quantized:
        if not args.functional:
            raise UsageError("--quantized needs --functional")
        F = load_functional(g, args.functional)
        Q = orbit.quantize_nilpotent(g, F)
        qa = fock.quantized_loop(A, quantization=Q)
        qb = fock.quantized_loop(B, quantization=Q)
        direct = fock.operator_loop_bracket(qa, qb)
        plain = fock.loop_bracket(A, B)
        via = fock.quantized_loop(plain, quantization=Q)
        out["quantized"] = {
            "a": str(qa),
            "b": str(qb),
            "bracket": str(direct),
            "naturality": "pass" if direct == via else "fail",
        }
        status = EXIT_OK if direct == via else EXIT_FAIL
    return out, status


def cmd_towers(args) -> tuple:
    P = parabolic.Composition.parse(args.composition)
    chains = parabolic.towers(P)
    if args.count_only:
        return {"count": len(chains)}, EXIT_OK
    out = {
        "composition": list(P.parts),
        "levi": parabolic.levi_data(P).to_dict(),
        "count": len(chains),
        "towers": [parabolic.tower_to_json(c) for c in chains],
    }
    if args.format == "table":
        out["_tables"] = [" -> ".join(str(c) for c in chain) for chain in chains]
        del out["towers"]
    return out, EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="orbitloop", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["json", "table"], default="json")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jacobi", parents=[common], help="check the Jacobi identity")
    p.add_argument("algebra", help="algebra JSON file or catalog name")
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("classify", parents=[common], help="nilpotency, solvability, center")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("polarize", parents=[common], help="Vergne polarization at a functional")
    p.add_argument("algebra")
    p.add_argument("--functional", required=True, help="comma-separated rationals in the dual basis")
    p.add_argument("--flag", help="JSON list of flag terms (each a list of vectors or labels)")
    p.set_defaults(func=cmd_polarize)

    p = sub.add_parser("quantize", parents=[common], help="orbit-method Weyl representation")
    p.add_argument("algebra")
    p.add_argument("--functional", required=True)
    p.add_argument("--polarization", help="JSON file with a 'basis' list of vectors or labels")
    p.add_argument("--coordinates", choices=["momentum", "position"], default="momentum")
    p.add_argument("--random-checks", type=int, default=0, help="also check N random functionals")
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("verma", parents=[common], help="Virasoro Verma module computations")
    p.add_argument("--c", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--gram", action="store_true")
    p.add_argument("--det", action="store_true")
    p.add_argument("--singular", action="store_true")
    p.add_argument("--irreducible-dims", action="store_true")
    p.add_argument("--check-relations", type=int, metavar="MAX_MODE")
    p.set_defaults(func=cmd_verma)

    p = sub.add_parser("sugawara", parents=[common], help="free-field Virasoro check on the Fock space")
    p.add_argument("--max-mode", type=int, default=3)
    p.add_argument("--level", type=int, default=6)
    p.add_argument("--momentum", default="0")
    p.add_argument("--cocycle-denominator", type=int, default=12, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_sugawara)

    p = sub.add_parser("expdim", parents=[common], help="graded dimensions of the exponential Fock space")
    p.add_argument("--dims", required=True, help="dimensions of degrees 1, 2, ...")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_expdim)

    p = sub.add_parser("loopbracket", parents=[common], help="bracket of loop elements")
    p.add_argument("algebra")
    p.add_argument("--a", required=True, help="e.g. 'X@1' or '2*X@1 + Y@-1'")
    p.add_argument("--b", required=True)
    p.add_argument("--form", help="JSON matrix of an invariant form for the central term")
    p.add_argument("--functional")
    p.add_argument("--quantized", action="store_true")
    p.set_defaults(func=cmd_loopbracket)

    p = sub.add_parser("towers", parents=[common], help="towers of maximal parabolics in GL(n)")
    p.add_argument("--composition", required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_towers)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, status = args.func(args)
    except lie.JacobiError as exc:
        print(emit({"status": "fail", "error": str(exc)}, args.format), file=out)
        return EXIT_FAIL
    except (UsageError, lie.ParseError, KeyError, ValueError, OSError, TypeError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"orbitloop {args.command}: error: {msg}", file=err)
        return EXIT_USAGE
    if args.command == "towers" and args.count_only and args.format == "table":
        print(report["count"], file=out)
    else:
        print(emit(report, args.format), file=out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
