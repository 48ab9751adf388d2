"""Command-line front end.

Reports go to stdout as JSON, diagnostics to stderr. Exit codes: 0 success,
1 usage or parse error, 2 numerical failure, 3 precondition violation,
4 enumeration guard.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

import numpy as np

from . import __version__, families, linalg
from .core import DEFAULT_MAX_ENUM, local_strategy, quantum_bound
from .errors import BellscopeError, MalformedFileError, PreconditionError
from .io import parse_matrix, parse_tensor, write_ellipsoid, write_instance
from .multipartite import BellTensor, best_pair_bound, multipartite_bound, multipartite_local_bound, slice_norms
from .realization import dimension_bounds, verify_realization
from .report import analyze, num, num_array
from .tightness import SOLVE_TOL, check_corollary1, check_corollary2, ellipsoid_data, solve_alpha


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _input(bm) -> dict:
    return {"shape": list(bm.shape), "label": bm.label}


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def cmd_bound(args):
    bm = parse_matrix(args.file)
    dec = linalg.svd(bm.g)
    return {
        "input": _input(bm),
        "T": num(quantum_bound(bm)),
        "sigma_max": num(dec.sigma_max),
        "d": linalg.degeneracy(dec.singular_values, args.tol) if dec.sigma_max > 0 else min(bm.shape),
    }


def cmd_local(args):
    bm = parse_matrix(args.file)
    B, a1, a2 = local_strategy(bm, args.max_enum)
    return {"input": _input(bm), "B": num(B), "a1": [int(x) for x in a1], "a2": [int(x) for x in a2]}


def cmd_tight(args):
    bm = parse_matrix(args.file)
    tr = solve_alpha(bm, tol=args.solve_tol, deg_tol=args.tol)
    vec = tr.vectors
    return {
        "input": _input(bm),
        "T": num(quantum_bound(bm)),
        "tight": tr.tight,
        "d": tr.d,
        "d_prime": tr.d_prime,
        "residuals": num(tr.residuals),
        "failure_reason": tr.failure_reason,
        "corollary1": check_corollary1(bm, args.tol),
        "corollary2": check_corollary2(bm, args.tol),
        "alpha": None if tr.alpha is None else num_array(tr.alpha),
        "X": None if tr.X is None else num_array(tr.X),
        "v": None if vec is None else num_array(vec.v),
        "w": None if vec is None else num_array(vec.w),
        "value": None if vec is None else num(vec.value),
    }


def cmd_analyze(args):
    bm = parse_matrix(args.file)
    rep = analyze(bm, with_seesaw=args.seesaw, seed=args.seed, deg_tol=args.tol,
                  solve_tol=args.solve_tol, max_enum=args.max_enum)
    return rep.to_dict()


def _int_params(family, params, count):
    if len(params) != count:
        raise _UsageError(f"gen {family}: expected {count} parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise _UsageError(f"gen {family}: parameters must be integers") from None


def cmd_gen(args):
    fam = args.family
    if fam not in families.FAMILIES:
        raise _UsageError(f"gen: unknown family {fam!r}; choose from {', '.join(families.FAMILIES)}")
    if fam == "qubit":
        _int_params(fam, args.params, 0)
        inst = families.qubit_inequality()
        params = []
    elif fam == "witness":
        params = _int_params(fam, args.params, 1)
        inst = families.random_dimension_witness(params[0], seed=args.seed)
    else:
        params = _int_params(fam, args.params, 1)
        inst = families.FAMILIES[fam](params[0])
    write_instance(inst.instance, args.output)
    return {
        "family": fam,
        "params": params,
        "seed": args.seed if fam == "witness" else None,
        "output": args.output,
        "shape": list(inst.instance.shape),
        "analytic_T": num(inst.analytic_T),
        "analytic_B": num(inst.analytic_B),
        "analytic_d": inst.analytic_d,
    }


def _load_tensor(path) -> BellTensor:
    try:
        return parse_tensor(path)
    except MalformedFileError:
        bm = parse_matrix(path)
        return BellTensor(bm.g, bm.label)


def cmd_multi(args):
    t = _load_tensor(args.file)
    doc = {"input": {"shape": list(t.shape), "label": t.label}}
    if args.scan:
        doc["pairs"] = [
            {"p": p, "q": q, "T": num(multipartite_bound(t, p, q))}
            for p, q in itertools.combinations(range(1, t.n + 1), 2)
        ]
        p, q, T = best_pair_bound(t)
    else:
        p, q = args.pair if args.pair else (1, 2)
        T = multipartite_bound(t, p, q)
    doc["pair"] = [p, q]
    doc["T"] = num(T)
    doc["slice_norms"] = num_array(slice_norms(t, p, q))
    doc["B"] = num(multipartite_local_bound(t, args.max_enum))
    return doc


def cmd_realize(args):
    bm = parse_matrix(args.file)
    tr = solve_alpha(bm, tol=args.solve_tol, deg_tol=args.tol)
    if not tr.tight:
        raise PreconditionError(f"bound is not attained ({tr.failure_reason}); nothing to realize")
    rep = verify_realization(bm, tr)
    return {
        "input": _input(bm),
        "T": num(quantum_bound(bm)),
        "d_prime": tr.d_prime,
        "D": rep.D,
        "dimension_bounds": list(dimension_bounds(tr.d_prime)),
        "bell_value": num(rep.bell_value),
        "max_corr_error": num(rep.max_corr_error),
        "correlations": num_array(rep.correlations),
    }


def cmd_ellipsoid(args):
    bm = parse_matrix(args.file)
    data = ellipsoid_data(bm, tol=args.solve_tol, deg_tol=args.tol)
    side = write_ellipsoid(data, args.output)
    return {
        "input": _input(bm),
        "csv": args.output,
        "quadric_file": str(side),
        "n_points": int(data.points_v.shape[0] + data.points_w.shape[0]),
        "d": int(data.points_v.shape[1]),
        "on_common_quadric": data.quadric is not None,
    }


def build_parser() -> argparse.ArgumentParser:
    tols = _Parser(add_help=False)
    tols.add_argument("--tol", type=float, default=linalg.DEGENERACY_TOL,
                      help="relative tolerance for the degeneracy of the top singular value")
    tols.add_argument("--solve-tol", type=float, default=SOLVE_TOL,
                      help="residual tolerance for the linear system Qc=1")
    enum = _Parser(add_help=False)
    enum.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM,
                      help="largest number of local assignments to enumerate")

    parser = _Parser(prog="bellscope", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"bellscope {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", parents=[tols], help="quantum bound T")
    p.add_argument("file")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("local", parents=[enum], help="local hidden variable bound B")
    p.add_argument("file")
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("tight", parents=[tols], help="tightness test, alpha and optimal vectors")
    p.add_argument("file")
    p.set_defaults(func=cmd_tight)

    p = sub.add_parser("analyze", parents=[tols, enum], help="full report")
    p.add_argument("file")
    p.add_argument("--seesaw", action="store_true", help="also run the see-saw lower bound")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen", help="generate a family instance")
    p.add_argument("family", help=", ".join(families.FAMILIES))
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("multi", parents=[enum], help="multipartite bound of a tensor")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--pair", type=int, nargs=2, metavar=("P", "Q"))
    group.add_argument("--scan", action="store_true", help="minimize over all party pairs")
    p.set_defaults(func=cmd_multi)

    p = sub.add_parser("realize", parents=[tols], help="explicit observables on a maximally entangled state")
    p.add_argument("file")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("ellipsoid", parents=[tols], help="export ellipsoid points and quadric")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_ellipsoid)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        doc = args.func(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except BellscopeError as exc:
        print(f"bellscope: {exc}", file=sys.stderr)
        return exc.exit_code
    except np.linalg.LinAlgError as exc:
        print(f"bellscope: numerical failure: {exc}", file=sys.stderr)
        return 2
    _emit(doc)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
