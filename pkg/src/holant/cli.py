"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from .errors import (
    ArityTooLarge,
    GadgetError,
    HolantError,
    InputError,
    NotOrthogonal,
    OddArity,
    ParseError,
    SingularBasis,
)
from .group import (
    DiagForm,
    GroupReport,
    ProjMat,
    YForm,
    group_closure,
    pipeline_classify,
)
from .io import (
    dumps,
    func_to_json,
    functions_to_json,
    load_basis,
    load_functions,
    load_network,
    matrix_to_json,
    network_to_json,
)
from .reduction import holographic_invariance_check, transform_func
from .sampling import random_bipartite_network
from .structure import (
    Certificate,
    Inconclusive,
    Witness4,
    arity_reduce,
    compute_c_and_normalize,
    decompose_arity4,
    eo_restrict,
    eo_symmetry_check,
    pauli_expand,
    ratio_lemma_check,
    reality_check,
    support_class,
)
from .tensor import Func, eq, holant_value
from .verify import REGISTRY, run

INPUT_ERRORS = (InputError, ParseError, GadgetError, SingularBasis, NotOrthogonal, ArityTooLarge, OddArity)


def _pairing_json(p) -> list[list[int]] | None:
    return [list(pair) for pair in p] if p is not None else None


def _pick(path: str, name: str | None) -> tuple[str, Func]:
    funcs = load_functions(path)
    if name is None:
        if len(funcs) != 1:
            raise InputError(f"{path}: holds {len(funcs)} functions; choose one with --name")
        return funcs[0]
    for n, f in funcs:
        if n == name:
            return n, f
    raise InputError(f"{path}: no function named {name!r}")


def _analysis(name: str, verdict: str, witness: Any = None, details: Any = None) -> dict:
    return {"analysis": name, "verdict": verdict, "witness": witness, "details": details or {}}


def report_to_json(rep: GroupReport) -> dict:
    canonical: dict[str, Any] = {}
    if rep.canonical_forms is not None:
        cf = rep.canonical_forms
        canonical = {
            "kind": cf.kind,
            "elements": [matrix_to_json(g.rep) for g in cf.elements],
            "basis": matrix_to_json(cf.basis.entries),
        }
    elif isinstance(rep.order2_form, DiagForm):
        canonical = {"kind": "order2-diagonal", "basis": matrix_to_json(rep.order2_form.basis.entries)}
    elif isinstance(rep.order2_form, YForm):
        canonical = {"kind": "order2-Y"}
    return {
        "label": str(rep.label),
        "group_order": rep.order,
        "order2_count": rep.order2_count,
        "k4_count": len(rep.k4_subgroups),
        "binaries": [matrix_to_json(b.func.matrix()) for b in rep.binaries],
        "witnesses": [network_to_json(b.witness) for b in rep.binaries],
        "resolving_witness": network_to_json(rep.witness.witness) if rep.witness else None,
        "elements": sorted(matrix_to_json(g.rep) for g in rep.elements),
        "canonical": canonical,
        "budget": rep.budget,
        "truncated": rep.truncated,
        "notes": rep.notes,
    }


# -- subcommands -----------------------------------------------------------

def cmd_eval(args: argparse.Namespace) -> int:
    g = load_network(args.network)
    if not g.closed:
        raise InputError(f"{args.network}: $.external: a network to evaluate must have no external edges")
    print(holant_value(g))
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    funcs = [f for _, f in load_functions(args.functions)]
    if args.budget < 1:
        raise InputError("--budget must be at least 1")
    rep = pipeline_classify(funcs, budget=args.budget, cap=args.cap)
    sys.stdout.write(dumps(report_to_json(rep)))
    return 0


def cmd_transform(args: argparse.Namespace) -> int:
    funcs = load_functions(args.functions)
    basis = load_basis(args.basis)
    if args.check_orthogonal:
        if not basis.orthogonal:
            raise NotOrthogonal(f"{args.basis}: basis is not orthogonal")
        rng = random.Random(args.seed)
        left = [f for _, f in funcs if f.arity] or [eq(2)]
        for k in range(5):
            g = random_bipartite_network(rng, left, [eq(2)], max_edges=6)
            if not holographic_invariance_check(g, basis):
                print(f"sample network {k}: value changed", file=sys.stderr)
                return 1
    out = functions_to_json([(n, transform_func(f, basis)) for n, f in funcs])
    text = dumps(out)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    name, f = _pick(args.function, args.name)
    if f.arity != 4:
        raise InputError(f"{args.function}: decompose needs an arity-4 function, got arity {f.arity}")
    d = decompose_arity4(f)
    if d is None:
        rep = _analysis("decompose", "genuine")
    else:
        rep = _analysis(
            "decompose",
            "decomposable",
            {"pairing": _pairing_json(d.pairing), "left": func_to_json("left", d.left), "right": func_to_json("right", d.right)},
        )
    sys.stdout.write(dumps(rep))
    return 0


def _parse_pairing(text: str | None, arity: int):
    if text is None:
        return None
    try:
        p = tuple(tuple(int(x) for x in part.split("-")) for part in text.split(","))
    except ValueError:
        raise InputError(f"--pairing: expected a form like 0-1,2-3, got {text!r}") from None
    flat = sorted(v for pair in p for v in pair)
    if any(len(pair) != 2 for pair in p) or flat != list(range(arity)):
        raise InputError(f"--pairing: {text!r} is not a pairing of {arity} variables")
    return p


def cmd_structure(args: argparse.Namespace) -> int:
    verb = args.verb
    if verb == "ratio-lemma":
        _, f = _pick(args.function, args.name)
        if f.arity != 2:
            raise InputError(f"{args.function}: ratio-lemma needs a binary function")
        res = ratio_lemma_check(f.matrix(), args.k)
        if hasattr(res, "case"):
            rep = _analysis(verb, f"case {res.case}", None, {"description": res.description, "k": args.k})
        else:
            rep = _analysis(verb, "violation", None, {"equation": res.equation, "lhs": str(res.lhs), "rhs": str(res.rhs), "k": args.k})
        sys.stdout.write(dumps(rep))
        return 0
    _, f = _pick(args.function, args.name)
    if verb == "support":
        sc = support_class(f)
        rep = _analysis(verb, sc.kind, None, {"pairing": _pairing_json(sc.pairing), "horn": list(sc.horn) if sc.horn else None})
    elif verb == "eo":
        rep = _analysis(
            verb,
            "symmetric" if eo_symmetry_check(f) else "asymmetric",
            func_to_json("eo", eo_restrict(f)),
        )
    elif verb == "pauli":
        coeffs = pauli_expand(f, _parse_pairing(args.pairing, f.arity))
        rep = _analysis(
            verb,
            "real" if reality_check(coeffs) else "not-real",
            None,
            {"pairing": _pairing_json(coeffs.pairing), "coefficients": {k: str(v) for k, v in coeffs.nonzero().items()}},
        )
    elif verb == "normalize":
        res = compute_c_and_normalize(f, require_real_squares=False)
        rep = _analysis(verb, "normalized", func_to_json("htilde", res.htilde), {"c": str(res.c), "squares_real": res.squares_real})
    elif verb == "arity-reduce":
        gens = [ProjMat(g) for _, g in load_functions(args.group)]
        res = arity_reduce(f, group_closure(gens))
        steps = [{"step": s.name, "passed": s.passed, "detail": s.detail} for s in res.steps]
        if isinstance(res, Certificate):
            m = res.membership
            rep = _analysis(verb, "certificate", {
                "lambda": str(m.lam),
                "pairing": _pairing_json(m.pairing),
                "factors": [matrix_to_json(x.matrix()) for x in m.factors],
            }, {"steps": steps})
        elif isinstance(res, Witness4):
            rep = _analysis(verb, "witness4", {
                "function": func_to_json("witness", res.func),
                "gadget": network_to_json(res.gadget),
                "genuine": res.genuine,
            }, {"steps": steps})
        else:
            assert isinstance(res, Inconclusive)
            rep = _analysis(verb, "inconclusive", None, {"failed_step": res.failed_step, "steps": steps})
    else:
        raise InputError(f"unknown structure analysis {verb!r}")
    sys.stdout.write(dumps(rep))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        for e in REGISTRY.values():
            print(f"{e.id:16} {e.topic:34} {e.description}")
        return 0
    if args.all:
        ids = list(REGISTRY)
    elif args.suite:
        ids = args.suite
        for s in ids:
            if s not in REGISTRY:
                raise InputError(f"--suite: unknown suite {s!r}; try --list")
    else:
        raise InputError("give --suite ID or --all")
    failed = 0
    for s in ids:
        out = run(s, args.seed)
        failed += not out.passed
        print(f"{'PASS' if out.passed else 'FAIL'}  {s:16} {out.seconds:7.3f}s  [{REGISTRY[s].topic}] {out.detail}")
    return 1 if failed else 0


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holant", description="Exact Holant values, binary groups and structure checks.")
    p.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="print the value of a closed network")
    e.add_argument("network")
    e.set_defaults(fn=cmd_eval)

    a = sub.add_parser("analyze", help="classify the binaries realizable from a function set")
    a.add_argument("functions")
    a.add_argument("--budget", type=int, default=3)
    a.add_argument("--cap", type=int, default=130)
    a.set_defaults(fn=cmd_analyze)

    t = sub.add_parser("transform", help="apply a basis change to a function set")
    t.add_argument("functions")
    t.add_argument("basis")
    t.add_argument("--check-orthogonal", action="store_true")
    t.add_argument("-o", "--output")
    t.set_defaults(fn=cmd_transform)

    d = sub.add_parser("decompose", help="split an arity-4 function along a pairing")
    d.add_argument("function")
    d.add_argument("--name")
    d.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("structure", help="structural analyses of one function")
    s.add_argument("verb", choices=["support", "eo", "pauli", "ratio-lemma", "arity-reduce", "normalize"])
    s.add_argument("function")
    s.add_argument("--name")
    s.add_argument("--pairing", help="for pauli, e.g. 0-2,1-3")
    s.add_argument("--k", type=int, default=2, help="for ratio-lemma")
    s.add_argument("--group", help="for arity-reduce: file of generator binaries")
    s.set_defaults(fn=cmd_structure)

    v = sub.add_parser("verify", help="run registered identity and property checks")
    v.add_argument("--suite", action="append")
    v.add_argument("--all", action="store_true")
    v.add_argument("--list", action="store_true")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "structure" and args.verb == "arity-reduce" and not args.group:
        print("holant: error: arity-reduce needs --group", file=sys.stderr)
        return 2
    if args.command == "structure" and args.verb == "ratio-lemma" and args.k < 2:
        print("holant: error: --k must be at least 2", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except INPUT_ERRORS as exc:
        print(f"holant: error: {exc}", file=sys.stderr)
        return 2
    except HolantError as exc:
        print(f"holant: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
