"""pathtool: weighted path problems and batch axiom checks.

Exit codes: 0 success / clean report, 1 oracle disagreement, 2 parse or
usage error, 3 capability or Moebius-condition error.
"""

from __future__ import annotations

import argparse
import sys

from . import lab, models
from .catoid import MoebiusViolation
from .convolution import (
    from_pairs,
    functions_equal,
    star_dual,
    star_recursive,
    star_unfolded,
)
from .pathtool import (
    ParseError,
    edge_weight_matrix,
    floyd_warshall,
    homset_matrix,
    matrix_star,
    parse_graph,
    parse_poset,
    parse_weight_token,
    parse_weights,
    validate_weight,
    warshall_closure,
)
from .report import XFAIL
from .values import (
    CapabilityError,
    INF,
    NEG_INF,
    make_boolean,
    make_max_plus,
    make_min_plus,
    make_nat_inf_conway,
)

MODELS = ("words", "shuffle", "poset", "pairs", "graph", "guarded")
ALGEBRAS = {
    "boolean": make_boolean,
    "minplus": make_min_plus,
    "maxplus": make_max_plus,
    "natinf": make_nat_inf_conway,
}
STAR_MODES = ("recursive", "dual", "unfolded", "matrix")


def fmt_weight(w) -> str:
    if w is INF:
        return "inf"
    if w is NEG_INF:
        return "-inf"
    return str(w)


def _err(msg: str) -> None:
    print(f"pathtool: {msg}", file=sys.stderr)


def _decode_element(model: str, C, tok: str):
    """Weight-file element tokens, per model encoding."""
    if model in ("words", "shuffle"):
        return "" if tok == "eps" else tok
    if model == "guarded":
        return tuple(tok.split("."))
    if model in ("poset", "pairs"):
        parts = tok.split(",")
        if len(parts) != 2:
            raise ParseError(f"element {tok!r}: expected 'a,b'")
        return (parts[0], parts[1])
    raise ParseError(f"element token {tok!r} not supported for model {model}")


def _build_model_and_weights(args, K):
    """Returns (catoid, weight function); graphs get K[C] weights (identities -> 1)."""
    text = open(args.weights).read()
    max_len = args.max_length

    if args.model == "graph":
        graph = parse_graph(text, K)
        for name, _, _, w in graph.edges:
            validate_weight(K, w)
        bound = max_len
        if graph.is_acyclic():
            bound = max(bound, graph.longest_path_len())
        C = models.path_catoid(graph, bound)
        table = {}
        for e in C.identities():
            table[e] = K.one
        for name, src, dst, w in graph.edges:
            table[(src, (name,))] = w
        f = from_pairs(C, K, table, name="w")
        return C, f, graph

    if args.model == "poset":
        spec, weight_toks = parse_poset(text)
        C = models.interval_catoid(spec)
        table = {}
        for (a, b), tok in weight_toks.items():
            if (a, b) not in C:
                raise ParseError(f"interval {a},{b} not in the interval set")
            table[(a, b)] = validate_weight(K, parse_weight_token(K, tok))
        f = from_pairs(C, K, table, name="w")
        return C, f, None

    weight_toks = parse_weights(text)
    if args.model in ("words", "shuffle"):
        letters = sorted({ch for tok in weight_toks if tok != "eps" for ch in tok})
        if not letters:
            raise ParseError("cannot infer an alphabet from the weight file")
        ctor = models.free_monoid if args.model == "words" else models.shuffle_catoid
        C = ctor(letters, max_len)
    elif args.model == "guarded":
        tests, actions = set(), set()
        for tok in weight_toks:
            parts = tok.split(".")
            tests.update(parts[0::2])
            actions.update(parts[1::2])
        if not tests:
            raise ParseError("cannot infer tests from the weight file")
        if not actions:
            actions = {"act"}
        C = models.guarded_string_catoid(tests, actions, max_len)
    elif args.model == "pairs":
        points = {p for tok in weight_toks for p in tok.split(",")}
        if not points:
            raise ParseError("cannot infer a point set from the weight file")
        C = models.pair_groupoid(points)
    else:
        raise ParseError(f"unknown model {args.model}")

    table = {}
    for tok, wtok in weight_toks.items():
        x = _decode_element(args.model, C, tok)
        if x not in C:
            raise ParseError(f"element {tok!r} is outside the model universe")
        table[x] = validate_weight(K, parse_weight_token(K, wtok))
    return C, from_pairs(C, K, table, name="w"), None


def _matrix_rows(M):
    for i, a in enumerate(M.labels):
        for j, b in enumerate(M.labels):
            yield f"{a}->{b}", M.at(i, j)


def cmd_star(args) -> int:
    K = ALGEBRAS[args.algebra]()
    try:
        C, f, graph = _build_model_and_weights(args, K)
    except (ParseError, OSError, ValueError) as exc:
        _err(str(exc))
        return 2

    try:
        if args.star == "matrix":
            if args.model != "graph":
                _err("--star matrix needs --model graph")
                return 2
            M = matrix_star(edge_weight_matrix(graph, K))
            rows = list(_matrix_rows(M))
        else:
            C.require_moebius()
            starfn = {"recursive": star_recursive, "dual": star_dual,
                      "unfolded": star_unfolded}[args.star]
            fs = starfn(f)
            rows = [(C.format_element(x), fs(x)) for x in C.elements()]

        if args.check_oracles:
            code = _cross_check(args, C, f, graph, K)
            if code:
                return code
    except MoebiusViolation as exc:
        _err(str(exc))
        return 3
    except CapabilityError as exc:
        _err(str(exc))
        return 3

    for label, w in rows:
        print(f"{label}\t{fmt_weight(w)}")
    return 0


def _cross_check(args, C, f, graph, K) -> int:
    """Recompute the star every applicable way; nonzero on any disagreement."""
    forms = {}
    if args.model != "graph" or args.star != "matrix":
        base = star_recursive(f)
        forms["recursive"] = base
        forms["dual"] = star_dual(f)
        forms["unfolded"] = star_unfolded(f)
        for name, other in forms.items():
            if not functions_equal(base, other):
                _err(f"oracle disagreement: recursive vs {name}")
                return 1
    if args.model == "graph":
        if not graph.is_acyclic():
            _err("note: homset/matrix comparison skipped, graph has a cycle")
            return 0
        fs = forms.get("recursive") or star_recursive(f)
        agg = homset_matrix(C, fs, K)
        M = matrix_star(edge_weight_matrix(graph, K))
        if agg.rows != M.rows:
            _err("oracle disagreement: homset aggregation vs matrix star")
            return 1
        if K.name == "boolean" and warshall_closure(M).rows != M.rows:
            _err("oracle disagreement: matrix star vs Warshall closure")
            return 1
        if K.name == "minplus":
            fw = floyd_warshall(edge_weight_matrix(graph, K))
            if fw.rows != M.rows:
                _err("oracle disagreement: matrix star vs Floyd-Warshall")
                return 1
    return 0


def cmd_check(args) -> int:
    config = lab.CampaignConfig(suites=(args.suite,), seed=args.seed,
                                samples=args.samples)
    try:
        rep = lab.run_campaign(config)
    except ValueError as exc:
        _err(str(exc))
        return 2
    print(rep.to_text())
    fails = len(rep.failures)
    xfails = sum(1 for e in rep.entries if e.status == XFAIL)
    print(f"# {len(rep.entries)} laws, {fails} failing, {xfails} expected failures",
          file=sys.stderr)
    return 0 if rep.clean else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pathtool",
        description="weighted path problems and axiom-check campaigns "
                    "over convolution algebras")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("star", help="compute a star over a model and algebra")
    ps.add_argument("--model", choices=MODELS, required=True)
    ps.add_argument("--algebra", choices=sorted(ALGEBRAS), required=True)
    ps.add_argument("--max-length", type=int, default=4)
    ps.add_argument("--star", choices=STAR_MODES, default="recursive")
    ps.add_argument("--weights", required=True, help="model/weight input file")
    ps.add_argument("--check-oracles", action="store_true",
                    help="recompute with all applicable star forms and compare")
    ps.set_defaults(fn=cmd_star)

    pc = sub.add_parser("check", help="run an axiom-check campaign")
    pc.add_argument("--suite", choices=lab.SUITES, default="all")
    pc.add_argument("--seed", type=int, default=7)
    pc.add_argument("--samples", type=int, default=25)
    pc.set_defaults(fn=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
