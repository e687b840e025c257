"""Command-line front end: solving, generation, reductions, verify, play, serve."""

from __future__ import annotations

import argparse
import json
import sys

from .constructor import CapExceeded, build_nimber_position, build_tree_nimber
from .graph import (
    DirectedPosition,
    GraphFormatError,
    Position,
    parse_graph,
    serialize_graph,
)
from .grundy import BudgetExceeded, DegreeViolation, SolveBudget, exact_grundy, grundy_bab, grundy_degree3
from .matching import is_winnable, winning_move
from .reductions import (
    InvalidRange,
    LabelingConflict,
    NotBipartite,
    add_prelude,
    build_separation_instance,
    gg_to_ug,
    label_for_uno,
    shift_nimber_chain,
    uno_from_labeling,
)
from .service import (
    ServiceError,
    SessionStore,
    advance_ai,
    apply_move,
    create_session,
    hint,
    session_view,
)
from .variants import PlainState, SumState, fast_variant_solve
from .verification import SUITES, run_suite
from .wire import card_payload, variant_state_from_json

DOMAIN_ERRORS = (
    GraphFormatError,
    BudgetExceeded,
    DegreeViolation,
    CapExceeded,
    InvalidRange,
    NotBipartite,
    LabelingConflict,
    ServiceError,
    ValueError,
)


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _load_position(path: str):
    data = _read_input(path)
    fmt = "edgelist" if data[:3] in (b"ug ", b"gg ") else "json"
    return parse_graph(data, fmt)


def _load_undirected(path: str) -> Position:
    p = _load_position(path)
    if not isinstance(p, Position):
        raise GraphFormatError("expected an undirected board (edges), got arcs")
    return p


def _load_directed(path: str) -> DirectedPosition:
    p = _load_position(path)
    if not isinstance(p, DirectedPosition):
        raise GraphFormatError("expected a directed board (arcs), got edges")
    return p


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")


def _budget(args) -> SolveBudget:
    return SolveBudget(max_states=args.max_states, max_millis=args.max_millis)


def _cmd_solve(args) -> int:
    p = _load_undirected(args.input)
    _emit({"winnable": is_winnable(p), "winning_move": winning_move(p)})
    return 0


def _cmd_grundy(args) -> int:
    p = _load_undirected(args.input)
    method = args.method
    if method == "auto":
        method = "degree3" if p.graph.max_degree <= 3 else "bab"
    if method == "exact":
        value = exact_grundy(p, budget=_budget(args))
    elif method == "degree3":
        value = grundy_degree3(p)
    elif method == "bab":
        value = grundy_bab(p, budget=_budget(args))
    else:
        raise ValueError(f"unknown method {method!r}")
    _emit({"nimber": value})
    return 0


def _cmd_construct(args) -> int:
    built = build_tree_nimber(args.nimber) if args.tree else build_nimber_position(args.nimber)
    sys.stdout.buffer.write(serialize_graph(built.position))
    if args.labels:
        with open(args.labels, "w", encoding="utf-8") as fh:
            json.dump({"labels": {str(v): name for v, name in sorted(built.labels.items())}}, fh)
            fh.write("\n")
    return 0


def _cmd_reduce(args) -> int:
    if args.reduction == "gg2ug":
        d = _load_directed(args.input)
        pos, _ = gg_to_ug(d)
        if args.prelude:
            pos = add_prelude(pos)
        sys.stdout.buffer.write(serialize_graph(pos))
        return 0
    if args.reduction == "chain":
        p = _load_undirected(args.input)
        if args.separate_to is not None:
            pos = build_separation_instance(p, args.from_k, args.separate_to)
        else:
            pos = shift_nimber_chain(p, args.from_k, args.to_k)
        sys.stdout.buffer.write(serialize_graph(pos))
        return 0
    if args.reduction == "uno":
        d = _load_directed(args.input)
        pos, gmap = gg_to_ug(d)
        labeling = label_for_uno(pos, gmap)
        state = uno_from_labeling(labeling)
        _emit({"hands": [[card_payload(c) for c in hand] for hand in state.hands]})
        return 0
    raise ValueError(f"unknown reduction {args.reduction!r}")


def _cmd_sum(args) -> int:
    components = tuple(PlainState(_load_undirected(path)) for path in args.inputs)
    out = fast_variant_solve(SumState(components), _budget(args))
    _emit({"winnable": out.winnable, "value": out.value, "method": out.method})
    return 0


def _cmd_verify(args) -> int:
    checks = run_suite(args.suite, seed=args.seed)
    ok = all(c.passed for c in checks)
    if args.json:
        _emit({
            "suite": args.suite,
            "passed": ok,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
        })
    else:
        for c in checks:
            print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name} ({c.detail})")
        print(f"suite {args.suite}: {'ok' if ok else 'FAILED'}")
    return 0 if ok else 1


def _cmd_play(args) -> int:
    store = SessionStore()
    data = _read_input(args.input)
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"malformed JSON: {e.msg}", line=e.lineno) from None
    if "variant" not in payload:
        payload = {"variant": "plain", "position": payload}
    session = create_session(store, {"variant_state": payload, "ai_players": [args.ai]})
    view = session_view(session)
    print(f"session {view['id']} — variant {view['variant']}")
    while True:
        view = session_view(store.get(session.id))
        _print_board(view)
        if view["terminal"]:
            print(f"player {view['winner']} wins")
            return 0
        if view["to_move"] == args.ai:
            result = advance_ai(store, session.id)
            for entry in result["moves"]:
                print(f"ai plays {json.dumps(entry['move'])}")
            continue
        print("legal moves:")
        for i, move in enumerate(view["legal_moves"]):
            print(f"  [{i}] {json.dumps(move)}")
        raw = input("move number (h for hint, q to quit): ").strip()
        if raw == "q":
            return 0
        if raw == "h":
            print(f"hint: {json.dumps(hint(store, session.id))}")
            continue
        try:
            idx = int(raw)
            move = view["legal_moves"][idx]
        except (ValueError, IndexError):
            print("not a move number")
            continue
        apply_move(store, session.id, move)


def _print_board(view: dict) -> None:
    state = view["state"]
    if state["variant"] == "plain":
        pos = state["position"]
        removed = set(pos.get("removed", []))
        cells = []
        for v in range(pos["vertices"]):
            if v == pos["token"]:
                cells.append(f"[{v}]")
            elif v in removed:
                cells.append(" x ")
            else:
                cells.append(f" {v} ")
        print("board:", " ".join(cells))
    else:
        print("state:", json.dumps(state))


def _cmd_serve(args) -> int:
    import os

    import uvicorn

    from .service import create_app

    port = args.port or int(os.environ.get("GEO_PORT", "8080"))
    uvicorn.run(create_app(), host=args.host, port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geogrundy",
        description="Solve, generate, reduce, and play Undirected Geography games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_budget(p):
        p.add_argument("--max-states", type=int, default=SolveBudget().max_states)
        p.add_argument("--max-millis", type=int, default=SolveBudget().max_millis)

    p = sub.add_parser("solve", help="winnability and a winning move")
    p.add_argument("input", help="board file (JSON or edge list), - for stdin")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("grundy", help="Grundy value of a board")
    p.add_argument("input")
    p.add_argument("--method", choices=("auto", "exact", "degree3", "bab"), default="auto")
    add_budget(p)
    p.set_defaults(func=_cmd_grundy)

    p = sub.add_parser("construct", help="emit a board with a prescribed Grundy value")
    p.add_argument("--nimber", type=int, required=True)
    p.add_argument("--labels", metavar="PATH", help="write the role-label sidecar here")
    p.add_argument("--tree", action="store_true", help="use the 2^n-vertex tree construction")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("reduce", help="hardness-instance transformations")
    rsub = p.add_subparsers(dest="reduction", required=True)
    r = rsub.add_parser("gg2ug", help="directed board to undirected gadget board")
    r.add_argument("input")
    r.add_argument("--prelude", action="store_true", help="collapse output values to {*, *2}")
    r.set_defaults(func=_cmd_reduce)
    r = rsub.add_parser("chain", help="nimber-shift chain / separation hub")
    r.add_argument("input")
    r.add_argument("--from", dest="from_k", type=int, required=True)
    r.add_argument("--to", dest="to_k", type=int)
    r.add_argument("--separate-to", dest="separate_to", type=int,
                   help="build the set-separation hub instead of a chain")
    r.set_defaults(func=_cmd_reduce)
    r = rsub.add_parser("uno", help="Uno hands encoding a directed board")
    r.add_argument("input")
    r.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("sum", help="solve a disjunctive sum of boards")
    p.add_argument("inputs", nargs="+")
    add_budget(p)
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("play", help="terminal human-vs-AI loop")
    p.add_argument("input", help="board or variant-envelope JSON file")
    p.add_argument("--ai", type=int, choices=(0, 1), default=1)
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("serve", help="run the HTTP play service")
    p.add_argument("--port", type=int)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "reduce" and args.reduction == "chain":
        if args.to_k is None and args.separate_to is None:
            parser.error("reduce chain needs --to or --separate-to")
    try:
        return args.func(args)
    except DOMAIN_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
