"""Command-line front end.

Subcommands: params, build, probe, solve, play, verify-strategy, eval,
export.  All verification subcommands print one machine-readable JSON
document on stdout (with a schemaVersion field) and a short human summary on
stderr; output is byte-identical across runs with identical flags and seed.

Exit codes: 0 success / Duplicator / no violations; 1 Spoiler wins or
violations found; 2 bad flags; 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .buildk3 import build
from .games import (BudgetExceeded, PebbleGameSolver,
                    existential_duplicator_wins)
from .general import GeneralFamily
from .logic import evaluate, parse, quantifier_rank, unparse
from .params import FULL_K3, GENERAL, REDUCED_K3, Params
from .strategy import validate_strategy
from .structures import OrderedStructure

SCHEMA_VERSION = 1

K3_VARIANTS = {"full": FULL_K3, "reduced": REDUCED_K3}


def _emit(doc: dict, summary: str) -> None:
    doc.setdefault("schemaVersion", SCHEMA_VERSION)
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    sys.stderr.write(summary + "\n")


def _load_structure(path: str) -> OrderedStructure:
    with open(path, encoding="utf-8") as fh:
        return OrderedStructure.from_json(json.load(fh))


def _parse_vertex(text: str) -> tuple[int, int]:
    try:
        x, y = text.split(",")
        return int(x), int(y)
    except ValueError:
        raise SystemExit(f"bad vertex {text!r}; expected 'x,y'") from None


def _k3_params(args) -> Params:
    return Params(3, args.m, K3_VARIANTS[args.variant])


# ---- subcommands -----------------------------------------------------------


def _cmd_params(args) -> int:
    variant = {**K3_VARIANTS, "general": GENERAL}[args.variant]
    p = Params(args.k, args.m, variant, toy=args.toy,
               level_factor=args.level_factor, u_factor=args.u_factor)
    _emit(p.tables(), f"parameter tables for k={args.k} m={args.m} "
          f"variant={variant}")
    return 0


def _cmd_build(args) -> int:
    p = _k3_params(args)
    a, b = build(p, shifted=args.shifted or args.constants,
                 constants=args.constants)
    s = a if args.side.lower() == "a" else b
    doc = s.to_json(k=3, m=args.m, variant=K3_VARIANTS[args.variant])
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    sys.stderr.write(f"A/B pair side {args.side}: {len(s)} vertices, "
                     f"{len(s.edges)} edges\n")
    return 0


def _cmd_probe(args) -> int:
    p = Params(args.k, args.m, GENERAL, toy=args.toy,
               level_factor=args.level_factor, u_factor=args.u_factor)
    fam = GeneralFamily(p)
    u, v = (_parse_vertex(t) for t in args.edge)
    trace: dict = {"u": list(map(str, u)), "v": list(map(str, v)),
                   "side": args.side.lower()}

    def endpoint(w):
        x, y = w
        i = p.idx(x)
        out = {"idx": i, "rel": str(p.floor_abs(x, i)),
               "cc": p.cc(p.floor_abs(x, i), y),
               "rngNum": p.rng_num(x, i), "sSetSize": len(fam.s_set(x, y))}
        try:
            out["g"] = str(p.g(x))
        except ValueError:
            out["g"] = None
        return out

    trace["endpoints"] = [endpoint(u), endpoint(v)]
    if u[1] == v[1]:
        trace["sameRow"] = True
        trace["edge"] = False
    else:
        trace["sameRow"] = False
        trace["labelBlockedUV"] = fam.cl(*v) in fam.s_set(*u)
        trace["labelBlockedVU"] = fam.cl(*u) in fam.s_set(*v)
        trace["omegaUV"] = fam.in_omega(*u, *v)
        trace["omegaVU"] = fam.in_omega(*v, *u)
        lo, hi = sorted((u, v))
        trace["congruenceRule"] = fam._rule_e(lo, hi)
        trace["criticalExtra"] = fam.critical_star(u, v)
        trace["edge"] = fam.edge_star(u, v, side=args.side.lower())
    _emit(trace, f"edge({u}, {v}) on side {args.side.lower()}: "
          f"{trace['edge']}")
    return 0


def _cmd_solve(args) -> int:
    a = _load_structure(args.a)
    b = _load_structure(args.b)
    if args.mode == "existential":
        dup = existential_duplicator_wins(a, b, args.pebbles)
        doc = {"mode": "existential", "pebbles": args.pebbles,
               "winner": "duplicator" if dup else "spoiler"}
        _emit(doc, f"existential game, {args.pebbles} pebbles: "
              f"{doc['winner']} wins")
        return 0 if dup else 1
    if args.rounds is None:
        raise SystemExit("solve --mode standard requires --rounds")
    solver = PebbleGameSolver(a, b, args.pebbles, max_nodes=args.max_nodes)
    dup = solver.duplicator_wins(args.rounds)
    doc = {"mode": "standard", "pebbles": args.pebbles,
           "rounds": args.rounds, "nodes": solver.nodes,
           "winner": "duplicator" if dup else "spoiler"}
    if not dup:
        side, slot, pick = solver.winning_spoiler_move(args.rounds)
        doc["witness"] = {"side": side, "slot": slot,
                          "vertex": list(map(str, (a if side == "a"
                                                   else b).vertices[pick]))}
    _emit(doc, f"{args.rounds}-round {args.pebbles}-pebble game: "
          f"{doc['winner']} wins ({solver.nodes} nodes)")
    return 0 if dup else 1


def _cmd_play(args) -> int:
    a = _load_structure(args.a)
    b = _load_structure(args.b)
    solver = PebbleGameSolver(a, b, args.pebbles, max_nodes=args.max_nodes)
    pairs: tuple = ()
    sys.stderr.write("enter Spoiler moves as: a|b slot|- x,y   (EOF ends)\n")
    for rounds_left in range(args.rounds, 0, -1):
        sys.stderr.write(f"{rounds_left} round(s) left> ")
        sys.stderr.flush()
        line = sys.stdin.readline()
        if not line.strip():
            break
        try:
            side, slot_s, vert_s = line.split()
            slot = None if slot_s == "-" else int(slot_s)
            vert = _parse_vertex(vert_s)
            s = (a, b)[side == "b"]
            pick = s.position[vert]
        except (ValueError, KeyError):
            sys.stderr.write("bad move; format: a|b slot|- x,y\n")
            return 2
        if slot is None and len(pairs) >= args.pebbles:
            sys.stderr.write("board full; give a slot to relocate\n")
            return 2
        reply = solver.duplicator_reply(rounds_left, pairs, side, slot, pick)
        if reply is None:
            sys.stdout.write(json.dumps({"winner": "spoiler"}) + "\n")
            return 1
        other = b if side == "a" else a
        sys.stdout.write(json.dumps(
            {"reply": list(map(str, other.vertices[reply]))}) + "\n")
        rest = pairs if slot is None else pairs[:slot] + pairs[slot + 1:]
        pair = (pick, reply) if side == "a" else (reply, pick)
        pairs = tuple(sorted(rest + (pair,)))
    sys.stdout.write(json.dumps({"winner": "duplicator"}) + "\n")
    return 0


def _cmd_verify_strategy(args) -> int:
    p = _k3_params(args)
    a, b = build(p, shifted=args.shifted or args.constants,
                 constants=args.constants)
    rep = validate_strategy(p, a, b, args.rounds, jobs=args.jobs)
    rep.pop("states", None)
    ok = rep["violationCount"] == 0
    _emit(rep, f"strategy validation, {rep['rounds']} rounds: "
          f"{rep['violationCount']} violation(s)")
    return 0 if ok else 1


def _cmd_eval(args) -> int:
    s = _load_structure(args.structure)
    sentence = parse(args.sentence)
    value = evaluate(s, sentence)
    doc = {"sentence": unparse(sentence),
           "quantifierRank": quantifier_rank(sentence), "value": value}
    _emit(doc, f"value: {value}")
    return 0


def _cmd_export(args) -> int:
    s = _load_structure(args.structure)
    if args.format == "dot":
        sys.stdout.write(s.to_dot() + "\n")
    else:
        sys.stdout.write(s.dumps() + "\n")
    sys.stderr.write(f"exported {len(s)} vertices as {args.format}\n")
    return 0


# ---- argument parsing -------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pebblegames",
        description="ordered-graph families and bounded pebble games")
    top.add_argument("--seed", type=int, default=0,
                     help="random seed for sampling subcommands (default 0)")
    sub = top.add_subparsers(dest="command", required=True)

    def family_flags(sp, *, general_ok: bool):
        sp.add_argument("--k", type=int, default=3)
        sp.add_argument("--m", type=int, required=True)
        choices = ["full", "reduced"] + (["general"] if general_ok else [])
        sp.add_argument("--variant", choices=choices, required=True)
        if general_ok:
            sp.add_argument("--toy", action="store_true")
            sp.add_argument("--level-factor", type=int, default=None)
            sp.add_argument("--u-factor", type=int, default=None)

    sp = sub.add_parser("params", help="print all parameter tables")
    family_flags(sp, general_ok=True)
    sp.set_defaults(func=_cmd_params)

    sp = sub.add_parser("build", help="emit one side of an explicit k=3 pair")
    family_flags(sp, general_ok=False)
    sp.add_argument("--side", choices=["A", "B", "a", "b"], required=True)
    sp.add_argument("--shifted", action="store_true")
    sp.add_argument("--constants", action="store_true")
    sp.set_defaults(func=_cmd_build)

    sp = sub.add_parser("probe",
                        help="trace the adjacency rule on one vertex pair")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--toy", action="store_true")
    sp.add_argument("--level-factor", type=int, default=None)
    sp.add_argument("--u-factor", type=int, default=None)
    sp.add_argument("--edge", nargs=2, required=True, metavar="x,y")
    sp.add_argument("--side", choices=["A", "B", "a", "b"], default="b")
    sp.set_defaults(func=_cmd_probe)

    sp = sub.add_parser("solve", help="exactly solve a pebble game")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--pebbles", type=int, required=True)
    sp.add_argument("--rounds", type=int, default=None)
    sp.add_argument("--mode", choices=["standard", "existential"],
                    default="standard")
    sp.add_argument("--max-nodes", type=int, default=None)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("play", help="terminal loop: you move, engine replies")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--pebbles", type=int, required=True)
    sp.add_argument("--rounds", type=int, required=True)
    sp.add_argument("--max-nodes", type=int, default=None)
    sp.set_defaults(func=_cmd_play)

    sp = sub.add_parser("verify-strategy",
                        help="exhaustively validate the scripted strategy")
    family_flags(sp, general_ok=False)
    sp.add_argument("--shifted", action="store_true")
    sp.add_argument("--constants", action="store_true")
    sp.add_argument("--rounds", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=_cmd_verify_strategy)

    sp = sub.add_parser("eval", help="evaluate a sentence on a structure")
    sp.add_argument("structure")
    sp.add_argument("sentence")
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("export", help="re-emit a structure as JSON or DOT")
    sp.add_argument("structure")
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.set_defaults(func=_cmd_export)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 3
    except SystemExit:
        raise
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
