"""Command-line interface.

Exit codes: 0 no counterexample / success, 1 not equivalent (or a criterion
failed), 2 state cap exceeded, 64 unparseable input or usage error, and the
codes carried by the exception classes in ``treq.errors`` otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .actions import falsify, sample_actions, translation_length
from .autos import Endomorphism, whitehead_graph
from .axes import check_power_redistribution, verify_product
from .config import Config, DEFAULT_SEED
from .equiv import (gen_iterated_palindromes, gen_palindrome_pair, gen_power_family,
                    nonconjugacy_certificates, orbit_search)
from .errors import ParseError, PreconditionError, TreqError
from .suite import format_table, run_suite
from .traces import char_equiv_randomized, char_equiv_symbolic, trace_poly
from .words import CyclicWord, abelianize, infer_rank, parse_word

SCHEMA = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--rank", type=int, help="ambient rank (default: inferred)")
    p.add_argument("--seed", type=int, help=f"RNG seed (default {DEFAULT_SEED}, or TREQ_SEED)")
    p.add_argument("--jobs", type=int, help="worker processes for the orbit search")
    p.add_argument("--depth", type=int, help="orbit-search depth")
    p.add_argument("--cap", type=int, dest="state_cap", help="orbit-search state cap")
    p.add_argument("--samples", type=int, help="sampled actions / representations")
    p.add_argument("--moves", type=int, help="max Whitehead moves per sampled marking")
    p.add_argument("--radius", type=int, help="ball radius for axis computations")
    p.add_argument("--prime", type=int, help="prime for randomized F_p checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="treq", description="Translation equivalence in free groups.")
    parser.add_argument("--version", action="version", version=f"treq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    p = add("check", "search for a basis separating g and h")
    p.add_argument("g")
    p.add_argument("h")
    p = add("whitehead", "Whitehead graph of the cyclic word w")
    p.add_argument("w")
    p = add("trace", "Fricke trace polynomial of a rank-2 word")
    p.add_argument("w")
    p = add("char", "compare traces of u and v under SL(2) representations")
    p.add_argument("u")
    p.add_argument("v")
    p = add("lengths", "translation lengths on sampled weighted-rose actions")
    p.add_argument("g")
    p.add_argument("h")
    p = add("axes", "axis configuration and product-length check")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--powers", type=int, metavar="S",
                   help="also check ||g^p h^q|| for p + q <= S")

    p = add("gen", "generate translation-equivalent families")
    gen = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    q = gen.add_parser("palindrome", parents=[common], help="(w(g,h), w^R(g,h))")
    q.add_argument("w")
    q.add_argument("g")
    q.add_argument("h")
    q = gen.add_parser("powers", parents=[common], help="g^i h^(2M-i) with h = f g^-1 f^-1")
    q.add_argument("g")
    q.add_argument("f")
    q.add_argument("M", type=int)
    q = gen.add_parser("iterated", parents=[common], help="iterated palindromic family")
    q.add_argument("--endo", action="append", required=True, metavar="X,Y",
                   help="images of x and y; repeat for phi_1, phi_2, ...")
    q.add_argument("g")
    q.add_argument("h")

    p = add("paper-suite", "run the reproduction suite")
    p.add_argument("--filter", help="criterion number, name or tag")
    add("config", "print the effective configuration")
    return parser


def _config(args) -> Config:
    keys = ("rank", "seed", "depth", "state_cap", "samples", "moves", "radius", "prime", "jobs")
    return Config.from_env(output="json" if args.json else "text",
                           **{k: getattr(args, k, None) for k in keys})


def _words(cfg: Config, *texts: str):
    rank = cfg.rank if cfg.rank is not None else infer_rank(*texts)
    return [parse_word(t, rank) for t in texts]


def _emit(cfg: Config, data: dict, text: str) -> None:
    if cfg.output == "json":
        print(json.dumps({"schema": SCHEMA, **data}, indent=2))
    else:
        print(text)


def cmd_check(args, cfg):
    g, h = _words(cfg, args.g, args.h)
    v = orbit_search(g, h, cfg.depth, cfg.state_cap, cfg.jobs)
    if v.outcome == "not_equivalent":
        d = v.detail
        values = ", ".join(f"{k} {''.join(x) if isinstance(x, list) else x}"
                           for k, x in d.values.items())
        text = (f"not_equivalent: {d.kind} differs ({values}); "
                f"differing invariants: {', '.join(d.differs)}\n"
                f"moves: {' '.join(v.path) or 'identity'}\n"
                f"witness: {' '.join(v.witness.image_strings())}")
    elif v.outcome == "cap_exceeded":
        text = f"cap_exceeded: {v.states} states, depth {v.depth} completed"
    else:
        text = f"no_counterexample: depth {v.depth}, {v.states} states explored"
    _emit(cfg, {"command": "check", "g": str(g), "h": str(h), "verdict": v.to_json()}, text)
    return v.exit_code


def cmd_whitehead(args, cfg):
    (w,) = _words(cfg, args.w)
    cw = CyclicWord.of(w)
    graph = whitehead_graph(cw)
    lines = [f"cyclic word {cw} (length {len(cw)})"]
    lines += [f"  {e['pair'][0]} -- {e['pair'][1]}: {e['label']}" for e in graph.to_json()]
    _emit(cfg, {"command": "whitehead", "rank": w.rank, "word": str(cw),
                "graph": graph.to_json()}, "\n".join(lines))
    return 0


def cmd_trace(args, cfg):
    (w,) = _words(cfg, args.w)
    poly = trace_poly(w)
    _emit(cfg, {"command": "trace", "word": str(w), "poly": str(poly),
                "terms": poly.to_json()}, str(poly))
    return 0


def cmd_char(args, cfg):
    u, v = _words(cfg, args.u, args.v)
    sym = char_equiv_symbolic(u, v) if u.rank == 2 else None
    rnd = char_equiv_randomized(u, v, cfg.samples, cfg.seed, cfg.prime)
    text = f"randomized: {rnd}"
    if sym is not None:
        text = f"symbolic: {'equal' if sym else 'different'}\n" + text
    _emit(cfg, {"command": "char", "u": str(u), "v": str(v), "symbolic": sym,
                "randomized": rnd}, text)
    return 1 if sym is False or rnd == "distinct" else 0


def cmd_lengths(args, cfg):
    g, h = _words(cfg, args.g, args.h)
    actions = sample_actions(g.rank, cfg.samples, cfg.moves, cfg.seed)
    rows = [(translation_length(a, g), translation_length(a, h)) for a in actions]
    wit = falsify(g, h, actions)
    lines = [f"{i:4d}  {lg}  {lh}" + ("" if lg == lh else "  *")
             for i, (lg, lh) in enumerate(rows)]
    lines.append("witness: " + (json.dumps(wit.to_json()) if wit else "none"))
    data = {"command": "lengths", "g": str(g), "h": str(h),
            "lengths": [{"g": str(a), "h": str(b)} for a, b in rows],
            "witness": wit.to_json() if wit else None}
    _emit(cfg, data, "\n".join(lines))
    return 1 if wit else 0


def cmd_axes(args, cfg):
    g, h = _words(cfg, args.g, args.h)
    rep = verify_product(g, h, cfg.radius)
    data = {"command": "axes", "g": str(g), "h": str(h), **rep.to_json()}
    c = rep.config
    desc = {"separated": f"separated D={c.distance}",
            "overlap": f"overlap delta={c.delta} {c.direction}",
            "unbounded": f"unbounded {c.direction}"}[c.kind]
    text = f"{desc}; predicted {rep.predicted}, actual {rep.actual}, match {str(rep.match).lower()}"
    if args.powers:
        pr = check_power_redistribution(g, h, args.powers)
        data["powers"] = pr.to_json()
        text += (f"\npowers up to {args.powers}: all_equal {str(pr.all_equal).lower()}, "
                 f"formula_match {str(pr.formula_match).lower()}")
    _emit(cfg, data, text)
    return 0


def cmd_gen(args, cfg):
    if args.family == "palindrome":
        w = parse_word(args.w, 2)
        g, h = _words(cfg, args.g, args.h)
        words = list(gen_palindrome_pair(w, g, h))
        data = {"family": "palindrome", "words": [str(x) for x in words]}
    elif args.family == "powers":
        g, f = _words(cfg, args.g, args.f)
        words = gen_power_family(g, f, args.M)
        certs = nonconjugacy_certificates(words)
        data = {"family": "powers", "words": [str(x) for x in words],
                "abelianizations": [list(abelianize(x)) for x in words],
                "pairwise_distinct": all(c["distinct"] for c in certs)}
    else:
        endos = []
        for item in args.endo:
            parts = item.split(",")
            if len(parts) != 2:
                raise ParseError(f"--endo expects two comma-separated images, got {item!r}")
            endos.append(Endomorphism([parse_word(s, 2) for s in parts], 2))
        g, h = _words(cfg, args.g, args.h)
        words = gen_iterated_palindromes(endos, g, h)
        data = {"family": "iterated", "words": [str(x) for x in words]}
    _emit(cfg, {"command": "gen", **data}, "\n".join(str(x) or "1" for x in words))
    return 0


def cmd_suite(args, cfg):
    results = run_suite(args.filter, cfg.seed)
    if not results:
        raise PreconditionError(f"no criterion matches {args.filter!r}")
    _emit(cfg, {"command": "paper-suite", "results": [r.to_json() for r in results],
                "passed": all(r.passed for r in results)}, format_table(results))
    return 0 if all(r.passed for r in results) else 1


def cmd_config(args, cfg):
    data = cfg.as_dict()
    text = "\n".join(f"{k} = {'auto' if v is None else v}" for k, v in data.items())
    _emit(cfg, {"command": "config", "config": data}, text)
    return 0


COMMANDS = {"check": cmd_check, "whitehead": cmd_whitehead, "trace": cmd_trace,
            "char": cmd_char, "lengths": cmd_lengths, "axes": cmd_axes, "gen": cmd_gen,
            "paper-suite": cmd_suite, "config": cmd_config}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except TreqError as exc:
        print(f"treq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
