"""Command-line front end: ``kleeneseries <command> ...``.

Exit status is 0 on success (or equivalence), 1 on inequivalence or a failed
check, and 2 on any error.
"""
from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import harness
from .automata import (WeightedAutomaton, automata_difference, automaton_to_term, compile_term,
                       difference, search_simulation)
from .errors import NotInStarDomain, SearchBudgetExceeded, TermSyntaxError
from .semiring import INF, N, NINF, semiring_from_name
from .series import SeriesSemiring
from .terms import letters_of, normalize, normalize_disjoint, parse_term, to_text, eval_term


@dataclass
class CliConfig:
    semiring: object
    alphabet: tuple
    maxlen: int
    seed: int
    output: str

    @property
    def json(self):
        return self.output == "json"


class CliError(Exception):
    pass


def _config(args, exprs=()) -> CliConfig:
    try:
        S = semiring_from_name(args.semiring)
    except (ValueError, KeyError) as exc:
        raise CliError(f"unknown semiring {args.semiring!r}") from exc
    if args.maxlen < 0:
        raise CliError("--maxlen must be >= 0")
    if args.alphabet:
        alphabet = tuple(dict.fromkeys(args.alphabet.replace(",", "")))
        bad = [a for a in alphabet if not ("a" <= a <= "z")]
        if bad:
            raise CliError(f"letters must be lowercase ASCII, got {bad[0]!r}")
    else:
        # infer from the expressions; fall back to a one-letter alphabet
        found = set()
        for e in exprs:
            found |= set(letters_of(parse_term(e, None, allow_inf=S == NINF)))
        alphabet = tuple(sorted(found)) or ("a",)
    return CliConfig(S, alphabet, args.maxlen, args.seed, args.output)


def _parse(text, cfg: CliConfig):
    return parse_term(text, cfg.alphabet, allow_inf=cfg.semiring == NINF)


def _emit(cfg, text_line, payload):
    if cfg.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(text_line)


def _load_automaton(path, cfg):
    S = cfg.semiring if cfg.semiring in (N, NINF) else None
    return WeightedAutomaton.from_json(Path(path).read_text(), S)


# --------------------------------------------------------------- commands

def cmd_eval(args):
    cfg = _config(args, [args.expr])
    t = _parse(args.expr, cfg)
    s = eval_term(t, cfg.semiring, cfg.alphabet, cfg.maxlen)
    _emit(cfg, s.render(compact=True), json.loads(s.to_json()))
    return 0


def cmd_normalize(args):
    cfg = _config(args, [args.expr])
    t = _parse(args.expr, cfg)
    nf = normalize_disjoint(t, cfg.alphabet) if args.disjoint else normalize(t)
    _emit(cfg, str(nf), {"tc": nf.tc, "t0": to_text(nf.t0), "tinf": to_text(nf.tinf)})
    return 0


def _automaton_semiring(cfg):
    if cfg.semiring not in (N, NINF):
        raise CliError("automata are compiled over n or ninf")
    return cfg.semiring


def cmd_compile(args):
    cfg = _config(args, [args.expr])
    t = _parse(args.expr, cfg)
    M = compile_term(t, cfg.alphabet, _automaton_semiring(cfg))
    text = M.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
        if not cfg.json:
            print(f"wrote {M.dim}-state automaton to {args.out}")
    else:
        print(text)
    return 0


def cmd_totterm(args):
    cfg = _config(args)
    M = _load_automaton(args.file, cfg)
    t = automaton_to_term(M)
    _emit(cfg, to_text(t), {"term": to_text(t)})
    return 0


def _verdict(cfg, w):
    if w is None:
        _emit(cfg, "equivalent", {"equivalent": True})
        return 0
    _emit(cfg, f"not equivalent; witness: {w or 'ε'}", {"equivalent": False, "witness": w})
    return 1


def cmd_equiv(args):
    cfg = _config(args, [args.expr1, args.expr2])
    S = _automaton_semiring(cfg)
    t1, t2 = _parse(args.expr1, cfg), _parse(args.expr2, cfg)
    return _verdict(cfg, difference(t1, t2, S, cfg.alphabet))


def cmd_equiv_file(args):
    cfg = _config(args)
    M1, M2 = _load_automaton(args.file1, cfg), _load_automaton(args.file2, cfg)
    if M1.semiring != M2.semiring:
        M1, M2 = M1.with_semiring(NINF), M2.with_semiring(NINF)
    return _verdict(cfg, automata_difference(M1, M2))


def cmd_simulate(args):
    cfg = _config(args)
    M1, M2 = _load_automaton(args.file1, cfg), _load_automaton(args.file2, cfg)
    if M1.semiring != M2.semiring:
        M1, M2 = M1.with_semiring(NINF), M2.with_semiring(NINF)
    w = search_simulation(M1, M2, budget=args.budget)
    if w is None:
        _emit(cfg, "no functional simulation", {"simulation": None})
        return 1
    _emit(cfg, f"{w.direction} simulation rho={list(w.rho)}",
          {"simulation": {"direction": w.direction, "rho": list(w.rho)}})
    return 0


# ----------------------------------------------------------------- check

def _suite_conway(cfg, args, rng):
    S = cfg.semiring
    pool = S.elements()
    pairs = list(itertools.product(pool, repeat=2))
    if args.trials and args.trials < len(pairs):
        pairs = rng.sample(pairs, args.trials)
    for a, b in pairs:
        yield from harness.check_conway(S, a, b)


def _suite_group(cfg, args, rng):
    S = cfg.semiring
    if args.group_file:
        G = harness.CayleyTable.from_json(Path(args.group_file).read_text())
    else:
        try:
            G = harness.GROUPS[args.group.lower()]
        except KeyError:
            raise CliError(f"unknown group {args.group!r}; built-in: {', '.join(harness.GROUPS)}")
    pool = [0, 1, INF] if S == NINF else S.elements()
    tuples = list(itertools.product(pool, repeat=G.order))
    if args.trials and args.trials < len(tuples):
        tuples = rng.sample(tuples, args.trials)
    for vals in tuples:
        yield harness.check_group_identity(G, list(vals), S)


def _suite_commutative(cfg, args, rng):
    S = cfg.semiring
    trials = args.trials or 10
    for i in range(trials):
        seed = rng.randrange(2 ** 31)
        m = rng.randint(1, 3)
        n = rng.randint(m, 4)
        direction = "primal" if i % 2 == 0 else "dual"
        inst = harness.generate_commutative_instance(seed, n, m, rng.randint(1, 2), cfg.alphabet,
                                                     direction=direction)
        yield harness.check_commutative(inst.in_series(cfg.maxlen))
        values = {a: rng.choice([v for v in S.elements() if S.in_domain(v)] or [S.zero])
                  for a in cfg.alphabet}
        try:
            yield harness.check_commutative(inst.at(values, S))
        except NotInStarDomain as exc:
            yield harness.CheckReport("commutative", inst.label, "skip", detail=str(exc))


def _suite_inductive(cfg, args, rng):
    S = cfg.semiring
    samples = [v for v in S.elements() if S.in_domain(v)]
    yield from harness.check_inductive_laws(S, samples, S.name)
    if S == NINF:
        T = SeriesSemiring(NINF, cfg.alphabet, min(cfg.maxlen, 3))
        for i in range(args.trials or 3):
            series = [harness.random_series(rng, NINF, cfg.alphabet, T.bound, values=[1, 2, INF])
                      for _ in range(4)]
            yield from harness.check_inductive_laws(T, series, f"series sample {i}")


SUITES = {"conway": _suite_conway, "group": _suite_group,
          "commutative": _suite_commutative, "inductive": _suite_inductive}


def cmd_check(args):
    cfg = _config(args)
    rng = random.Random(cfg.seed)
    counts = {"pass": 0, "skip": 0, "fail": 0}
    for report in SUITES[args.suite](cfg, args, rng):
        counts[report.verdict] += 1
        if cfg.json:
            print(report.to_json())
        elif report.verdict == "fail" or args.verbose:
            line = f"{report.verdict.upper():4} {report.identity} [{report.instance}]"
            print(f"{line} {report.detail}".rstrip())
    if not cfg.json:
        print(f"{args.suite}: {counts['pass']} pass, {counts['skip']} skip, {counts['fail']} fail")
    failed = counts["fail"]
    return 1 if failed else 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--semiring", default="ninf", help="n, ninf, bool or k:<int> (default ninf)")
    common.add_argument("--alphabet", default="", help="letters, e.g. 'ab' (default: inferred)")
    common.add_argument("--maxlen", type=int, default=3, help="truncation length L (default 3)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="kleeneseries", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a term up to --maxlen")
    s.add_argument("expr")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("normalize", parents=[common], help="tc + t0 + 1*tinf form of a term")
    s.add_argument("expr")
    s.add_argument("--disjoint", action="store_true", help="remove supp(tinf) from t0")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("compile", parents=[common], help="term to automaton JSON")
    s.add_argument("expr")
    s.add_argument("--out")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("totterm", parents=[common], help="automaton JSON to term")
    s.add_argument("file")
    s.set_defaults(func=cmd_totterm)

    s = sub.add_parser("equiv", parents=[common], help="decide |t1| = |t2|")
    s.add_argument("expr1")
    s.add_argument("expr2")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("equiv-file", parents=[common], help="decide equality of two automata")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=cmd_equiv_file)

    s = sub.add_parser("simulate", parents=[common], help="search a functional simulation")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--budget", type=int, default=200_000)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("check", parents=[common], help="run an identity suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--group", default="z3")
    s.add_argument("--group-file", help="Cayley table as JSON {\"table\": [[...]]}")
    s.add_argument("--trials", type=int, default=0, help="sample size (0 = suite default)")
    s.add_argument("--verbose", "-v", action="store_true", help="print passing checks too")
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotInStarDomain as exc:
        print(f"error: star outside domain: {exc}", file=sys.stderr)
    except TermSyntaxError as exc:
        print(f"error: parse error: {exc}", file=sys.stderr)
    except SearchBudgetExceeded as exc:
        print(f"error: search budget exceeded: {exc}", file=sys.stderr)
    except (CliError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
