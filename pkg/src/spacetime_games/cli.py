"""Command-line interface: ``stg <subcommand> <input> ...``.

Inputs are a file path, ``-`` for stdin, or ``corpus:<name>``.  Reports go to
stdout as ``key = value`` lines (or JSON with ``--json``); a one-line human
summary goes to stderr.  Exit status: 0 pass/feasible, 1 fail/infeasible,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import os
import sys
from collections.abc import Mapping, Sequence
from fractions import Fraction

from . import corpus
from ._maps import format_action
from .categories import (
    GameMorphism,
    ScenarioMorphism,
    check_game_morphism,
    check_scenario_morphism,
    functor_F_object,
    functor_G_object,
    game_scenario,
    lift_morphism,
    roundtrip_iso,
    scope_checks,
)
from .dot import export_dot
from .empirical import EmpiricalModel, LocalDistribution, find_global_section, verify_certificate
from .errors import DocumentError, IncompatibleModel, PreconditionViolated, SpacetimeError
from .game import SpacetimeGame, check_alternating, enumerate_complete_histories, enumerate_histories, natural_cover, validate
from .io import format_value, parse_document, serialize
from .scenario import (
    Scenario,
    check_acyclic,
    check_causally_secured,
    check_unique_causal_bridges,
    enumerate_scenario_histories,
    is_clean,
)
from .strategy import reduced_strategic_form, strategic_form

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- input -----------------------------------------------------------------------------


def load(spec: str, stdin=None):
    """Resolve a path, ``-`` or ``corpus:<name>`` into a parsed object."""
    if spec.startswith("corpus:"):
        name = spec[len("corpus:") :]
        if name in corpus.MODEL_NAMES:
            return corpus.get_model(name)
        try:
            return corpus.get(name).game
        except KeyError:
            raise UsageError(f"unknown corpus entry {name!r}") from None
    if spec == "-":
        text = (stdin or sys.stdin).read()
    else:
        try:
            with open(spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc.strerror}") from None
    return parse_document(text)


def as_game(obj) -> SpacetimeGame:
    if isinstance(obj, SpacetimeGame):
        return obj
    if isinstance(obj, Scenario):
        return functor_G_object(obj)
    raise UsageError(f"expected a game or scenario, got a {type(obj).__name__}")


def as_scenario(obj) -> Scenario:
    if isinstance(obj, Scenario):
        return obj
    if isinstance(obj, SpacetimeGame):
        return game_scenario(obj)
    if isinstance(obj, EmpiricalModel):
        return obj.scenario
    raise UsageError(f"expected a game, scenario or model, got a {type(obj).__name__}")


# -- output ----------------------------------------------------------------------------


def _plain(v):
    """JSON-friendly view of report values."""
    if isinstance(v, bool) or v is None or isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Mapping):
        return {format_value(k) if not isinstance(k, str) else k: _plain(x) for k, x in v.items()}
    if isinstance(v, (frozenset, set)):
        return format_value(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def _text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(_text(x) for x in v) if v else "-"
    if isinstance(v, (Mapping, frozenset, set)):
        return format_value(v)
    return str(v)


class Output:
    def __init__(self, args, out, err):
        self.json = getattr(args, "json", False)
        self.out = out
        self.err = err
        self.color = not os.environ.get("NO_COLOR") and hasattr(err, "isatty") and err.isatty()

    def report(self, fields: Sequence[tuple[str, object]]):
        if self.json:
            self.out.write(json.dumps({k: _plain(v) for k, v in fields}, indent=2, ensure_ascii=False) + "\n")
        else:
            for k, v in fields:
                self.out.write(f"{k} = {_text(v)}\n")

    def raw(self, text: str):
        self.out.write(text if text.endswith("\n") else text + "\n")

    def summary(self, ok: bool | None, text: str):
        tag = {True: "PASS", False: "FAIL", None: "INFO"}[ok]
        if self.color:
            code = {True: "32", False: "31", None: "36"}[ok]
            tag = f"\033[{code}m{tag}\033[0m"
        self.err.write(f"{tag} {text}\n")


# -- subcommands -----------------------------------------------------------------------


def cmd_validate(args, o: Output) -> int:
    obj = load(args.input)
    if isinstance(obj, SpacetimeGame):
        rep = validate(obj)
        o.report(
            [
                ("kind", "game"),
                ("valid", rep.valid),
                ("nodes", len(obj.nodes)),
                ("info_sets", len(obj.info_sets)),
                ("outcomes", len(obj.outcomes)),
                ("missing", [format_value(h) for h in rep.missing]),
                ("extra", [format_value(h) for h in rep.extra]),
                ("unused_info_sets", list(rep.unused_info_sets)),
                ("unused_actions", [format_action(a) for a in rep.unused_actions]),
            ]
        )
        o.summary(rep.valid, "game is valid" if rep.valid else "; ".join(rep.messages) or "game is not valid")
        return EXIT_OK if rep.valid else EXIT_FAIL
    if isinstance(obj, EmpiricalModel):
        from .empirical import check_compatibility

        rep = check_compatibility(obj)
        o.report([("kind", "model"), ("semiring", obj.semiring.kind), ("compatible", rep.compatible), ("witness", _text(list(map(str, rep.witness))))])
        o.summary(rep.compatible, "model is compatible" if rep.compatible else "marginals disagree on an overlap")
        return EXIT_OK if rep.compatible else EXIT_FAIL
    if isinstance(obj, (GameMorphism, ScenarioMorphism)):
        rep = check_game_morphism(obj) if isinstance(obj, GameMorphism) else check_scenario_morphism(obj)
        o.report(
            [
                ("kind", "game-morphism" if isinstance(obj, GameMorphism) else "scenario-morphism"),
                ("valid", rep.passed),
                ("failed_rules", sorted(rep.failed_rules)),
                ("bridge_equivalence", rep.bridge_equivalence),
            ]
        )
        o.summary(rep.passed, "morphism is valid" if rep.passed else f"violated: {', '.join(sorted(rep.failed_rules))}")
        return EXIT_OK if rep.passed else EXIT_FAIL
    s = as_scenario(obj)
    bridges = check_unique_causal_bridges(s)
    acyclic = bridges.unique and check_acyclic(s)
    clean = acyclic and is_clean(s)
    ok = bool(bridges.unique and acyclic and clean)
    o.report(
        [
            ("kind", "scenario"),
            ("valid", ok),
            ("unique_bridges", bridges.unique),
            ("acyclic", acyclic),
            ("clean", clean),
            ("measurements", len(s.measurements)),
            ("facets", len(s.cover.facets)),
        ]
    )
    o.summary(ok, "scenario is acyclic with unique bridges and no unused settings" if ok else "scenario fails a structural check")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check_alternating(args, o: Output) -> int:
    g = as_game(load(args.input))
    rep = check_alternating(g)
    rules = sorted({v.rule for v in rep.violations})
    o.report([("alternating", rep.passed), ("violated_rules", rules)] + [(f"violation.{k}", f"{v.rule} {','.join(map(str, v.ids))} {v.detail}".strip()) for k, v in enumerate(rep.violations)])
    o.summary(rep.passed, "game is alternating" if rep.passed else f"violated rules: {', '.join(rules)}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_check_secured(args, o: Output) -> int:
    obj = load(args.input)
    s = functor_F_object(obj) if isinstance(obj, SpacetimeGame) and check_alternating(obj).passed else as_scenario(obj)
    rep = check_causally_secured(s)
    fields = [("secured", rep.passed), ("failed_criteria", sorted(rep.failed_criteria))]
    fields += [(f"violation.{k}", f"{v.criterion} {v.detail}".strip()) for k, v in enumerate(rep.violations)]
    o.report(fields)
    o.summary(rep.passed, "cover is causally secured" if rep.passed else f"failed: {', '.join(sorted(rep.failed_criteria))}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_histories(args, o: Output) -> int:
    obj = load(args.input)
    if isinstance(obj, SpacetimeGame) and not args.scenario:
        hs = enumerate_histories(obj) if args.all else enumerate_complete_histories(obj)
        lines = [format_value(h) for h in hs]
    else:
        s = as_scenario(obj)
        hs = enumerate_scenario_histories(s, closed=not args.all)
        lines = [f"{format_value(dict(h.choices))} {format_value(h.events)}" for h in hs]
    which = "all" if args.all else "complete"
    o.report([("count", len(lines)), ("histories", lines)] if o.json else [("count", len(lines))] + [(f"history.{k}", h) for k, h in enumerate(lines)])
    o.summary(None, f"{len(lines)} {which} histories")
    return EXIT_OK


def cmd_cover(args, o: Output) -> int:
    obj = load(args.input)
    if isinstance(obj, SpacetimeGame):
        cover = natural_cover(obj)
        order = {x: k for k, x in enumerate(obj.info_set_order)}
    else:
        s = as_scenario(obj)
        cover, order = s.cover, s.order
    text = cover.format(order)
    if o.json:
        o.report([("cover", [format_value(f) for f in cover.sorted(order)])])
    else:
        o.raw(text)
    o.summary(None, f"{len(cover.facets)} facets")
    return EXIT_OK


def cmd_convert(args, o: Output) -> int:
    obj = load(args.input)
    if args.to == "scenario":
        if isinstance(obj, SpacetimeGame):
            out = functor_F_object(obj) if not args.raw else game_scenario(obj)
        else:
            out = as_scenario(obj)
    else:
        out = as_game(obj)
    o.raw(serialize(out))
    o.summary(True, f"converted to {args.to}")
    return EXIT_OK


def cmd_roundtrip(args, o: Output) -> int:
    obj = load(args.input)
    s = functor_F_object(obj) if isinstance(obj, SpacetimeGame) else as_scenario(obj)
    rt = roundtrip_iso(s)
    fwd, bwd = check_scenario_morphism(rt.forward), check_scenario_morphism(rt.backward)
    same = rt.image.enabling == s.enabling and rt.image.cover == s.cover
    ok = fwd.passed and bwd.passed and same
    o.report([("roundtrip", ok), ("forward_morphism", fwd.passed), ("backward_morphism", bwd.passed), ("enabling_equal", rt.image.enabling == s.enabling), ("cover_equal", rt.image.cover == s.cover)])
    o.summary(ok, "F(G(scenario)) is isomorphic to the scenario" if ok else "round trip failed")
    return EXIT_OK if ok else EXIT_FAIL


def _strategy_label(s) -> str:
    return ",".join(f"{i}={format_action(a)}" for i, a in sorted(s.choice.items()))


def cmd_strategies(args, o: Output) -> int:
    g = as_game(load(args.input))
    form = strategic_form(g)
    if args.csv:
        if len(form.players) != 2:
            raise UsageError("CSV export needs exactly two players")
        p, q = form.players
        buf = _stdio.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"{p}\\{q}"] + [_strategy_label(s) for s in form.strategies[q]])
        for a, s in enumerate(form.strategies[p]):
            w.writerow([_strategy_label(s)] + [format_value(form.table[(a, b)]) for b in range(len(form.strategies[q]))])
        o.raw(buf.getvalue())
    else:
        fields = [(f"strategies.{p}", len(form.strategies[p])) for p in form.players]
        fields.append(("distinct_outcomes", len(form.distinct_outcomes())))
        if args.list:
            for p in form.players:
                fields += [(f"{p}.{k}", _strategy_label(s)) for k, s in enumerate(form.strategies[p])]
        o.report(fields)
    o.summary(None, ", ".join(f"{p}: {len(form.strategies[p])} pure strategies" for p in form.players))
    return EXIT_OK


def cmd_reduced(args, o: Output) -> int:
    g = as_game(load(args.input))
    red = reduced_strategic_form(g)
    fields = []
    for p in red.form.players:
        fields.append((f"classes.{p}", red.class_count(p)))
        sizes = sorted({len(red.involved_info_sets(p, c)) for c in red.classes[p]})
        fields.append((f"involved_info_sets.{p}", sizes))
    o.report(fields)
    o.summary(None, ", ".join(f"{p}: {red.class_count(p)} reduced strategies" for p in red.form.players))
    return EXIT_OK


def _recast(m: EmpiricalModel, kind: str) -> EmpiricalModel:
    if kind == m.semiring.kind:
        return m
    locals_ = {}
    for f, d in m.locals.items():
        w = {}
        for a, v in d.weights.items():
            if kind == "possibility":
                w[a] = bool(v)
            elif m.semiring.kind == "possibility":
                raise UsageError("a possibilistic model has no numeric weights")
            else:
                w[a] = v
        locals_[f] = LocalDistribution(f, w, kind)
    return EmpiricalModel(m.scenario, locals_, kind)


def cmd_check_contextuality(args, o: Output) -> int:
    m = load(args.input)
    if not isinstance(m, EmpiricalModel):
        raise UsageError("check-contextuality needs a model document")
    m = _recast(m, args.semiring or m.semiring.kind)
    try:
        res = find_global_section(m)
    except IncompatibleModel as exc:
        o.report([("semiring", m.semiring.kind), ("compatible", False), ("witness", str(exc))])
        o.summary(False, "model is not compatible")
        return EXIT_FAIL
    if res:
        weights = {format_value(s): m.semiring.format(v) for s, v in sorted(res.weights.items(), key=lambda kv: format_value(kv[0])) if v}
        o.report([("semiring", m.semiring.kind), ("feasible", True), ("contextual", False), ("section_support", len(weights))] + [(f"weight.{k}", v) for k, v in weights.items()])
        o.summary(True, "global section found: the model is non-contextual")
        return EXIT_OK
    cert = res.certificate
    fields = [("semiring", m.semiring.kind), ("feasible", False), ("contextual", True), ("reason", res.reason)]
    if m.semiring.kind == "possibility":
        fields.append(("unextendable", [f"{format_value(a)}" for _, a in cert]))
    else:
        fields.append(("certificate_verified", verify_certificate(m, res)))
        labels = [format_value(r[1]) if len(r) > 1 else r[0] for r in res.rows]
        fields += [(f"certificate.{lab}", str(c)) for lab, c in zip(labels, cert) if c]
    o.report(fields)
    o.summary(False, f"no global section over the {m.semiring.kind} semiring: the model is contextual")
    return EXIT_FAIL


def cmd_lift(args, o: Output) -> int:
    mu = load(args.input)
    if not isinstance(mu, ScenarioMorphism):
        raise UsageError("lift needs a scenario-morphism document")
    g = as_game(load(args.game)) if args.game else functor_G_object(mu.target)
    gp = as_game(load(args.source_game)) if args.source_game else functor_G_object(mu.source)
    lifted = lift_morphism(mu, g, gp)
    o.raw(serialize(lifted))
    o.summary(True, "lifted to a game morphism")
    return EXIT_OK


def cmd_corpus(args, o: Output) -> int:
    if not args.name:
        fields = []
        for e in corpus.all_entries():
            fields.append((e.name, f"in_scope={_text(e.in_scope)} {e.description}"))
        fields += [(f"model.{n}", "empirical model") for n in corpus.MODEL_NAMES]
        fields += [(f"alias.{a}", n) for a, n in sorted(corpus.ALIASES.items())]
        o.report(fields)
        o.summary(None, f"{len(corpus.ENTRIES)} games, {len(corpus.MODEL_NAMES)} models")
        return EXIT_OK
    if args.name in corpus.MODEL_NAMES:
        o.raw(serialize(corpus.get_model(args.name)))
        return EXIT_OK
    try:
        e = corpus.get(args.name)
    except KeyError:
        raise UsageError(f"unknown corpus entry {args.name!r}") from None
    o.raw(serialize(e.scenario if args.kind == "scenario" else e.game))
    o.summary(None, e.description)
    return EXIT_OK


def cmd_dot(args, o: Output) -> int:
    obj = load(args.input)
    if isinstance(obj, EmpiricalModel):
        obj = obj.scenario
    if not isinstance(obj, (SpacetimeGame, Scenario)):
        raise UsageError("dot exports games and scenarios")
    o.raw(export_dot(obj))
    return EXIT_OK


# -- wiring ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stg", description="Spacetime games and causal contextuality scenarios.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__import__('spacetime_games').__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_, input_=True):
        sp = sub.add_parser(name, help=help_)
        if input_:
            sp.add_argument("input", help="file path, '-' for stdin, or corpus:<name>")
        sp.add_argument("--json", action="store_true", help="structured report as JSON")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check a document's structural invariants")
    add("check-alternating", cmd_check_alternating, "evaluate the nine alternation rules")
    add("check-secured", cmd_check_secured, "check that a scenario's cover is causally secured")
    sp = add("histories", cmd_histories, "enumerate histories")
    sp.add_argument("--all", action="store_true", help="all histories, not just complete (or closed) ones")
    sp.add_argument("--scenario", action="store_true", help="scenario-side histories for a game input")
    add("cover", cmd_cover, "print the (natural) cover")
    sp = add("convert", cmd_convert, "convert between games and scenarios")
    sp.add_argument("--to", choices=("game", "scenario"), required=True)
    sp.add_argument("--raw", action="store_true", help="build the scenario without requiring alternation")
    add("roundtrip", cmd_roundtrip, "check F(G(scenario)) against the scenario")
    sp = add("strategies", cmd_strategies, "pure strategies and the strategic form")
    sp.add_argument("--list", action="store_true", help="list every pure strategy")
    sp.add_argument("--csv", action="store_true", help="print the strategic-form table as CSV")
    add("reduced", cmd_reduced, "reduced strategic form")
    sp = add("check-contextuality", cmd_check_contextuality, "decide whether a model has a global section")
    sp.add_argument("--semiring", choices=("probability", "possibility", "signed"))
    sp = add("lift", cmd_lift, "lift a scenario morphism to a game morphism")
    sp.add_argument("--game", help="target game (default: G of the morphism's target)")
    sp.add_argument("--source-game", help="source game (default: G of the morphism's source)")
    sp = add("corpus", cmd_corpus, "list corpus entries or print one as a document", input_=False)
    sp.add_argument("name", nargs="?")
    sp.add_argument("--kind", choices=("game", "scenario"), default="game")
    add("dot", cmd_dot, "export a game or scenario as Graphviz DOT")
    return p


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    o = Output(args, out, err)
    try:
        return args.func(args, o)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except DocumentError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except PreconditionViolated as exc:
        o.report([("precondition", exc.check), ("message", str(exc))])
        o.summary(False, str(exc))
        return EXIT_FAIL
    except SpacetimeError as exc:
        o.report([("error", type(exc).__name__), ("message", str(exc))])
        o.summary(False, str(exc))
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
