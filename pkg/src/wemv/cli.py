"""Command-line driver.

Exit codes: 0 the property holds or the construction succeeded, 1 it was
refuted (the report carries a witness), 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import ideals as ideals_mod
from . import ops, pierce, structure, varieties
from .algebra import DEFAULT_BOUND, DEFAULT_SAMPLES, FiniteAlgebra, to_json
from .axioms import validate
from .documents import load_algebra, load_identities, load_topology
from .errors import InputError, UnsupportedError, WemvError
from .properties import property_suite
from .report import emit, pretty_render
from .terms import parse_identity

VERBS = {
    "validate": "check the ten axioms",
    "report": "axioms, derived laws, classification and variety membership",
    "spectrum": "prime ideals with their quotients",
    "quotient": "quotient by the ideal given with --ideal",
    "decompose": "split into the idempotent-bounded part and its complement",
    "split": "direct split at the idempotent given with --at",
    "represent": "ambient algebra with top containing the algebra as a maximal ideal",
    "variety": "membership in Can, Perf and Idem (or refute an identity without --algebra)",
    "check": "check an identity (positional) or an identity file (--file)",
    "pixley": "the three Pixley equations",
    "sheaf": "Pierce sheaf data; with --topology, check a custom sheaf family",
    "sheaf-embed": "embedding of a semisimple algebra into its stalks",
    "stone": "Stone EMV test (or the Stone lattice test on [0,a] with --at)",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", metavar="FILE", help="algebra document (JSON)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    common.add_argument("--pretty", action="store_true", help="chain elements as fractions k/n")
    common.add_argument("--file", metavar="FILE", help="identity file for check")
    common.add_argument("--ideal", metavar="JSON", help="ideal as a JSON list of elements")
    common.add_argument("--at", metavar="JSON", help="element as JSON (index, label or vector)")
    common.add_argument("--topology", metavar="FILE", help="finite space {points, opens}")
    common.add_argument("--family", metavar="JSON", help="one ideal per point, JSON list of lists")
    common.set_defaults(fmt="json")

    parser = _Parser(prog="wemv", description="Workbench for wEMV-algebras.")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True
    for verb, text in VERBS.items():
        p = sub.add_parser(verb, parents=[common], help=text, description=text)
        if verb in ("check", "variety"):
            p.add_argument("identity", nargs="?", help='identity such as "x (+) y = y (+) x"')
    return parser


def _need_algebra(args):
    if not args.algebra:
        raise InputError(f"{args.verb} needs --algebra FILE")
    alg = load_algebra(args.algebra)
    if args.pretty:
        render = pretty_render(alg)
        if render is not None:
            alg.render = render
    return alg


def _json_arg(text, flag):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"{flag} expects JSON, got {text!r}") from None


def _element(alg, text):
    return alg.parse_element(_json_arg(text, "--at"))


def _ideal(alg, text):
    value = _json_arg(text, "--ideal")
    if not isinstance(value, list):
        raise InputError("--ideal expects a JSON list")
    return ideals_mod.make_ideal(alg.parse_element(v) for v in value)


def _kw(args):
    return {"samples": args.samples, "seed": args.seed, "bound": args.bound}


def _valid(alg, args):
    ops.ensure_valid(alg, workers=args.workers, **_kw(args))


def cmd_validate(args):
    alg = _need_algebra(args)
    rep = validate(alg, workers=args.workers, **_kw(args))
    out = rep.to_dict()
    ok = len(rep.ids) - len(rep.failed_ids())
    out["summary"] = f"{ok}/{len(rep.ids)} axioms pass"
    return rep.passed, out


def cmd_report(args):
    alg = _need_algebra(args)
    kw = _kw(args)
    rep = validate(alg, workers=args.workers, **kw)
    out = {"algebra": alg.describe(), "validation": rep.to_dict()}
    if not rep.passed:
        return False, out
    props = property_suite(alg, workers=args.workers, **kw)
    top = alg.top()
    ids = alg.idempotent_elements()
    out["properties"] = props.to_dict()
    out["top"] = None if top is None else alg.render(top)
    out["idempotents"] = None if ids is None else [alg.render(a) for a in ids]
    out["strict"] = ops.is_strict(alg).to_dict()
    out["emv"] = ops.is_emv(alg, **kw).to_dict()
    out["cancellative"] = ops.is_cancellative(alg, **kw).to_dict()
    out["linear"] = ops.classify_linear(alg, **kw).to_dict()
    out["membership"] = {k: v.to_dict() for k, v in
                         varieties.membership(alg, workers=args.workers, **kw).items()}
    return props.passed, out


def cmd_spectrum(args):
    alg = _need_algebra(args)
    _valid(alg, args)
    primes = ideals_mod.spec(alg)
    entries = []
    for P in primes:
        q = ideals_mod.quotient(alg, P)
        entries.append({"ideal": P.to_list(), "quotient_size": q.size,
                        "is_chain": ideals_mod.is_chain(q.quotient)})
    meet = ideals_mod.intersection(primes)
    emb = ideals_mod.subdirect_embedding(alg)
    out = {"spectrum": entries,
           "intersection": None if meet is None else meet.to_list(),
           "subdirect_injective": emb.injective}
    return True, out


def cmd_quotient(args):
    alg = _need_algebra(args)
    _valid(alg, args)
    if not args.ideal:
        raise InputError("quotient needs --ideal")
    I = _ideal(alg, args.ideal)
    verdict = ideals_mod.is_ideal(alg, I)
    if not verdict:
        raise InputError(f"{I.to_list()} is not an ideal: {verdict.witness}")
    entry = ideals_mod.quotient(alg, I)
    proper = len(I) < alg.size
    out = {"ideal": I.to_list(), "quotient_size": entry.size,
           "classes": [[alg.render(x) for x in alg.elements() if entry.project(x) == c]
                       for c in range(entry.size)],
           "is_chain": ideals_mod.is_chain(entry.quotient),
           "is_prime": bool(ideals_mod.is_prime(alg, I)) if proper else None}
    return True, out


def cmd_decompose(args):
    alg = _need_algebra(args)
    _valid(alg, args)
    d = structure.decompose(alg, **_kw(args))
    out = d.to_dict(alg)
    out["ok"] = d.ok
    return d.ok, out


def cmd_split(args):
    alg = _need_algebra(args)
    _valid(alg, args)
    if not args.at:
        raise InputError("split needs --at ELEMENT")
    a = _element(alg, args.at)
    s = structure.split_at_idempotent(alg, a, **_kw(args))
    ambient = structure.representing(alg).ambient
    out = {"a": alg.render(a), "complement": ambient.render(s.complement),
           "checks": s.checks, "ok": s.ok}
    for key, part in (("lower", s.lower), ("upper", s.upper)):
        if isinstance(part, FiniteAlgebra):
            out[key] = [to_json(v) for v in part.labels]
        else:
            out[key] = part.description
    return s.ok, out


def cmd_represent(args):
    alg = _need_algebra(args)
    _valid(alg, args)
    rep = structure.representing(alg)
    checks = rep.verify(**_kw(args))
    out = rep.to_dict()
    out["maximality_checked"] = checks.get("maximal", True)
    out["checks"] = checks
    ok = all(v for k, v in checks.items() if k != "witnesses")
    return ok, out


def cmd_variety(args):
    if args.algebra is None:
        if not args.identity:
            raise InputError("variety needs --algebra or an identity")
        lhs, rhs = parse_identity(args.identity)
        r = varieties.refute_in_variety(lhs, rhs, **_kw(args))
        return not r.refuted, r.to_dict()
    alg = _need_algebra(args)
    _valid(alg, args)
    table = varieties.membership(alg, workers=args.workers, **_kw(args))
    out = {"algebra": alg.describe(), "membership": {k: v.holds for k, v in table.items()},
           "verdicts": {k: v.to_dict() for k, v in table.items()}}
    return True, out


def cmd_check(args):
    alg = _need_algebra(args)
    if args.identity and args.file:
        raise InputError("give either an identity or --file, not both")
    if args.identity:
        items = [(None,) + parse_identity(args.identity)]
    elif args.file:
        items = load_identities(args.file)
    else:
        raise InputError("check needs an identity or --file")
    verdicts = []
    for line, lhs, rhs in items:
        v = varieties.check_identity(alg, lhs, rhs, workers=args.workers, **_kw(args))
        d = v.to_dict()
        if line is not None:
            d = {"line": line, **d}
        verdicts.append((v.holds, d))
    holds = all(h for h, _ in verdicts)
    if len(verdicts) == 1 and not args.file:
        return holds, verdicts[0][1]
    return holds, {"holds": holds, "identities": [d for _, d in verdicts]}


def cmd_pixley(args):
    alg = _need_algebra(args)
    _valid(alg, args)
    vs = varieties.check_pixley(alg, workers=args.workers, **_kw(args))
    holds = all(vs)
    return holds, {"holds": holds, "equations": [v.to_dict() for v in vs]}


def cmd_sheaf(args):
    alg = _need_algebra(args)
    _valid(alg, args)
    if args.topology:
        n, opens = load_topology(args.topology)
        space = pierce.FiniteSpace(n, opens)
        if args.family:
            fam = _json_arg(args.family, "--family")
            if not isinstance(fam, list) or not all(isinstance(I, list) for I in fam):
                raise InputError("--family expects a JSON list of lists")
            family = [[alg.parse_element(v) for v in I] for I in fam]
        else:
            family = [pierce.stone_ideal(alg, P) for P in pierce.boolean_spectrum(alg).points]
        v = pierce.custom_sheaf_check(alg, space, family)
        return v.holds, v.to_dict()
    data = pierce.sections(alg)
    return True, data.to_dict(alg)


def cmd_sheaf_embed(args):
    alg = _need_algebra(args)
    _valid(alg, args)
    v = pierce.semisimple_sheaf_embedding(alg)
    return v.holds, v.to_dict()


def cmd_stone(args):
    alg = _need_algebra(args)
    _valid(alg, args)
    if args.at:
        a = _element(alg, args.at)
        if a not in alg.idempotent_elements():
            raise InputError(f"{alg.render(a)} is not idempotent")
        v = pierce.is_stone_lattice(alg, a)
        return v.holds, {"a": alg.render(a), **v.to_dict()}
    v = pierce.is_stone_emv(alg)
    return v.holds, v.to_dict()


COMMANDS = {
    "validate": cmd_validate, "report": cmd_report, "spectrum": cmd_spectrum,
    "quotient": cmd_quotient, "decompose": cmd_decompose, "split": cmd_split,
    "represent": cmd_represent, "variety": cmd_variety, "check": cmd_check,
    "pixley": cmd_pixley, "sheaf": cmd_sheaf, "sheaf-embed": cmd_sheaf_embed,
    "stone": cmd_stone,
}


def run(argv, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(f"wemv: error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        holds, report = COMMANDS[args.verb](args)
    except (InputError, UnsupportedError) as exc:
        emit({"error": type(exc).__name__, "message": str(exc),
              **({"locus": exc.locus} if getattr(exc, "locus", None) is not None else {})},
             args.fmt, stderr)
        return 2
    except WemvError as exc:
        emit({"error": type(exc).__name__, "message": str(exc)}, args.fmt, stderr)
        return 2
    emit(report, args.fmt, stdout)
    return 0 if holds else 1


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))
