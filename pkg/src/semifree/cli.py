"""Command-line front end.

One workspace per invocation, loaded from one or more .dg files (name
collisions across files are errors).  Results are printed as canonical DSL
or as JSON (--format, default from SEMIFREE_FORMAT); errors are reported
as JSON on stderr with exit code 1; usage problems exit with 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import dsl
from .constructions import localize, mediating_functor, pushout
from .cylinder import (
    cyl_object,
    cyl_object_loc,
    cyl_object_of_localized,
)
from .errors import SemifreeError, UsageError
from .functors import compose_functors, witness_from_functor
from .hocolim import Span, hocolim, hocolim_loc, hocolim_morphism
from .homotopy import hep_extend, interchange, mapping_cylinder
from .spheres import build_fixture


def _load_workspace(paths) -> dsl.Workspace:
    ws = dsl.Workspace()
    for path in paths:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
        dsl.parse_into(text, ws)
    return ws


def _parse_term(text: str, cat):
    parser = dsl._Parser(text, ring=cat.ring)
    expr = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "eof":
        raise UsageError(f"trailing input in term expression: {tok.value!r}")
    resolver = dsl._CategoryResolver(cat)
    if not expr.summands:
        raise UsageError("the zero morphism needs endpoints; write it inside a file")
    return resolver.resolve(expr, None, None, None)


def _emit(args, ws_out: dsl.Workspace, term=None):
    if args.format == "json":
        payload = dsl.workspace_to_json(ws_out)
        if term is not None:
            payload["term"] = dsl.term_to_json(term)
        text = dsl.to_json_text(payload)
    else:
        text = dsl.serialize_workspace(ws_out) if ws_out.categories or ws_out.functors else ""
        if term is not None:
            text += dsl.serialize_term(term) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _result_workspace(categories=(), functors=(), spans=()):
    ws = dsl.Workspace()
    for name, cat in categories:
        ws.categories[name] = cat
    for name, functor in functors:
        ws.functors[name] = functor
    for name, span in spans:
        ws.spans[name] = span
    # functor endpoints must be present for serialization
    known = {id(cat) for cat in ws.categories.values()}
    counter = 0
    for functor in list(ws.functors.values()):
        for cat in (functor.source, functor.target):
            if id(cat) not in known:
                counter += 1
                ws.categories[f"aux{counter}"] = cat
                known.add(id(cat))
    return ws


def _hocolim_for(span: Span):
    if span.middle.localized_inverses:
        return hocolim_loc(span)
    return hocolim(span)


# -- subcommand implementations ----------------------------------------------


def _cmd_validate(args):
    _load_workspace(args.files)
    sys.stdout.write("ok\n")
    return 0


def _cmd_cyl(args):
    ws = _load_workspace(args.files)
    cat = ws.category(args.cat)
    if args.localized:
        if args.algebra_mode:
            raise UsageError("--algebra-mode and --localized are mutually exclusive")
        data = cyl_object_of_localized(cat)
    else:
        data = cyl_object(cat, mode="algebra" if args.algebra_mode else "category")
    out = _result_workspace(
        categories=[(f"Cyl.{args.cat}", data.cyl), (args.cat, cat)],
        functors=[("i1", data.i1), ("i2", data.i2), ("p", data.p_C)],
    )
    _emit(args, out)
    return 0


def _cmd_hocolim(args):
    ws = _load_workspace(args.files)
    span = ws.span(args.span)
    data = _hocolim_for(span)
    categories = [(f"hocolim.{args.span}", data.category)]
    functors = []
    if args.morphism:
        morphism = ws.span_morphism(args.morphism)
        src = _hocolim_for(morphism.source)
        dst = _hocolim_for(morphism.target)
        functor = hocolim_morphism(morphism, src, dst)
        categories = [
            ("hocolim.source", src.category),
            ("hocolim.target", dst.category),
        ]
        functors = [(f"hocolim.{args.morphism}", functor)]
    out = _result_workspace(categories=categories, functors=functors)
    _emit(args, out)
    return 0


def _cmd_localize(args):
    ws = _load_workspace(args.files)
    cat = ws.category(args.cat)
    terms = [_parse_term(text, cat) for text in args.at]
    result, _ = localize(cat, terms)
    out = _result_workspace(categories=[(f"{args.cat}.localized", result)])
    _emit(args, out)
    return 0


def _cmd_pushout(args):
    ws = _load_workspace(args.files)
    extension = witness_from_functor(ws.functor(args.ext))
    along = ws.functor(args.along)
    result = pushout(extension, along)
    out = _result_workspace(
        categories=[("pushout", result.result)],
        functors=[("F_bar", result.F_bar.inclusion), ("G_bar", result.G_bar)],
    )
    _emit(args, out)
    return 0


def _cmd_mapcyl(args):
    ws = _load_workspace(args.files)
    functor = ws.functor(args.functor)
    data = mapping_cylinder(functor)
    out = _result_workspace(
        categories=[("M", data.m)],
        functors=[("j", data.j), ("q", data.q)],
    )
    _emit(args, out)
    return 0


def _cmd_hep(args):
    ws = _load_workspace(args.files)
    witness = witness_from_functor(ws.functor(args.ext))
    g = ws.functor(args.g)
    h = ws.functor(args.h)
    functor = hep_extend(witness, args.side, g, h)
    out = _result_workspace(
        categories=[("CylB", functor.source)],
        functors=[("E", functor)],
    )
    _emit(args, out)
    return 0


def _cmd_interchange(args):
    ws = _load_workspace(args.files)
    cat = ws.category(args.cat)
    functor = interchange(cat)
    out = _result_workspace(
        categories=[("CylCyl", functor.source)],
        functors=[("T", functor)],
    )
    _emit(args, out)
    return 0


def _cmd_apply(args):
    ws = _load_workspace(args.files)
    functor = ws.functor(args.functor)
    term = _parse_term(args.term, functor.source)
    from .functors import apply as apply_functor

    result = apply_functor(functor, term)
    _emit(args, _result_workspace(), term=result)
    return 0


def _cmd_compose(args):
    ws = _load_workspace(args.files)
    names = [n for n in args.functors.split(",") if n]
    if not names:
        raise UsageError("--functors needs at least one name")
    functors = [ws.functor(n) for n in names]
    composite = functors[0]
    for functor in functors[1:]:
        composite = compose_functors(composite, functor)
    out = _result_workspace(
        categories=[("source", composite.source), ("target", composite.target)],
        functors=[("composite", composite)],
    )
    _emit(args, out)
    return 0


def _cmd_sphere(args):
    fixture = build_fixture(args.n)
    from .spheres import derive_reflection

    reflection = derive_reflection(args.n, fixture)
    out = _result_workspace(
        categories=[("hocolim", fixture.hocolim.category), ("target", fixture.target)],
        functors=[("reflection", reflection)],
    )
    _emit(args, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semifree",
        description="Symbolic engine for semifree dg categories",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("files", nargs="+", metavar="FILE")
        p.add_argument(
            "--format",
            choices=("dsl", "json"),
            default=os.environ.get("SEMIFREE_FORMAT", "dsl"),
        )
        p.add_argument("--output", default=None, metavar="PATH")

    p = sub.add_parser("validate", help="parse and validate workspace files")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("cyl", help="cylinder object of a category")
    common(p)
    p.add_argument("--cat", required=True)
    p.add_argument("--algebra-mode", action="store_true")
    p.add_argument("--localized", action="store_true")
    p.set_defaults(func=_cmd_cyl)

    p = sub.add_parser("hocolim", help="homotopy colimit of a span")
    common(p)
    p.add_argument("--span", required=True)
    p.add_argument("--morphism", default=None)
    p.set_defaults(func=_cmd_hocolim)

    p = sub.add_parser("localize", help="dg localization of a category")
    common(p)
    p.add_argument("--cat", required=True)
    p.add_argument("--at", required=True, nargs="+", metavar="EXPR")
    p.set_defaults(func=_cmd_localize)

    p = sub.add_parser("pushout", help="pushout along a semifree extension")
    common(p)
    p.add_argument("--ext", required=True)
    p.add_argument("--along", required=True)
    p.set_defaults(func=_cmd_pushout)

    p = sub.add_parser("mapcyl", help="mapping cylinder factorization")
    common(p)
    p.add_argument("--functor", required=True)
    p.set_defaults(func=_cmd_mapcyl)

    p = sub.add_parser("hep", help="homotopy extension along a cofibration")
    common(p)
    p.add_argument("--ext", required=True)
    p.add_argument("--side", required=True, type=int, choices=(1, 2))
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.set_defaults(func=_cmd_hep)

    p = sub.add_parser("interchange", help="interchange map of the double cylinder")
    common(p)
    p.add_argument("--cat", required=True)
    p.set_defaults(func=_cmd_interchange)

    p = sub.add_parser("apply", help="apply a functor to a term")
    common(p)
    p.add_argument("--functor", required=True)
    p.add_argument("--term", required=True)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("compose", help="compose functors (left to right order)")
    common(p)
    p.add_argument("--functors", required=True, metavar="F,G,...")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("sphere", help="cotangent-sphere fixture and reflection")
    p.add_argument("--n", required=True, type=int)
    p.add_argument(
        "--format",
        choices=("dsl", "json"),
        default=os.environ.get("SEMIFREE_FORMAT", "dsl"),
    )
    p.add_argument("--output", default=None, metavar="PATH")
    p.set_defaults(func=_cmd_sphere)

    return parser


def _error_report(exc: Exception) -> str:
    return json.dumps(
        {"error": type(exc).__name__, "message": str(exc)},
        sort_keys=True,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(_error_report(exc) + "\n")
        return 2
    except (SemifreeError, OSError) as exc:
        sys.stderr.write(_error_report(exc) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
