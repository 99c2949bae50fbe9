"""Textual definition language and canonical serializer.

Grammar (whitespace-insensitive, # comments to end of line):

    workspace    := item*
    item         := category | functor | span | spanmorphism
    category     := "category" NAME "{" cat_item* "}"
    cat_item     := "object" obj_decl ("," obj_decl)* ";"
                  | "gen" NAME ":" NAME "->" NAME "deg" INT "d" expr ";"
                  | "localize" "{" loc_entry ("," loc_entry)* "}" ";"
    loc_entry    := expr ["as" "(" NAME "," NAME "," NAME "," NAME ")"]
    obj_decl     := NAME ["@" INT]                # copy tag
    functor      := "functor" NAME ":" NAME "->" NAME "{" fun_item* "}"
    fun_item     := "object" NAME "=>" NAME ";" | "gen" NAME "=>" expr ";"
    span         := "span" NAME "{" "left" "=" NAME ";" "right" "=" NAME ";" "}"
    spanmorphism := "spanmorphism" NAME "{" "from" "=" NAME ";" "to" "=" NAME ";"
                    "a" "=" NAME ";" "c" "=" NAME ";" "b" "=" NAME ";" "}"
    expr         := "0" | ["-"] summand (("+"|"-") summand)*
    summand      := [coeff "*"] factor ("*" factor)*
    coeff        := INT ["/" INT]
    factor       := "id" "(" NAME ")" | NAME

NAME is a bare identifier [A-Za-z_][A-Za-z0-9_.]* or a backtick-quoted
string (needed for derived names containing apostrophes and for names that
are not bare-safe).  ``g*f`` is the composite g∘f; INT is unsigned, signs
are operators.  Localize clauses apply to the category built so far, so
interleaved extensions and repeated localizations round-trip.

Categories declared in one workspace are available to later items;
`parse(serialize(ws))` reproduces the workspace structurally and
`serialize` is byte-deterministic.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .constructions import localize
from .core import (
    DgCategory,
    Generator,
    ObjectId,
    Term,
    make_presentation,
    word_key,
)
from .errors import (
    DegreeMismatch,
    DslSyntaxError,
    EndpointMismatch,
    ResolutionError,
    SemifreeError,
)
from .functors import DgFunctor, make_functor
from .hocolim import Span, SpanMorphism
from .rings import QQ, Ring

BARE_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*\Z")


@dataclass
class Workspace:
    ring: Ring = QQ
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    spans: dict = field(default_factory=dict)
    span_morphisms: dict = field(default_factory=dict)
    positions: dict = field(default_factory=dict)  # (kind, name) → (line, col)

    def category(self, name: str) -> DgCategory:
        try:
            return self.categories[name]
        except KeyError:
            raise ResolutionError(f"unknown category {name!r}") from None

    def functor(self, name: str) -> DgFunctor:
        try:
            return self.functors[name]
        except KeyError:
            raise ResolutionError(f"unknown functor {name!r}") from None

    def span(self, name: str) -> Span:
        try:
            return self.spans[name]
        except KeyError:
            raise ResolutionError(f"unknown span {name!r}") from None

    def span_morphism(self, name: str) -> SpanMorphism:
        try:
            return self.span_morphisms[name]
        except KeyError:
            raise ResolutionError(f"unknown span morphism {name!r}") from None


# -- tokenizer ---------------------------------------------------------------

_SYMBOLS = ("=>", "->", "{", "}", "(", ")", ";", ":", ",", "+", "-", "*", "/", "=", "@")


@dataclass
class Token:
    kind: str  # "name" | "int" | symbol | "eof"
    value: str
    line: int
    col: int


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "`":
            j = text.find("`", i + 1)
            if j < 0 or "\n" in text[i + 1 : j]:
                raise DslSyntaxError("unterminated backtick name", line, col)
            tokens.append(Token("name", text[i + 1 : j], line, col))
            col += j - i + 1
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_."):
                j += 1
            tokens.append(Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        two = text[i : i + 2]
        if two in _SYMBOLS:
            tokens.append(Token(two, two, line, col))
            i += 2
            col += 2
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


# -- expression AST ----------------------------------------------------------


@dataclass
class ExprSummand:
    coeff: Fraction
    factors: list  # ("id", objname) | ("gen", genname), in ∘-order


@dataclass
class Expr:
    summands: list  # empty means the zero morphism
    line: int
    col: int


class _Parser:
    def __init__(self, text: str, ring: Ring = QQ, workspace: Optional[Workspace] = None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring
        self.ws = workspace if workspace is not None else Workspace(ring=ring)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str = "") -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise DslSyntaxError(
                f"expected {what or kind}, found {tok.value!r}", tok.line, tok.col
            )
        return tok

    def expect_keyword(self, word: str):
        tok = self.next()
        if tok.kind != "name" or tok.value != word:
            raise DslSyntaxError(f"expected {word!r}, found {tok.value!r}", tok.line, tok.col)
        return tok

    # -- toplevel ----------------------------------------------------

    def parse_workspace(self) -> Workspace:
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if tok.kind != "name":
                raise DslSyntaxError(f"expected an item, found {tok.value!r}", tok.line, tok.col)
            if tok.value == "category":
                self.parse_category()
            elif tok.value == "functor":
                self.parse_functor()
            elif tok.value == "span":
                self.parse_span()
            elif tok.value == "spanmorphism":
                self.parse_span_morphism()
            else:
                raise DslSyntaxError(f"unknown item {tok.value!r}", tok.line, tok.col)
        return self.ws

    def _register(self, kind: str, name: str, tok: Token):
        table = getattr(self.ws, kind)
        if name in table:
            raise DslSyntaxError(f"duplicate {kind[:-1]} name {name!r}", tok.line, tok.col)
        self.ws.positions[(kind, name)] = (tok.line, tok.col)

    # -- categories --------------------------------------------------

    def parse_category(self):
        self.expect_keyword("category")
        name_tok = self.expect("name", "category name")
        name = name_tok.value
        self._register("categories", name, name_tok)
        self.expect("{")
        objects: list = []
        generators: list = []
        cat: Optional[DgCategory] = None  # current accumulated category
        dirty = True

        def build() -> DgCategory:
            nonlocal cat, dirty
            if dirty or cat is None:
                base_records = cat.localized_inverses if cat is not None else ()
                cat = self._build_category(objects, generators, base_records, name_tok)
                dirty = False
            return cat

        while True:
            tok = self.peek()
            if tok.kind == "}":
                self.next()
                break
            if tok.kind != "name":
                raise DslSyntaxError(
                    f"expected a category item, found {tok.value!r}", tok.line, tok.col
                )
            if tok.value == "object":
                self.next()
                while True:
                    obj_tok = self.expect("name", "object name")
                    tag = None
                    if self.peek().kind == "@":
                        self.next()
                        tag = int(self.expect("int", "copy tag").value)
                    objects.append(ObjectId(obj_tok.value, tag))
                    dirty = True
                    if self.peek().kind == ",":
                        self.next()
                        continue
                    break
                self.expect(";")
            elif tok.value == "gen":
                self.next()
                gen_tok = self.expect("name", "generator name")
                self.expect(":")
                src = self.expect("name", "source object").value
                self.expect("->")
                tgt = self.expect("name", "target object").value
                self.expect_keyword("deg")
                degree = self._parse_int()
                self.expect_keyword("d")
                expr = self.parse_expr()
                self.expect(";")
                resolver = _PartialResolver(objects, generators, self.ring)
                source = resolver.object(src, gen_tok)
                target = resolver.object(tgt, gen_tok)
                differential = resolver.resolve(expr, source, target, degree + 1)
                generators.append(Generator(gen_tok.value, source, target, degree, differential))
                dirty = True
            elif tok.value == "localize":
                loc_tok = self.next()
                self.expect("{")
                entries = [self._parse_loc_entry()]
                while self.peek().kind == ",":
                    self.next()
                    entries.append(self._parse_loc_entry())
                self.expect("}")
                self.expect(";")
                current = build()
                resolver = _CategoryResolver(current)
                terms = []
                names_list = []
                for expr, names in entries:
                    if not expr.summands:
                        raise ResolutionError(
                            f"{expr.line}:{expr.col}: cannot localize the zero morphism"
                        )
                    terms.append(resolver.resolve(expr, None, None, None))
                    names_list.append(names)
                try:
                    cat, _ = localize(current, terms, names_list)
                except SemifreeError as exc:
                    raise type(exc)(f"{loc_tok.line}:{loc_tok.col}: {exc}") from exc
                objects = list(cat.objects)
                generators = list(cat.generators)
                dirty = False
            else:
                raise DslSyntaxError(
                    f"unknown category item {tok.value!r}", tok.line, tok.col
                )
        self.ws.categories[name] = build()

    def _parse_loc_entry(self):
        expr = self.parse_expr()
        names = None
        if self.peek().kind == "name" and self.peek().value == "as":
            self.next()
            self.expect("(")
            parts = [self.expect("name", "inverse name").value]
            for _ in range(3):
                self.expect(",")
                parts.append(self.expect("name", "inverse name").value)
            self.expect(")")
            names = tuple(parts)
        return expr, names

    def _build_category(self, objects, generators, records, tok) -> DgCategory:
        try:
            return make_presentation(
                list(objects), list(generators), ring=self.ring, localized_inverses=records
            )
        except SemifreeError as exc:
            raise _positioned(exc, tok) from exc

    # -- functors ----------------------------------------------------

    def parse_functor(self):
        self.expect_keyword("functor")
        name_tok = self.expect("name", "functor name")
        self._register("functors", name_tok.value, name_tok)
        self.expect(":")
        src_name = self.expect("name", "source category").value
        self.expect("->")
        dst_name = self.expect("name", "target category").value
        source = self.ws.category(src_name)
        target = self.ws.category(dst_name)
        self.expect("{")
        object_map: dict = {}
        generator_map: dict = {}
        resolver = _CategoryResolver(target)
        pending: list = []
        while True:
            tok = self.peek()
            if tok.kind == "}":
                self.next()
                break
            if tok.kind != "name":
                raise DslSyntaxError(
                    f"expected a functor item, found {tok.value!r}", tok.line, tok.col
                )
            if tok.value == "object":
                self.next()
                src_obj = self.expect("name", "object name").value
                self.expect("=>")
                dst_obj_tok = self.expect("name", "image object")
                self.expect(";")
                try:
                    object_map[src_obj] = target.object(dst_obj_tok.value)
                except SemifreeError as exc:
                    raise _positioned(exc, dst_obj_tok) from exc
            elif tok.value == "gen":
                self.next()
                gen_tok = self.expect("name", "generator name")
                self.expect("=>")
                expr = self.parse_expr()
                self.expect(";")
                pending.append((gen_tok, expr))
            else:
                raise DslSyntaxError(f"unknown functor item {tok.value!r}", tok.line, tok.col)
        for gen_tok, expr in pending:
            try:
                gen = source.generator(gen_tok.value)
                src_img = object_map[gen.source.full]
                tgt_img = object_map[gen.target.full]
            except KeyError as exc:
                raise ResolutionError(
                    f"{gen_tok.line}:{gen_tok.col}: object image missing for {gen_tok.value!r}"
                ) from exc
            except SemifreeError as exc:
                raise _positioned(exc, gen_tok) from exc
            generator_map[gen_tok.value] = resolver.resolve(expr, src_img, tgt_img, gen.degree)
        try:
            functor = make_functor(source, target, object_map, generator_map)
        except SemifreeError as exc:
            raise _positioned(exc, name_tok) from exc
        self.ws.functors[name_tok.value] = functor

    # -- spans -------------------------------------------------------

    def parse_span(self):
        self.expect_keyword("span")
        name_tok = self.expect("name", "span name")
        self._register("spans", name_tok.value, name_tok)
        self.expect("{")
        legs = {}
        for key in ("left", "right"):
            self.expect_keyword(key)
            self.expect("=")
            legs[key] = self.ws.functor(self.expect("name", "functor name").value)
            self.expect(";")
        self.expect("}")
        try:
            span = Span(legs["left"], legs["right"])
        except SemifreeError as exc:
            raise _positioned(exc, name_tok) from exc
        self.ws.spans[name_tok.value] = span

    def parse_span_morphism(self):
        self.expect_keyword("spanmorphism")
        name_tok = self.expect("name", "span morphism name")
        self._register("span_morphisms", name_tok.value, name_tok)
        self.expect("{")
        fields = {}
        for key in ("from", "to", "a", "c", "b"):
            self.expect_keyword(key)
            self.expect("=")
            fields[key] = self.expect("name", "entity name").value
            self.expect(";")
        self.expect("}")
        try:
            morphism = SpanMorphism(
                self.ws.span(fields["from"]),
                self.ws.span(fields["to"]),
                self.ws.functor(fields["a"]),
                self.ws.functor(fields["c"]),
                self.ws.functor(fields["b"]),
            )
        except SemifreeError as exc:
            raise _positioned(exc, name_tok) from exc
        self.ws.span_morphisms[name_tok.value] = morphism

    # -- expressions ---------------------------------------------------

    def _parse_int(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        return sign * int(self.expect("int", "integer").value)

    def parse_expr(self) -> Expr:
        first = self.peek()
        if first.kind == "int" and first.value == "0":
            after = self.tokens[self.pos + 1]
            if after.kind not in ("*", "/"):
                self.next()
                return Expr([], first.line, first.col)
        summands = []
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        summands.append(self._parse_summand(sign))
        while self.peek().kind in ("+", "-"):
            op = self.next()
            summands.append(self._parse_summand(-1 if op.kind == "-" else 1))
        return Expr(summands, first.line, first.col)

    def _parse_summand(self, sign: int) -> ExprSummand:
        coeff = Fraction(sign)
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            num = int(tok.value)
            den = 1
            if self.peek().kind == "/":
                self.next()
                den = int(self.expect("int", "denominator").value)
            coeff *= Fraction(num, den)
            self.expect("*", "'*' after coefficient")
        factors = [self._parse_factor()]
        while self.peek().kind == "*":
            self.next()
            factors.append(self._parse_factor())
        return ExprSummand(coeff, factors)

    def _parse_factor(self):
        tok = self.expect("name", "generator or id(...)")
        if tok.value == "id" and self.peek().kind == "(":
            self.next()
            obj = self.expect("name", "object name")
            self.expect(")")
            return ("id", obj.value, tok)
        return ("gen", tok.value, tok)


def _positioned(exc: SemifreeError, tok: Token) -> SemifreeError:
    try:
        return type(exc)(f"{tok.line}:{tok.col}: {exc}")
    except TypeError:
        return ResolutionError(f"{tok.line}:{tok.col}: {exc}")


class _PartialResolver:
    """Resolves expressions against a presentation still being parsed."""

    def __init__(self, objects, generators, ring: Ring):
        self.ring = ring
        self.objects = {obj.full: obj for obj in objects}
        self.gens = {gen.name: gen for gen in generators}

    def object(self, full: str, tok) -> ObjectId:
        obj = self.objects.get(full)
        if obj is None:
            raise ResolutionError(f"{tok.line}:{tok.col}: unknown object {full!r}")
        return obj

    def generator(self, name: str, tok):
        gen = self.gens.get(name)
        if gen is None:
            raise ResolutionError(f"{tok.line}:{tok.col}: unknown generator {name!r}")
        return gen

    def resolve(self, expr: Expr, source, target, degree) -> Term:
        """Build a Term; source/target/degree supply the context for the
        zero expression and are checked (when not None) otherwise."""
        ring = self.ring
        if not expr.summands:
            return Term.zero(ring, source, target, degree if degree is not None else 0)
        total = None
        for summand in expr.summands:
            word = []
            cursor = None
            start = None
            deg = 0
            for factor in reversed(summand.factors):
                kind, name, tok = factor
                if kind == "id":
                    obj = self.object(name, tok)
                    if cursor is None:
                        cursor = obj
                        start = obj
                    elif cursor != obj:
                        raise EndpointMismatch(
                            f"{tok.line}:{tok.col}: id({name}) breaks the composition"
                        )
                    continue
                gen = self.generator(name, tok)
                if cursor is None:
                    start = gen.source
                elif gen.source != cursor:
                    raise EndpointMismatch(
                        f"{tok.line}:{tok.col}: {name!r} does not compose"
                    )
                cursor = gen.target
                deg += gen.degree
                word.append(name)
            piece = Term(
                ring, start, cursor, deg, {tuple(word): ring.coerce(summand.coeff)}
            )
            total = piece if total is None else total + piece
        if source is not None and (total.source != source or total.target != target):
            raise EndpointMismatch(
                f"{expr.line}:{expr.col}: expression runs "
                f"{total.source.full}->{total.target.full}, expected "
                f"{source.full}->{target.full}"
            )
        if degree is not None and not total.is_zero() and total.degree != degree:
            raise DegreeMismatch(
                f"{expr.line}:{expr.col}: expression has degree {total.degree}, "
                f"expected {degree}"
            )
        return total


class _CategoryResolver(_PartialResolver):
    def __init__(self, cat: DgCategory):
        super().__init__(cat.objects, cat.generators, cat.ring)


def parse(text: str, ring: Ring = QQ) -> Workspace:
    """Parse a workspace; a fresh Workspace is returned."""
    return _Parser(text, ring=ring).parse_workspace()


def parse_into(text: str, workspace: Workspace) -> Workspace:
    """Parse a second file into an existing workspace; name collisions
    across files are errors."""
    return _Parser(text, ring=workspace.ring, workspace=workspace).parse_workspace()


# -- serialization ------------------------------------------------------------


def quote_name(name: str) -> str:
    if BARE_NAME.match(name) and name != "id":
        return name
    return f"`{name}`"


def serialize_term(term: Term) -> str:
    if term.is_zero():
        return "0"
    ring = term.ring
    chunks = []
    for word in sorted(term.support, key=word_key):
        coeff = term.support[word]
        text = ring.format(coeff)
        negative = text.startswith("-")
        magnitude = text[1:] if negative else text
        if word:
            body = "*".join(quote_name(n) for n in reversed(word))
            piece = body if magnitude == "1" else f"{magnitude}*{body}"
        else:
            piece = f"{magnitude}*id({quote_name(term.source.full)})"
        if not chunks:
            chunks.append(("-" if negative else "") + piece)
        else:
            chunks.append(("- " if negative else "+ ") + piece)
    return " ".join(chunks)


def _object_decl(obj: ObjectId) -> str:
    if obj.copy_tag is None:
        return quote_name(obj.name)
    return f"{quote_name(obj.name)} @ {obj.copy_tag}"


def serialize_category(name: str, cat: DgCategory) -> str:
    lines = [f"category {quote_name(name)} {{"]
    for obj in cat.objects:
        lines.append(f"  object {_object_decl(obj)};")
    quad_start = {}  # generator index where each record's quadruple begins
    index_of = {gen.name: i for i, gen in enumerate(cat.generators)}
    for record in cat.localized_inverses:
        quad_start[index_of[record.names[0]]] = record
    skip = set()
    for record in cat.localized_inverses:
        skip.update(record.names)
    from .constructions import inverse_names

    i = 0
    gens = cat.generators
    while i < len(gens):
        record = quad_start.get(i)
        if record is not None:
            entry = serialize_term(record.term)
            if record.names != inverse_names(record.term):
                pinned = ", ".join(quote_name(n) for n in record.names)
                entry += f" as ({pinned})"
            lines.append(f"  localize {{ {entry} }};")
            i += 4
            continue
        gen = gens[i]
        lines.append(
            f"  gen {quote_name(gen.name)} : {quote_name(gen.source.full)} -> "
            f"{quote_name(gen.target.full)} deg {gen.degree} "
            f"d {serialize_term(gen.differential)};"
        )
        i += 1
    lines.append("}")
    return "\n".join(lines)


def serialize_functor(name: str, functor: DgFunctor, names) -> str:
    if isinstance(names, dict):
        names = _NameIndex(names, lambda a, b: a == b)
    src = names.name_of(functor.source)
    dst = names.name_of(functor.target)
    lines = [f"functor {quote_name(name)} : {quote_name(src)} -> {quote_name(dst)} {{"]
    for obj in functor.source.objects:
        image = functor.object_map[obj.full]
        lines.append(f"  object {quote_name(obj.full)} => {quote_name(image.full)};")
    for gen in functor.source.generators:
        image = functor.generator_map[gen.name]
        lines.append(f"  gen {quote_name(gen.name)} => {serialize_term(image)};")
    lines.append("}")
    return "\n".join(lines)


class _NameIndex:
    """Looks entities up by identity first, then by structural equality."""

    def __init__(self, table: dict, equal):
        self.by_id = {id(entity): name for name, entity in table.items()}
        self.items = list(table.items())
        self.equal = equal

    def name_of(self, entity) -> str:
        name = self.by_id.get(id(entity))
        if name is not None:
            return name
        for name, candidate in self.items:
            if self.equal(candidate, entity):
                return name
        return "?"


def _workspace_indices(ws: Workspace):
    from .functors import functor_equal as feq

    cats = _NameIndex(ws.categories, lambda a, b: a == b)
    funs = _NameIndex(ws.functors, feq)
    spans = _NameIndex(ws.spans, lambda a, b: a == b)
    return cats, funs, spans


def serialize_workspace(ws: Workspace) -> str:
    chunks = []
    cats, funs, spans = _workspace_indices(ws)
    for name, cat in ws.categories.items():
        chunks.append(serialize_category(name, cat))
    for name, functor in ws.functors.items():
        chunks.append(serialize_functor(name, functor, cats))
    for name, span in ws.spans.items():
        chunks.append(
            f"span {quote_name(name)} {{\n"
            f"  left = {quote_name(funs.name_of(span.alpha))};\n"
            f"  right = {quote_name(funs.name_of(span.beta))};\n}}"
        )
    for name, morphism in ws.span_morphisms.items():
        chunks.append(
            f"spanmorphism {quote_name(name)} {{\n"
            f"  from = {quote_name(spans.name_of(morphism.source))};\n"
            f"  to = {quote_name(spans.name_of(morphism.target))};\n"
            f"  a = {quote_name(funs.name_of(morphism.F_A))};\n"
            f"  c = {quote_name(funs.name_of(morphism.F_C))};\n"
            f"  b = {quote_name(funs.name_of(morphism.F_B))};\n}}"
        )
    return "\n\n".join(chunks) + "\n"


def serialize(entity, name: str = "entity", names: Optional[dict] = None) -> str:
    """Canonical text for a single entity or a whole workspace."""
    if isinstance(entity, Workspace):
        return serialize_workspace(entity)
    if isinstance(entity, DgCategory):
        return serialize_category(name, entity) + "\n"
    if isinstance(entity, DgFunctor):
        return serialize_functor(name, entity, names or {}) + "\n"
    if isinstance(entity, Term):
        return serialize_term(entity)
    raise TypeError(f"cannot serialize {type(entity).__name__}")


# -- JSON export --------------------------------------------------------------


def term_to_json(term: Term) -> dict:
    return {
        "source": term.source.full,
        "target": term.target.full,
        "degree": term.degree,
        "paths": [
            {"coeff": term.ring.format(term.support[w]), "word": list(w)}
            for w in sorted(term.support, key=word_key)
        ],
    }


def category_to_json(name: str, cat: DgCategory) -> dict:
    return {
        "name": name,
        "ring": cat.ring.name,
        "objects": [
            {"name": obj.name, "copy_tag": obj.copy_tag, "full": obj.full}
            for obj in cat.objects
        ],
        "generators": [
            {
                "name": gen.name,
                "source": gen.source.full,
                "target": gen.target.full,
                "degree": gen.degree,
                "differential": term_to_json(gen.differential),
            }
            for gen in cat.generators
        ],
        "localized": [
            {"term": term_to_json(rec.term), "inverses": list(rec.names)}
            for rec in cat.localized_inverses
        ],
    }


def functor_to_json(name: str, functor: DgFunctor, names: dict) -> dict:
    return {
        "name": name,
        "source": names.get(id(functor.source), "?"),
        "target": names.get(id(functor.target), "?"),
        "objects": {
            obj.full: functor.object_map[obj.full].full for obj in functor.source.objects
        },
        "generators": {
            gen.name: term_to_json(functor.generator_map[gen.name])
            for gen in functor.source.generators
        },
    }


def workspace_to_json(ws: Workspace) -> dict:
    cat_names = {id(cat): name for name, cat in ws.categories.items()}
    fun_names = {id(f): name for name, f in ws.functors.items()}
    span_names = {id(s): name for name, s in ws.spans.items()}
    return {
        "categories": [category_to_json(n, c) for n, c in ws.categories.items()],
        "functors": [functor_to_json(n, f, cat_names) for n, f in ws.functors.items()],
        "spans": [
            {
                "name": n,
                "left": fun_names[id(s.alpha)],
                "right": fun_names[id(s.beta)],
            }
            for n, s in ws.spans.items()
        ],
        "span_morphisms": [
            {
                "name": n,
                "from": span_names[id(m.source)],
                "to": span_names[id(m.target)],
                "a": fun_names[id(m.F_A)],
                "c": fun_names[id(m.F_C)],
                "b": fun_names[id(m.F_B)],
            }
            for n, m in ws.span_morphisms.items()
        ],
    }


def to_json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"
