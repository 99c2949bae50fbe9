"""Free graded k-linear categories on ordered generators.

Morphisms are finite linear combinations of paths (composable words of
generator names); the differential extends generator differentials as a
derivation.  A DgCategory is a finite ordered presentation validated for
the semifree ordering condition and d∘d = 0.

Sign convention, fixed once for the whole engine:

    d(g∘f) = dg∘f + (−1)^{|g|} g∘df

Words store generator names in application order: the word (f, g) is the
composite g∘f.  Printing is in ∘-order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import kernel
from .errors import (
    DanglingEndpoint,
    DegreeMismatch,
    DSquaredNonzero,
    DuplicateName,
    EndpointMismatch,
    OrderViolation,
    RingMismatch,
    UnknownGenerator,
    UnknownObject,
)
from .rings import QQ, Ring


@dataclass(frozen=True)
class ObjectId:
    """An object of a presentation.

    copy_tag distinguishes the copies produced by coproducts and cylinders;
    the printable name folds the tag in as a ``c<tag>.`` prefix.
    """

    name: str
    copy_tag: Optional[int] = None

    @property
    def full(self) -> str:
        if self.copy_tag is None:
            return self.name
        return f"c{self.copy_tag}.{self.name}"

    def retag(self, tag: int) -> "ObjectId":
        return ObjectId(self.full, tag)

    def __repr__(self):
        return self.full


def mangle_copy(name: str, tag: int) -> str:
    return f"c{tag}.{name}"


@dataclass(frozen=True)
class Path:
    source: ObjectId
    word: tuple
    target: ObjectId

    def __len__(self):
        return len(self.word)

    def __repr__(self):
        if not self.word:
            return f"id({self.source.full})"
        return "*".join(reversed(self.word))


def word_key(word: tuple):
    return (len(word), word)


class Term:
    """Canonical normal form of a morphism: a homogeneous linear combination
    of paths with shared endpoints.

    The support maps words to nonzero ring elements.  An empty support is
    the zero morphism; its stored degree is conventional and ignored by
    equality.
    """

    __slots__ = ("ring", "source", "target", "degree", "support")

    def __init__(self, ring: Ring, source: ObjectId, target: ObjectId, degree: int, support: dict):
        self.ring = ring
        self.source = source
        self.target = target
        self.degree = degree
        self.support = support

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(ring: Ring, source: ObjectId, target: ObjectId, degree: int = 0) -> "Term":
        return Term(ring, source, target, degree, {})

    @staticmethod
    def identity(ring: Ring, obj: ObjectId) -> "Term":
        return Term(ring, obj, obj, 0, {(): ring.one()})

    def is_zero(self) -> bool:
        return not self.support

    def is_identity(self) -> bool:
        return set(self.support) == {()} and self.ring.eq(self.support[()], self.ring.one())

    # -- linear structure --------------------------------------------

    def _check_compatible(self, other: "Term"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.source != other.source or self.target != other.target:
            raise EndpointMismatch(
                f"cannot add {self.source.full}->{self.target.full} "
                f"and {other.source.full}->{other.target.full}"
            )
        if self.support and other.support and self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot add degree {self.degree} and degree {other.degree} terms"
            )

    def __add__(self, other: "Term") -> "Term":
        self._check_compatible(other)
        acc = dict(self.support)
        kernel.add_into(acc, other.support, self.ring)
        degree = self.degree if self.support else other.degree
        return Term(self.ring, self.source, self.target, degree, acc)

    def __sub__(self, other: "Term") -> "Term":
        return self + (-other)

    def __neg__(self) -> "Term":
        return Term(
            self.ring, self.source, self.target, self.degree, kernel.neg(self.support, self.ring)
        )

    def scale(self, coeff) -> "Term":
        coeff = self.ring.coerce(coeff)
        return Term(
            self.ring,
            self.source,
            self.target,
            self.degree,
            kernel.scale(coeff, self.support, self.ring),
        )

    def __mul__(self, other: "Term") -> "Term":
        return compose(self, other)

    # -- canonical identity ------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        # zero compares equal to zero regardless of stored degree
        if not self.support and not other.support:
            return True
        return self.support == other.support

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.support.items())))

    def paths(self) -> list:
        """Support as Path values in canonical order.

        Intermediate objects are not tracked per word (the owning category
        recovers them); source/target are the term's endpoints.
        """
        return [Path(self.source, w, self.target) for w in sorted(self.support, key=word_key)]

    def __repr__(self):
        return format_term(self)


def format_term(term: Term) -> str:
    """Canonical text form: paths in (length, lexicographic) order, composed
    with ``*`` in ∘-order, coefficients in lowest terms."""
    if not term.support:
        return "0"
    ring = term.ring
    chunks = []
    for word in sorted(term.support, key=word_key):
        coeff = term.support[word]
        if word:
            body = "*".join(reversed(word))
        else:
            body = f"id({term.source.full})"
        text = ring.format(coeff)
        negative = text.startswith("-")
        mag = text[1:] if negative else text
        if mag == "1" and word:
            piece = body
        else:
            piece = f"{mag}*{body}"
        if not chunks:
            chunks.append(piece if not negative else f"-{piece}")
        else:
            chunks.append(f"{'- ' if negative else '+ '}{piece}")
    return " ".join(chunks)


@dataclass(frozen=True)
class Generator:
    name: str
    source: ObjectId
    target: ObjectId
    degree: int
    differential: Term

    def __repr__(self):
        return (
            f"{self.name}: {self.source.full}->{self.target.full} "
            f"deg {self.degree} d {self.differential!r}"
        )


@dataclass(frozen=True)
class LocalizedRecord:
    """Bookkeeping for one inverted morphism: the closed degree-0 term g and
    the names of the four generators (g', ĝ, ǧ, ḡ) adjoined for it."""

    term: Term
    names: tuple  # (g', ĝ, ǧ, ḡ)


class DgCategory:
    """A validated finite ordered semifree presentation."""

    def __init__(
        self,
        objects: Sequence[ObjectId],
        generators: Sequence[Generator],
        ring: Ring = QQ,
        localized_inverses: Sequence[LocalizedRecord] = (),
        _validated: bool = False,
    ):
        self.ring = ring
        self.objects = list(objects)
        self.generators = list(generators)
        self.localized_inverses = list(localized_inverses)
        self._objects_by_full = {obj.full: obj for obj in self.objects}
        self._gens_by_name = {gen.name: gen for gen in self.generators}
        self._gen_index = {gen.name: i for i, gen in enumerate(self.generators)}
        # raw views for the kernel
        self._gen_diff = {gen.name: gen.differential.support for gen in self.generators}
        self._gen_deg = {gen.name: gen.degree for gen in self.generators}
        if not _validated:
            self._validate()

    # -- construction helpers ----------------------------------------

    def object(self, full_name: str) -> ObjectId:
        try:
            return self._objects_by_full[full_name]
        except KeyError:
            raise UnknownObject(full_name) from None

    def has_object(self, obj: ObjectId) -> bool:
        return self._objects_by_full.get(obj.full) == obj

    def generator(self, name: str) -> Generator:
        try:
            return self._gens_by_name[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def has_generator(self, name: str) -> bool:
        return name in self._gens_by_name

    def gen(self, name: str) -> Term:
        g = self.generator(name)
        return Term(self.ring, g.source, g.target, g.degree, {(name,): self.ring.one()})

    def identity(self, obj) -> Term:
        if isinstance(obj, str):
            obj = self.object(obj)
        elif not self.has_object(obj):
            raise UnknownObject(obj.full)
        return Term.identity(self.ring, obj)

    def zero(self, source: ObjectId, target: ObjectId, degree: int = 0) -> Term:
        return Term.zero(self.ring, source, target, degree)

    def term(self, source: ObjectId, target: ObjectId, degree: int, support: dict) -> Term:
        """Build and validate a Term from a raw support mapping."""
        cleaned = {}
        for word, coeff in support.items():
            coeff = self.ring.coerce(coeff)
            if self.ring.is_zero(coeff):
                continue
            src, tgt, deg = self.word_profile(word, source)
            if src != source or tgt != target:
                raise EndpointMismatch(f"path {word} does not run {source.full}->{target.full}")
            if deg != degree:
                raise DegreeMismatch(f"path {word} has degree {deg}, expected {degree}")
            cleaned[tuple(word)] = coeff
        return Term(self.ring, source, target, degree, cleaned)

    def word_profile(self, word: Sequence[str], source_hint: Optional[ObjectId] = None):
        """(source, target, degree) of a composable word, in application order."""
        if not word:
            if source_hint is None:
                raise EndpointMismatch("empty word needs a source hint")
            return source_hint, source_hint, 0
        degree = 0
        first = self.generator(word[0])
        cursor = first.source
        for name in word:
            g = self.generator(name)
            if g.source != cursor:
                raise EndpointMismatch(f"word {word} breaks at {name}")
            cursor = g.target
            degree += g.degree
        return first.source, cursor, degree

    # -- identity -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DgCategory):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.objects == other.objects
            and self.generators == other.generators
            and [(r.term, r.names) for r in self.localized_inverses]
            == [(r.term, r.names) for r in other.localized_inverses]
        )

    def __hash__(self):
        return hash((tuple(self.objects), tuple(g.name for g in self.generators)))

    def __repr__(self):
        return (
            f"DgCategory({len(self.objects)} objects, {len(self.generators)} generators)"
        )

    # -- validation ----------------------------------------------------

    def _validate(self):
        seen_obj = set()
        for obj in self.objects:
            if obj.full in seen_obj:
                raise DuplicateName(f"object {obj.full}")
            seen_obj.add(obj.full)
        seen_gen = set()
        for gen in self.generators:
            if gen.name in seen_gen:
                raise DuplicateName(f"generator {gen.name}")
            seen_gen.add(gen.name)
        for gen in self.generators:
            for end in (gen.source, gen.target):
                if not self.has_object(end):
                    raise DanglingEndpoint(f"{gen.name} endpoint {end.full} not declared")
        # ordering, endpoint and degree constraints on differentials
        for i, gen in enumerate(self.generators):
            df = gen.differential
            if df.ring != self.ring:
                raise RingMismatch(f"d{gen.name} uses ring {df.ring}")
            if df.is_zero():
                continue
            if df.source != gen.source or df.target != gen.target:
                raise EndpointMismatch(
                    f"d{gen.name} runs {df.source.full}->{df.target.full}, "
                    f"expected {gen.source.full}->{gen.target.full}"
                )
            if df.degree != gen.degree + 1:
                raise DegreeMismatch(
                    f"|d{gen.name}| = {df.degree}, expected {gen.degree + 1}"
                )
            for word in df.support:
                for name in word:
                    j = self._gen_index.get(name)
                    if j is None:
                        raise UnknownGenerator(f"d{gen.name} references {name}")
                    if j >= i:
                        raise OrderViolation(
                            f"d{gen.name} references {name}, which is not earlier"
                        )
                self.word_profile(word, gen.source)
        report = check_d_squared(self)
        if not report.ok:
            raise DSquaredNonzero(report.failures)


def make_presentation(
    objects: Sequence[ObjectId],
    generators: Sequence[Generator],
    ring: Ring = QQ,
    localized_inverses: Sequence[LocalizedRecord] = (),
) -> DgCategory:
    """Validate and construct a presentation.

    Raises DuplicateName, DanglingEndpoint, OrderViolation, DegreeMismatch,
    or DSquaredNonzero as appropriate.
    """
    return DgCategory(objects, generators, ring=ring, localized_inverses=localized_inverses)


def compose(g: Term, f: Term) -> Term:
    """g∘f: f applied first.  Bilinear on supports, additive on degrees."""
    if f.ring is not g.ring and f.ring != g.ring:
        raise RingMismatch(f"{g.ring} vs {f.ring}")
    if f.target != g.source:
        raise EndpointMismatch(
            f"cannot compose {g.source.full}->{g.target.full} after "
            f"{f.source.full}->{f.target.full}"
        )
    support = kernel.concat_bilinear(f.support, g.support, f.ring)
    return Term(f.ring, f.source, g.target, f.degree + g.degree, support)


def diff(cat: DgCategory, term: Term) -> Term:
    """The differential as a derivation, extended k-linearly to terms."""
    for word in term.support:
        for name in word:
            if name not in cat._gens_by_name:
                raise UnknownGenerator(name)
    support = kernel.leibniz(term.support, cat._gen_diff, cat._gen_deg, cat.ring)
    return Term(cat.ring, term.source, term.target, term.degree + 1, support)


@dataclass
class DSquaredReport:
    ok: bool
    failures: list  # (generator name, residual Term)

    def __bool__(self):
        return self.ok


def check_d_squared(cat: DgCategory) -> DSquaredReport:
    """Evaluate d(df) for every generator; report residuals."""
    failures = []
    for gen in cat.generators:
        residual = diff(cat, gen.differential)
        if not residual.is_zero():
            failures.append((gen.name, residual))
    return DSquaredReport(not failures, failures)


# -- coproducts -------------------------------------------------------


def _retag_term(term: Term, obj_map: dict, name_map: dict, ring: Ring) -> Term:
    support = {
        tuple(name_map[n] for n in word): coeff for word, coeff in term.support.items()
    }
    return Term(ring, obj_map[term.source.full], obj_map[term.target.full], term.degree, support)


def coproduct(cats: Sequence[DgCategory]):
    """Disjoint union of presentations.

    Factors whose object or generator names collide with another factor are
    retagged wholesale with copy_tag = their 1-based position; factors with
    globally unique names keep their identity.  Returns the coproduct and
    the list of inclusion functors.

    Localization metadata is transported along the inclusions.
    """
    from .functors import DgFunctor

    if cats:
        ring = cats[0].ring
        for cat in cats[1:]:
            if cat.ring != ring:
                raise RingMismatch("coproduct factors over different rings")
    else:
        ring = QQ

    name_sets = []
    for cat in cats:
        names = {obj.full for obj in cat.objects} | {g.name for g in cat.generators}
        name_sets.append(names)
    needs_tag = []
    for i, names in enumerate(name_sets):
        clash = any(i != j and names & other for j, other in enumerate(name_sets))
        needs_tag.append(clash)

    objects: list = []
    generators: list = []
    records: list = []
    maps = []  # (obj_map, name_map) per factor
    for idx, cat in enumerate(cats):
        tag = idx + 1 if needs_tag[idx] else None
        if tag is None:
            obj_map = {obj.full: obj for obj in cat.objects}
            name_map = {g.name: g.name for g in cat.generators}
        else:
            obj_map = {obj.full: obj.retag(tag) for obj in cat.objects}
            name_map = {g.name: mangle_copy(g.name, tag) for g in cat.generators}
        objects.extend(obj_map[obj.full] for obj in cat.objects)
        for gen in cat.generators:
            generators.append(
                Generator(
                    name_map[gen.name],
                    obj_map[gen.source.full],
                    obj_map[gen.target.full],
                    gen.degree,
                    _retag_term(gen.differential, obj_map, name_map, ring),
                )
            )
        for rec in cat.localized_inverses:
            records.append(
                LocalizedRecord(
                    _retag_term(rec.term, obj_map, name_map, ring),
                    tuple(name_map[n] for n in rec.names),
                )
            )
        maps.append((obj_map, name_map))

    result = make_presentation(objects, generators, ring=ring, localized_inverses=records)
    inclusions = []
    for idx, cat in enumerate(cats):
        obj_map, name_map = maps[idx]
        inclusions.append(
            DgFunctor(
                cat,
                result,
                {obj.full: obj_map[obj.full] for obj in cat.objects},
                {g.name: result.gen(name_map[g.name]) for g in cat.generators},
            )
        )
    return result, inclusions


def algebra_coproduct(cats: Sequence[DgCategory]):
    """Coproduct of single-object presentations in dg-algebra mode: the
    factors share their unique object and the generator sets are juxtaposed,
    each factor retagged with its position."""
    from .functors import DgFunctor

    if not cats:
        raise ValueError("algebra coproduct needs at least one factor")
    ring = cats[0].ring
    base_obj = cats[0].objects[0]
    for cat in cats:
        if len(cat.objects) != 1:
            raise ValueError("algebra mode needs single-object categories")
        if cat.objects[0] != base_obj:
            raise ValueError("algebra coproduct factors must share their object")
        if cat.ring != ring:
            raise RingMismatch("coproduct factors over different rings")

    objects = [base_obj]
    generators: list = []
    maps = []
    for idx, cat in enumerate(cats):
        tag = idx + 1
        name_map = {g.name: mangle_copy(g.name, tag) for g in cat.generators}
        obj_map = {base_obj.full: base_obj}
        for gen in cat.generators:
            generators.append(
                Generator(
                    name_map[gen.name],
                    base_obj,
                    base_obj,
                    gen.degree,
                    _retag_term(gen.differential, obj_map, name_map, ring),
                )
            )
        maps.append(name_map)

    result = make_presentation(objects, generators, ring=ring)
    inclusions = []
    for idx, cat in enumerate(cats):
        name_map = maps[idx]
        inclusions.append(
            DgFunctor(
                cat,
                result,
                {base_obj.full: base_obj},
                {g.name: result.gen(name_map[g.name]) for g in cat.generators},
            )
        )
    return result, inclusions


# -- hom-complex truncations ------------------------------------------


@dataclass
class SparseMatrix:
    """Rows × columns over a coefficient ring, stored as {(row, col): coeff}."""

    rows: int
    cols: int
    entries: dict

    def column(self, j: int) -> dict:
        return {i: c for (i, jj), c in self.entries.items() if jj == j}

    def mul(self, other: "SparseMatrix", ring: Ring) -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out: dict = {}
        by_col: dict = {}
        for (i, j), c in self.entries.items():
            by_col.setdefault(j, []).append((i, c))
        for (k, j), c in other.entries.items():
            for i, a in by_col.get(k, ()):
                key = (i, j)
                acc = ring.add(out.get(key, ring.zero()), ring.mul(a, c))
                if ring.is_zero(acc):
                    out.pop(key, None)
                else:
                    out[key] = acc
        return SparseMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.entries


@dataclass
class HomTruncation:
    basis: list  # Paths A→B of the requested degree, length ≤ cutoff
    image_basis: list  # Paths of degree+1 under the same cutoff
    d_matrix: SparseMatrix  # image_basis × basis
    escaped_columns: set  # columns whose differential leaves the truncation


def _enumerate_paths(cat: DgCategory, A: ObjectId, B: ObjectId, max_len: int):
    """All composable words A→B of length ≤ max_len, in (len, word) order."""
    out_by = {}
    for gen in cat.generators:
        out_by.setdefault(gen.source.full, []).append(gen)
    results = []
    frontier = [((), A)]
    if A == B:
        results.append(())
    for _ in range(max_len):
        nxt = []
        for word, cursor in frontier:
            for gen in out_by.get(cursor.full, ()):
                new_word = word + (gen.name,)
                nxt.append((new_word, gen.target))
                if gen.target == B:
                    results.append(new_word)
        frontier = nxt
    return sorted(results, key=word_key)


def hom_truncation(
    cat: DgCategory, A: ObjectId, B: ObjectId, degree: int, max_word_len: int
) -> HomTruncation:
    """Basis of hom(A,B) in one degree, truncated by word length, with the
    matrix of d into the degree+1 truncation.  Columns whose image needs
    longer words than the cutoff are flagged as escaped."""
    if max_word_len < 0:
        raise ValueError("max_word_len must be nonnegative")
    if not cat.has_object(A):
        raise UnknownObject(A.full)
    if not cat.has_object(B):
        raise UnknownObject(B.full)
    words = _enumerate_paths(cat, A, B, max_word_len)

    def deg(word):
        return sum(cat._gen_deg[n] for n in word)

    basis_words = [w for w in words if deg(w) == degree]
    image_words = [w for w in words if deg(w) == degree + 1]
    image_index = {w: i for i, w in enumerate(image_words)}
    entries: dict = {}
    escaped = set()
    for j, word in enumerate(basis_words):
        term = cat.term(A, B, degree, {word: cat.ring.one()})
        image = diff(cat, term)
        for w, coeff in image.support.items():
            i = image_index.get(w)
            if i is None:
                escaped.add(j)
            else:
                entries[(i, j)] = coeff
    return HomTruncation(
        basis=[Path(A, w, B) for w in basis_words],
        image_basis=[Path(A, w, B) for w in image_words],
        d_matrix=SparseMatrix(len(image_words), len(basis_words), entries),
        escaped_columns=escaped,
    )
