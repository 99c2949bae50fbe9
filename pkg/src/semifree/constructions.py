"""Presentation-level constructions: semifree extensions, pushouts along
extensions, dg localization, basis change, and (de)stabilization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernel
from .core import (
    DgCategory,
    Generator,
    LocalizedRecord,
    ObjectId,
    Term,
    diff,
    format_term,
    make_presentation,
)
from .errors import (
    ConeNotCommuting,
    GeneratorStillUsed,
    NameCollision,
    NotAStabilizationPair,
    NotAUnit,
    NotClosed,
    NotDegreeZero,
    OrderViolation,
    SourceTargetMismatch,
)
from .functors import (
    DgFunctor,
    SemifreeExtensionWitness,
    apply,
    compose_functors,
    functor_equal,
)

LOC_PREFIXES = ("inv.", "ih.", "ic.", "ib.")


def semifree_extension(
    base: DgCategory,
    new_objects: Sequence[ObjectId],
    new_generators: Sequence[Generator],
):
    """Extend a presentation by objects and generators appended after the
    base; differentials of the new generators may use base morphisms and
    earlier new generators."""
    extension = make_presentation(
        list(base.objects) + list(new_objects),
        list(base.generators) + list(new_generators),
        ring=base.ring,
        localized_inverses=base.localized_inverses,
    )
    return extension, SemifreeExtensionWitness(base, extension)


@dataclass
class PushoutResult:
    result: DgCategory
    F: SemifreeExtensionWitness  # A ↪ B
    G: DgFunctor  # A → C
    F_bar: SemifreeExtensionWitness  # C ↪ D
    G_bar: DgFunctor  # B → D
    transported_objects: dict  # full name in B → ObjectId in D
    transported_generators: dict  # name in B → name in D


def pushout(F: SemifreeExtensionWitness, G: DgFunctor) -> PushoutResult:
    """Pushout of B ←(F)− A −(G)→ C along a semifree extension F.

    D is C extended by the transported new objects and, for each new
    generator f of the extension, a generator f̄ with |f̄| = |f| and
    df̄ = Ḡ(df).  Names carry over verbatim; a clash with C is an error.
    """
    A, B, C = F.base, F.extension, G.target
    if G.source != A:
        raise SourceTargetMismatch("G must start at the base of the extension")
    ring = C.ring

    obj_map = {}  # Ḡ on objects of B, keyed by B-object full names
    for obj in A.objects:
        obj_map[F.obj_map[obj.full].full] = G.obj(obj)
    transported_objects = {}
    for obj in F.new_objects:
        if any(o.full == obj.full for o in C.objects):
            raise NameCollision(f"object {obj.full} already exists in the pushout base")
        obj_map[obj.full] = obj
        transported_objects[obj.full] = obj

    # Ḡ on generators of B, keyed by B-generator names
    images = {
        F.gen_map[name]: term.support for name, term in G.generator_map.items()
    }
    transported_generators = {}
    new_generators = []
    for gen in F.new_generators:
        if C.has_generator(gen.name):
            raise NameCollision(f"generator {gen.name} already exists in the pushout base")
        src = obj_map[gen.source.full]
        tgt = obj_map[gen.target.full]
        dsupport = kernel.apply_words(gen.differential.support, images, ring)
        dterm = Term(ring, src, tgt, gen.degree + 1, dsupport)
        new_generators.append(Generator(gen.name, src, tgt, gen.degree, dterm))
        images[gen.name] = {(gen.name,): ring.one()}
        transported_generators[gen.name] = gen.name

    result, f_bar = semifree_extension(C, list(transported_objects.values()), new_generators)
    g_bar = DgFunctor(
        B,
        result,
        {obj.full: obj_map[obj.full] for obj in B.objects},
        {
            gen.name: Term(
                ring,
                obj_map[gen.source.full],
                obj_map[gen.target.full],
                gen.degree,
                dict(images[gen.name]),
            )
            for gen in B.generators
        },
    )
    return PushoutResult(
        result=result,
        F=F,
        G=G,
        F_bar=f_bar,
        G_bar=g_bar,
        transported_objects=transported_objects,
        transported_generators=transported_generators,
    )


def mediating_functor(P: PushoutResult, H_B: DgFunctor, H_C: DgFunctor) -> DgFunctor:
    """The unique functor u: D → E with u∘Ḡ = H_B and u∘F̄ = H_C, for a
    commuting cocone (H_B, H_C)."""
    if H_B.target != H_C.target:
        raise SourceTargetMismatch("cocone legs land in different categories")
    if not functor_equal(
        compose_functors(H_B, P.F.inclusion), compose_functors(H_C, P.G)
    ):
        raise ConeNotCommuting("H_B∘F ≠ H_C∘G")
    D = P.result
    object_map = {}
    for obj in D.objects:
        if obj.full in P.transported_objects:
            object_map[obj.full] = H_B.obj(obj)
        else:
            object_map[obj.full] = H_C.obj(obj)
    generator_map = {}
    for gen in D.generators:
        if gen.name in P.transported_generators:
            generator_map[gen.name] = H_B.generator_map[gen.name]
        else:
            generator_map[gen.name] = H_C.generator_map[gen.name]
    return DgFunctor(D, H_C.target, object_map, generator_map)


# -- dg localization ---------------------------------------------------


def localized_name_stub(term: Term) -> str:
    """Deterministic name for the morphism being inverted: the generator
    name when the term is a single unit-coefficient generator path, else
    the canonical expression with spaces stripped."""
    if len(term.support) == 1:
        ((word, coeff),) = term.support.items()
        if len(word) == 1 and term.ring.eq(coeff, term.ring.one()):
            return word[0]
    return format_term(term).replace(" ", "")


def inverse_names(term: Term) -> tuple:
    stub = localized_name_stub(term)
    return tuple(prefix + stub for prefix in LOC_PREFIXES)


def localize(cat: DgCategory, terms: Sequence[Term], names_list: Sequence[tuple] = None):
    """Adjoin (g', ĝ, ǧ, ḡ) for each closed degree-0 term g, with

        dg' = 0, dĝ = 1_A − g'∘g, dǧ = 1_B − g∘g', dḡ = g∘ĝ − ǧ∘g,

    degrees (0, −1, −1, −2), appended after the base generators in input
    order.  The inverted terms are recorded in localized_inverses.  Names
    default to the deterministic prefix scheme; names_list overrides them
    per term (used when reloading serialized categories whose inverse
    generators were renamed in transport).
    """
    new_generators = []
    records = []
    ring = cat.ring
    taken = {gen.name for gen in cat.generators}
    for index, g in enumerate(terms):
        if not g.is_zero() and g.degree != 0:
            raise NotDegreeZero(f"|{format_term(g)}| = {g.degree}")
        if not diff(cat, g).is_zero():
            raise NotClosed(format_term(g))
        names = None
        if names_list is not None:
            names = names_list[index]
        if names is None:
            names = inverse_names(g)
        for name in names:
            if name in taken:
                raise NameCollision(name)
            taken.add(name)
        gp_name, gh_name, gc_name, gb_name = names
        A, B = g.source, g.target
        gp = Term(ring, B, A, 0, {(gp_name,): ring.one()})
        gen_gp = Generator(gp_name, B, A, 0, Term.zero(ring, B, A, 1))
        # dĝ = 1_A − g'∘g
        d_gh = Term.identity(ring, A) - (gp * g)
        gen_gh = Generator(gh_name, A, A, -1, d_gh)
        # dǧ = 1_B − g∘g'
        d_gc = Term.identity(ring, B) - (g * gp)
        gen_gc = Generator(gc_name, B, B, -1, d_gc)
        # dḡ = g∘ĝ − ǧ∘g
        gh = Term(ring, A, A, -1, {(gh_name,): ring.one()})
        gc = Term(ring, B, B, -1, {(gc_name,): ring.one()})
        d_gb = (g * gh) - (gc * g)
        gen_gb = Generator(gb_name, A, B, -2, d_gb)
        new_generators.extend([gen_gp, gen_gh, gen_gc, gen_gb])
        records.append(LocalizedRecord(g, names))

    extension = make_presentation(
        list(cat.objects),
        list(cat.generators) + new_generators,
        ring=ring,
        localized_inverses=list(cat.localized_inverses) + records,
    )
    return extension, SemifreeExtensionWitness(cat, extension)


def find_localized_record(cat: DgCategory, term: Term):
    for record in cat.localized_inverses:
        if record.term == term:
            return record
    return None


# -- basis change --------------------------------------------------------


def change_basis(cat: DgCategory, subs: dict):
    """Replace generators fᵢ by f̃ᵢ := uᵢfᵢ + gᵢ (uᵢ a unit, gᵢ generated by
    strictly earlier generators).  Names are kept; differentials are
    rewritten through the back-substitution fᵢ = uᵢ⁻¹(f̃ᵢ − gᵢ).

    Returns the new presentation and the mutually inverse functors
    (forward: old → new, backward: new → old).
    """
    ring = cat.ring
    for name, (unit, shift) in subs.items():
        gen = cat.generator(name)
        unit = ring.coerce(unit)
        if not ring.is_unit(unit):
            raise NotAUnit(f"{ring.format(unit)} for {name}")
        if not shift.is_zero():
            if shift.degree != gen.degree:
                raise OrderViolation(f"|g| for {name} has wrong degree")
            if shift.source != gen.source or shift.target != gen.target:
                raise OrderViolation(f"g for {name} has wrong endpoints")
        limit = cat._gen_index[name]
        for word in shift.support:
            for letter in word:
                if cat._gen_index[letter] >= limit:
                    raise OrderViolation(
                        f"substitution for {name} uses {letter}, which is not earlier"
                    )

    # rewriting of old-basis terms into the new basis, built in order
    rewrite_images: dict = {}
    new_generators = []
    for gen in cat.generators:
        unit, shift = subs.get(gen.name, (ring.one(), Term.zero(ring, gen.source, gen.target)))
        unit = ring.coerce(unit)
        gen_term = Term(ring, gen.source, gen.target, gen.degree, {(gen.name,): ring.one()})
        if ring.eq(unit, ring.one()) and shift.is_zero():
            rewrite_images[gen.name] = gen_term.support
            d_new = Term(
                ring,
                gen.source,
                gen.target,
                gen.degree + 1,
                kernel.apply_words(gen.differential.support, rewrite_images, ring),
            )
            new_generators.append(Generator(gen.name, gen.source, gen.target, gen.degree, d_new))
            continue
        # d of the new basis element, in old coordinates: u·df + dg
        d_old = gen.differential.scale(unit) + diff(cat, shift)
        d_new = Term(
            ring,
            gen.source,
            gen.target,
            gen.degree + 1,
            kernel.apply_words(d_old.support, rewrite_images, ring),
        )
        new_generators.append(Generator(gen.name, gen.source, gen.target, gen.degree, d_new))
        # back-substitution f = u⁻¹(f̃ − g), with g rewritten into the new basis
        shift_new = Term(
            ring,
            gen.source,
            gen.target,
            gen.degree,
            kernel.apply_words(shift.support, rewrite_images, ring),
        )
        rewrite_images[gen.name] = (gen_term - shift_new).scale(ring.invert(unit)).support

    records = []
    touched = set(subs)
    for record in cat.localized_inverses:
        if touched & set(record.names):
            continue
        new_term = Term(
            ring,
            record.term.source,
            record.term.target,
            record.term.degree,
            kernel.apply_words(record.term.support, rewrite_images, ring),
        )
        records.append(LocalizedRecord(new_term, record.names))

    new_cat = make_presentation(
        list(cat.objects), new_generators, ring=ring, localized_inverses=records
    )

    forward = DgFunctor(
        cat,
        new_cat,
        {obj.full: obj for obj in cat.objects},
        {
            gen.name: Term(
                ring, gen.source, gen.target, gen.degree, dict(rewrite_images[gen.name])
            )
            for gen in cat.generators
        },
    )
    backward_map = {}
    for gen in cat.generators:
        unit, shift = subs.get(gen.name, (ring.one(), Term.zero(ring, gen.source, gen.target)))
        unit = ring.coerce(unit)
        gen_term = Term(ring, gen.source, gen.target, gen.degree, {(gen.name,): ring.one()})
        backward_map[gen.name] = gen_term.scale(unit) + shift
    backward = DgFunctor(
        new_cat,
        cat,
        {obj.full: obj for obj in cat.objects},
        backward_map,
    )
    return new_cat, (forward, backward)


# -- destabilization -------------------------------------------------------


def destabilize(cat: DgCategory, pairs: Sequence[tuple]):
    """Remove stabilization pairs (a, b) with da = b (b a single generator
    path with coefficient 1), provided neither occurs in a retained
    generator's differential.  Returns the smaller presentation and its
    inclusion into the original."""
    removed = set()
    ring = cat.ring
    for a_name, b_name in pairs:
        a = cat.generator(a_name)
        cat.generator(b_name)
        expected = {(b_name,): ring.one()}
        if a.differential.support != expected:
            raise NotAStabilizationPair(f"d{a_name} ≠ {b_name}")
        removed.add(a_name)
        removed.add(b_name)
    if len(removed) != 2 * len(pairs):
        raise NotAStabilizationPair("pairs overlap")
    retained = []
    for gen in cat.generators:
        if gen.name in removed:
            continue
        for word in gen.differential.support:
            for letter in word:
                if letter in removed:
                    raise GeneratorStillUsed(letter, gen.name)
        retained.append(gen)
    records = [
        rec for rec in cat.localized_inverses if not (set(rec.names) & removed)
    ]
    smaller = make_presentation(
        list(cat.objects), retained, ring=ring, localized_inverses=records
    )
    inclusion = DgFunctor(
        smaller,
        cat,
        {obj.full: obj for obj in cat.objects},
        {gen.name: cat.gen(gen.name) for gen in smaller.generators},
        _validated=True,
    )
    return smaller, inclusion
