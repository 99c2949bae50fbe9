"""Dg functors between presentations.

A functor is an object map plus a generator-to-term map, validated as a
degree-0 chain map on generators (which implies the chain-map property on
all morphisms, since the differential is a derivation).
"""

from __future__ import annotations

from typing import Optional, Sequence

from . import kernel
from .core import DgCategory, ObjectId, Term, coproduct, diff
from .errors import (
    ChainMapViolation,
    DegreeMismatch,
    EndpointMismatch,
    OrderViolation,
    SourceTargetMismatch,
    UnknownGenerator,
    UnknownObject,
)


class DgFunctor:
    """object_map: source object full name → target ObjectId;
    generator_map: source generator name → Term over the target."""

    __slots__ = ("source", "target", "object_map", "generator_map", "_images")

    def __init__(
        self,
        source: DgCategory,
        target: DgCategory,
        object_map: dict,
        generator_map: dict,
        _validated: bool = False,
    ):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.generator_map = dict(generator_map)
        self._images = {name: t.support for name, t in self.generator_map.items()}
        if not _validated:
            self._validate()

    def obj(self, obj: ObjectId) -> ObjectId:
        try:
            return self.object_map[obj.full]
        except KeyError:
            raise UnknownObject(obj.full) from None

    def __call__(self, term: Term) -> Term:
        return apply(self, term)

    def _validate(self):
        for obj in self.source.objects:
            image = self.object_map.get(obj.full)
            if image is None:
                raise UnknownObject(f"object map misses {obj.full}")
            if not self.target.has_object(image):
                raise UnknownObject(f"{obj.full} maps to undeclared {image.full}")
        violations = []
        for gen in self.source.generators:
            image = self.generator_map.get(gen.name)
            if image is None:
                raise UnknownGenerator(f"generator map misses {gen.name}")
            src = self.obj(gen.source)
            tgt = self.obj(gen.target)
            if image.source != src or image.target != tgt:
                raise EndpointMismatch(
                    f"F({gen.name}) runs {image.source.full}->{image.target.full}, "
                    f"expected {src.full}->{tgt.full}"
                )
            if not image.is_zero() and image.degree != gen.degree:
                raise DegreeMismatch(
                    f"|F({gen.name})| = {image.degree}, expected {gen.degree}"
                )
            for word in image.support:
                self.target.word_profile(word, src)
            residual = diff(self.target, image) - apply(self, gen.differential)
            if not residual.is_zero():
                violations.append((gen.name, residual))
        if violations:
            raise ChainMapViolation(violations)

    def __eq__(self, other):
        if not isinstance(other, DgFunctor):
            return NotImplemented
        return functor_equal(self, other)

    def __repr__(self):
        return f"DgFunctor({len(self.object_map)} objects, {len(self.generator_map)} generators)"


def make_functor(
    source: DgCategory, target: DgCategory, object_map: dict, generator_map: dict
) -> DgFunctor:
    """Validated functor constructor.  object_map may be keyed by ObjectId or
    full name; generator_map values must be Terms over the target."""
    normalized = {}
    for key, value in object_map.items():
        full = key.full if isinstance(key, ObjectId) else key
        if isinstance(value, str):
            value = target.object(value)
        normalized[full] = value
    return DgFunctor(source, target, normalized, generator_map)


def apply(functor: DgFunctor, term: Term) -> Term:
    """k-linear, monoidal application: F(g∘f) = F(g)∘F(f), F(1_A) = 1_{F(A)}."""
    for word in term.support:
        for name in word:
            if name not in functor._images:
                raise UnknownGenerator(name)
    src = functor.obj(term.source)
    tgt = functor.obj(term.target)
    support = kernel.apply_words(term.support, functor._images, functor.target.ring)
    return Term(functor.target.ring, src, tgt, term.degree, support)


def identity_functor(cat: DgCategory) -> DgFunctor:
    return DgFunctor(
        cat,
        cat,
        {obj.full: obj for obj in cat.objects},
        {gen.name: cat.gen(gen.name) for gen in cat.generators},
        _validated=True,
    )


def compose_functors(g: DgFunctor, f: DgFunctor) -> DgFunctor:
    """g∘f, computed generator-wise."""
    if f.target != g.source:
        raise SourceTargetMismatch("middle categories differ")
    return DgFunctor(
        f.source,
        g.target,
        {full: g.obj(obj) for full, obj in f.object_map.items()},
        {name: apply(g, image) for name, image in f.generator_map.items()},
        _validated=True,
    )


def functor_equal(f: DgFunctor, g: DgFunctor) -> bool:
    """Presentation-level equality: same endpoints, equal object maps, equal
    canonical generator images."""
    if f.source != g.source or f.target != g.target:
        return False
    if f.object_map != g.object_map:
        return False
    if f.generator_map.keys() != g.generator_map.keys():
        return False
    return all(f.generator_map[name] == g.generator_map[name] for name in f.generator_map)


def codiagonal(cat: DgCategory, coproduct_pair=None) -> DgFunctor:
    """The fold functor ∇: C⊔C → C, identity on each copy."""
    if coproduct_pair is None:
        coproduct_pair = coproduct([cat, cat])
    cop, inclusions = coproduct_pair
    object_map = {}
    generator_map = {}
    for incl in inclusions:
        for full, image in incl.object_map.items():
            object_map[image.full] = incl.source.object(full)
        for name, image in incl.generator_map.items():
            (word,) = image.support
            generator_map[word[0]] = incl.source.gen(name)
    return DgFunctor(cop, cat, object_map, generator_map, _validated=True)


def inclusion(coproduct_pair, index: int) -> DgFunctor:
    """The index-th inclusion of a coproduct built by core.coproduct."""
    _, inclusions = coproduct_pair
    return inclusions[index]


class SemifreeExtensionWitness:
    """Records that `extension` is `base` plus freely adjoined objects and
    generators.

    The base embeds via obj_map/gen_map (identity by default, injective
    renamings when the base sits inside a coproduct copy).  Embedded
    generators must carry identical degrees and differentials; every
    non-embedded generator may only differentiate into embedded generators
    and earlier non-embedded ones.
    """

    def __init__(self, base: DgCategory, extension: DgCategory, obj_map=None, gen_map=None):
        self.base = base
        self.extension = extension
        self.obj_map = (
            dict(obj_map)
            if obj_map is not None
            else {obj.full: obj for obj in base.objects}
        )
        self.gen_map = (
            dict(gen_map)
            if gen_map is not None
            else {gen.name: gen.name for gen in base.generators}
        )
        self._validate()

    def _validate(self):
        base, extension = self.base, self.extension
        if base.ring != extension.ring:
            raise SourceTargetMismatch("base and extension rings differ")
        images = set()
        for obj in base.objects:
            image = self.obj_map.get(obj.full)
            if image is None or not extension.has_object(image):
                raise SourceTargetMismatch(f"base object {obj.full} has no image")
            if image.full in images:
                raise SourceTargetMismatch("object embedding is not injective")
            images.add(image.full)
        embedded = {}
        for gen in base.generators:
            name = self.gen_map.get(gen.name)
            if name is None or not extension.has_generator(name):
                raise SourceTargetMismatch(f"base generator {gen.name} has no image")
            if name in embedded.values() or name in embedded:
                raise SourceTargetMismatch("generator embedding is not injective")
            image = extension.generator(name)
            expected_diff = {
                tuple(self.gen_map[n] for n in word): coeff
                for word, coeff in gen.differential.support.items()
            }
            if (
                image.source != self.obj_map[gen.source.full]
                or image.target != self.obj_map[gen.target.full]
                or image.degree != gen.degree
                or image.differential.support != expected_diff
            ):
                raise SourceTargetMismatch(
                    f"extension disagrees with base on generator {gen.name}"
                )
            embedded[gen.name] = name
        embedded_objs = set(images)
        embedded_gens = set(embedded.values())
        self.new_objects = [o for o in extension.objects if o.full not in embedded_objs]
        self.new_generators = []
        allowed = set(embedded_gens)
        for gen in extension.generators:
            if gen.name in embedded_gens:
                continue
            for word in gen.differential.support:
                for letter in word:
                    if letter not in allowed:
                        raise OrderViolation(
                            f"new generator {gen.name} differentiates into {letter}"
                        )
            allowed.add(gen.name)
            self.new_generators.append(gen)

    @property
    def inclusion(self) -> DgFunctor:
        return DgFunctor(
            self.base,
            self.extension,
            {obj.full: self.obj_map[obj.full] for obj in self.base.objects},
            {
                gen.name: self.extension.gen(self.gen_map[gen.name])
                for gen in self.base.generators
            },
            _validated=True,
        )

    def __repr__(self):
        return (
            f"SemifreeExtensionWitness(+{len(self.new_objects)} objects, "
            f"+{len(self.new_generators)} generators)"
        )


def witness_from_functor(functor: DgFunctor) -> SemifreeExtensionWitness:
    """Recognize a functor as a semifree extension inclusion: objects map
    injectively and every generator maps to a single distinct generator
    with coefficient one."""
    one = functor.target.ring.one()
    gen_map = {}
    for gen in functor.source.generators:
        image = functor.generator_map[gen.name]
        if len(image.support) != 1:
            raise OrderViolation(f"not an inclusion: rewrites generator {gen.name}")
        ((word, coeff),) = image.support.items()
        if len(word) != 1 or not functor.target.ring.eq(coeff, one):
            raise OrderViolation(f"not an inclusion: rewrites generator {gen.name}")
        gen_map[gen.name] = word[0]
    return SemifreeExtensionWitness(
        functor.source,
        functor.target,
        obj_map=dict(functor.object_map),
        gen_map=gen_map,
    )
