"""Homotopy colimits of spans of presentations.

hocolim(A ←α C →β B) is the semifree extension of A⊔B by the t-data of C
with the two legs in place of the cylinder's copy inclusions.  When the
middle is a localization C₀[S⁻¹], the t-data is indexed by C₀ only and the
inverses get explicit composite t-values (Thm-level simpler form); the
object part then coincides with the hocolim over C₀.

The internal cofibrant-replacement pipeline (t_diagram, then
cofibrant_resolution, then a single pushout) reproduces the closed form
exactly and is kept as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .constructions import PushoutResult, pushout
from .core import DgCategory, Term, coproduct
from .cylinder import (
    CylinderData,
    TExtension,
    _loc_extension,
    build_t_extension,
    cyl_functor,
    cyl_object,
    retarget,
    split_localization,
    t_extension_morphism,
)
from .errors import NotLocalized, ShapeMismatch, SourceTargetMismatch, SquareNotCommuting
from .functors import (
    DgFunctor,
    SemifreeExtensionWitness,
    codiagonal,
    compose_functors,
    functor_equal,
    identity_functor,
)


@dataclass
class Span:
    """A ←α C →β B.  The legs share their source, which is the middle."""

    alpha: DgFunctor
    beta: DgFunctor
    t_shape: Optional["TShape"] = field(default=None, repr=False)

    def __post_init__(self):
        if self.alpha.source != self.beta.source:
            raise SourceTargetMismatch("span legs start at different categories")

    @property
    def left(self) -> DgCategory:
        return self.alpha.target

    @property
    def middle(self) -> DgCategory:
        return self.alpha.source

    @property
    def right(self) -> DgCategory:
        return self.beta.target

    def __eq__(self, other):
        if not isinstance(other, Span):
            return NotImplemented
        return functor_equal(self.alpha, other.alpha) and functor_equal(self.beta, other.beta)


@dataclass
class TShape:
    """Provenance attached to T(X): the original span plus the coproducts
    used to assemble A⊔B and C⊔C."""

    original: Span
    sides_pair: tuple  # coproduct pair for A⊔B
    middles_pair: tuple  # coproduct pair for C⊔C


@dataclass
class SpanMorphism:
    """Componentwise morphism of spans; both squares must commute exactly."""

    source: Span
    target: Span
    F_A: DgFunctor
    F_C: DgFunctor
    F_B: DgFunctor

    def __post_init__(self):
        left_ok = functor_equal(
            compose_functors(self.F_A, self.source.alpha),
            compose_functors(self.target.alpha, self.F_C),
        )
        right_ok = functor_equal(
            compose_functors(self.F_B, self.source.beta),
            compose_functors(self.target.beta, self.F_C),
        )
        if not (left_ok and right_ok):
            raise SquareNotCommuting("span morphism squares do not commute")


def compose_span_morphisms(g: SpanMorphism, f: SpanMorphism) -> SpanMorphism:
    if f.target != g.source:
        raise SourceTargetMismatch("span morphisms are not composable")
    return SpanMorphism(
        f.source,
        g.target,
        compose_functors(g.F_A, f.F_A),
        compose_functors(g.F_C, f.F_C),
        compose_functors(g.F_B, f.F_B),
    )


def identity_span_morphism(span: Span) -> SpanMorphism:
    return SpanMorphism(
        span,
        span,
        identity_functor(span.left),
        identity_functor(span.middle),
        identity_functor(span.right),
    )


# -- the T functor and cofibrant resolution ------------------------------


def _coproduct_functor(src_pair, dst_pair, functors) -> DgFunctor:
    """F₁⊔F₂: the functor between coproducts acting factorwise."""
    src, src_incls = src_pair
    dst, dst_incls = dst_pair
    object_map = {}
    generator_map = {}
    for functor, incl_src, incl_dst in zip(functors, src_incls, dst_incls):
        for full, image in incl_src.object_map.items():
            object_map[image.full] = incl_dst.obj(functor.object_map[full])
        for name, image in incl_src.generator_map.items():
            (word,) = image.support
            generator_map[word[0]] = incl_dst(functor.generator_map[name])
    return DgFunctor(src, dst, object_map, generator_map, _validated=True)


def t_diagram(span: Span) -> Span:
    """T(X) = (A⊔B ←α⊔β C⊔C →∇ C)."""
    sides = coproduct([span.left, span.right])
    middles = coproduct([span.middle, span.middle])
    legs = _coproduct_functor(
        middles,
        sides,
        [span.alpha, span.beta],
    )
    nabla = codiagonal(span.middle, middles)
    return Span(legs, nabla, t_shape=TShape(span, sides, middles))


def t_diagram_morphism(morphism: SpanMorphism) -> SpanMorphism:
    """T on morphisms: (F_A⊔F_B, F_C⊔F_C, F_C)."""
    tx = t_diagram(morphism.source)
    ty = t_diagram(morphism.target)
    f_sides = _coproduct_functor(
        tx.t_shape.sides_pair, ty.t_shape.sides_pair, [morphism.F_A, morphism.F_B]
    )
    f_middles = _coproduct_functor(
        tx.t_shape.middles_pair, ty.t_shape.middles_pair, [morphism.F_C, morphism.F_C]
    )
    return SpanMorphism(tx, ty, f_sides, f_middles, morphism.F_C)


@dataclass
class CofibrantResolution:
    qx: Span
    p_x: SpanMorphism  # QX → TX
    cylinder: CylinderData


def cofibrant_resolution(tx: Span) -> CofibrantResolution:
    """Replace the codiagonal leg of a T-image span by the cylinder
    cofibration i_C: C⊔C ↪ Cyl(C)."""
    shape = tx.t_shape
    if shape is None:
        raise ShapeMismatch("span was not produced by t_diagram")
    base = shape.original.middle
    cyl = cyl_object(base)
    qx = Span(tx.alpha, cyl.i_C)
    p_x = SpanMorphism(
        qx,
        tx,
        identity_functor(tx.left),
        identity_functor(tx.middle),
        cyl.p_C,
    )
    return CofibrantResolution(qx, p_x, cyl)


def cofibrant_resolution_morphism(t_mor: SpanMorphism) -> SpanMorphism:
    """Q on morphisms: third component Cyl(F_C)."""
    rx = cofibrant_resolution(t_mor.source)
    ry = cofibrant_resolution(t_mor.target)
    f_cyl = cyl_functor(t_mor.F_B, rx.cylinder, ry.cylinder)
    return SpanMorphism(rx.qx, ry.qx, t_mor.F_A, t_mor.F_C, f_cyl)


# -- the closed-form hocolim ----------------------------------------------


class HocolimData:
    """hocolim(X) with the data needed to act on span morphisms."""

    def __init__(self, span: Span, ext: TExtension):
        self.span = span
        self.ext = ext
        self.category = ext.total

    def t_of(self, term: Term) -> Term:
        return self.ext.t_of(term)


def _legs_into_sides(span: Span, sides_pair):
    _, incls = sides_pair
    alpha = compose_functors(incls[0], span.alpha)
    beta = compose_functors(incls[1], span.beta)
    return alpha, beta


def hocolim(span: Span) -> HocolimData:
    """The semifree extension of A⊔B by the t-data of the middle.  Spans
    whose middle carries localization records go through hocolim_loc."""
    if span.middle.localized_inverses:
        raise NotLocalized("middle is a localization; use hocolim_loc")
    sides_pair = coproduct([span.left, span.right])
    alpha, beta = _legs_into_sides(span, sides_pair)
    ext = build_t_extension(
        sides_pair, span.middle, alpha, beta, factors=[span.left, span.right]
    )
    return HocolimData(span, ext)


def hocolim_object(span: Span) -> DgCategory:
    return hocolim(span).category


def hocolim_loc(span: Span) -> HocolimData:
    """hocolim for a middle of the form C₀[S⁻¹]: the object part is the
    hocolim over C₀; the inverses receive their composite t-values so that
    morphisms out of localized middles can be transported."""
    middle = span.middle
    base, records = split_localization(middle)
    sides_pair = coproduct([span.left, span.right])
    alpha, beta = _legs_into_sides(span, sides_pair)
    ext = _loc_extension(
        sides_pair, middle, base, records, alpha, beta, [span.left, span.right]
    )
    return HocolimData(span, ext)


def hocolim_object_loc(span: Span) -> DgCategory:
    return hocolim_loc(span).category


def hocolim_morphism(f: SpanMorphism, src: HocolimData, dst: HocolimData) -> DgFunctor:
    """hocolim(F): F_A and F_B on the sides, t*_C ↦ t*_{F_C(C)},
    t_f ↦ t_{F_C(f)} expanded over the target legs."""
    if f.source != src.span or f.target != dst.span:
        raise SourceTargetMismatch("span morphism does not match the hocolim data")
    return t_extension_morphism(src.ext, dst.ext, [f.F_A, f.F_B], f.F_C)


hocolim_morphism_loc = hocolim_morphism


# -- pipeline cross-check ---------------------------------------------------


def hocolim_via_pipeline(span: Span) -> PushoutResult:
    """colim∘Q∘T: one pushout of Cyl(C) ← C⊔C → A⊔B along the cylinder
    cofibration.  The result equals the closed-form presentation verbatim
    (same names, same order, same differentials)."""
    tx = t_diagram(span)
    res = cofibrant_resolution(tx)
    witness = res.cylinder.witness
    return pushout(witness, tx.alpha)
