"""Cylinder objects and the cylinder functor.

The construction underneath is shared with homotopy colimits and mapping
cylinders: given a middle category C and two functors α, β: C → E, the
ambient E is extended by

* generators t_C, t'_C, t̂_C, ť_C, t̄_C between α(C) and β(C) per object
  C, with dt_C = dt'_C = 0, dt̂_C = 1 − t'_C∘t_C, dť_C = 1 − t_C∘t'_C,
  dt̄_C = t_C∘t̂_C − ť_C∘t_C, and
* a generator t_f of degree |f|−1 per generator f: A→B of C, with
  dt_f = (−1)^{|f|}(β(f)∘t_A − t_B∘α(f)) + t_{df},

where t_θ for a general morphism θ is the alternating-sign expansion over
the canonical normal form of θ.  The cylinder is the case E = C⊔C with the
two copy inclusions; in dg-algebra mode the object family is dropped and
t_C, t'_C act as identities.

For a localized base C[S⁻¹] the simpler cylinder keeps only the t-data of
C and assigns explicit composite terms as t-values of the four adjoined
inverses of each g ∈ S; those formulas live in loc_inverse_t_terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import kernel
from .core import (
    DgCategory,
    Generator,
    ObjectId,
    Term,
    algebra_coproduct,
    coproduct,
    make_presentation,
)
from .errors import NameCollision, NotLocalized, RingMismatch, SourceTargetMismatch
from .functors import (
    DgFunctor,
    SemifreeExtensionWitness,
    apply,
    identity_functor,
)

T_OBJ_PREFIXES = ("t.", "t'.", "th.", "tc.", "tb.")
T_OBJ_DEGREES = (0, 0, -1, -1, -2)
T_GEN_PREFIX = "t."


def t_object_names(obj: ObjectId) -> tuple:
    return tuple(prefix + obj.full for prefix in T_OBJ_PREFIXES)


def retarget(functor: DgFunctor, total: DgCategory) -> DgFunctor:
    """View a functor into E as a functor into an extension of E."""
    return DgFunctor(
        functor.source, total, functor.object_map, functor.generator_map, _validated=True
    )


class TExtension:
    """An ambient category extended by t-generators over a middle category.

    t_obj_names: object full name → the five generator names (category
    mode only).  t_gen: middle generator name → its t-value in the total
    category: a plain generator for presented generators, a composite term
    for localization inverses.  t_gen_names lists the presented ones.
    """

    def __init__(
        self,
        total: DgCategory,
        ambient: DgCategory,
        middle: DgCategory,
        alpha: DgFunctor,
        beta: DgFunctor,
        mode: str,
        t_obj_names: dict,
        t_obj_ends: dict,
        t_gen: dict,
        t_gen_names: dict,
        factors: Sequence[DgCategory],
        factor_inclusions: Sequence[DgFunctor],
    ):
        self.total = total
        self.ambient = ambient
        self.middle = middle
        self.alpha = alpha
        self.beta = beta
        self.mode = mode
        self.t_obj_names = t_obj_names
        self.t_obj_ends = t_obj_ends
        self.t_gen = t_gen
        self.t_gen_names = t_gen_names
        self.factors = list(factors)
        self.factor_inclusions = list(factor_inclusions)
        self.ring = ambient.ring

    # -- t-data accessors ---------------------------------------------

    def t_obj_term(self, obj: ObjectId, which: int) -> Term:
        """The object-indexed t*_obj as a Term, with the algebra-mode
        substitution t = t' = 1, t̂ = ť = t̄ = 0."""
        a, b = self.t_obj_ends[obj.full]
        ring = self.ring
        if self.mode == "algebra":
            if which in (0, 1):
                return Term.identity(ring, a)
            ends = {2: (a, a), 3: (b, b), 4: (a, b)}[which]
            return Term.zero(ring, ends[0], ends[1], T_OBJ_DEGREES[which])
        name = self.t_obj_names[obj.full][which]
        src, tgt = {0: (a, b), 1: (b, a), 2: (a, a), 3: (b, b), 4: (a, b)}[which]
        return Term(ring, src, tgt, T_OBJ_DEGREES[which], {(name,): ring.one()})

    def t_source(self, obj: ObjectId) -> Term:
        return self.t_obj_term(obj, 0)

    def t_of(self, term: Term) -> Term:
        """The degree |θ|−1 morphism t_θ.

        Linear in θ; identity components contribute nothing; on a word
        f_n∘…∘f_1 it is Σ_j ±β(f_n…f_{j+1})∘t_{f_j}∘α(f_{j-1}…f_1) with
        sign (−1)^(|f_{j-1}|+…+|f_1|)."""
        ring = self.ring
        alpha_images = self.alpha._images
        beta_images = self.beta._images
        deg = self.middle._gen_deg
        out: dict = {}
        one = {(): ring.one()}
        for word, coeff in term.support.items():
            n = len(word)
            if n == 0:
                continue
            suffixes = [None] * n
            acc = one
            for j in range(n - 1, -1, -1):
                suffixes[j] = acc
                acc = kernel.concat_bilinear(beta_images[word[j]], acc, ring)
            prefix = one
            sign_par = 0
            for j in range(n):
                tsup = self.t_gen[word[j]].support
                if tsup:
                    piece = kernel.concat_bilinear(prefix, tsup, ring)
                    piece = kernel.concat_bilinear(piece, suffixes[j], ring)
                    c = coeff if sign_par % 2 == 0 else ring.neg(coeff)
                    kernel.scaled_into(out, c, piece, ring)
                sign_par += deg[word[j]]
                if j + 1 < n:
                    prefix = kernel.concat_bilinear(prefix, alpha_images[word[j]], ring)
        return Term(
            ring,
            self.alpha.obj(term.source),
            self.beta.obj(term.target),
            term.degree - 1,
            out,
        )

    def t_identity_rhs(self, term: Term) -> Term:
        """(−1)^{|θ|}(β(θ)∘t_A − t_B∘α(θ)) + t_{dθ}: the differential that
        t_θ must have."""
        from .core import diff

        t_a = self.t_source(term.source)
        t_b = self.t_source(term.target)
        lead = (apply(self.beta, term) * t_a) - (t_b * apply(self.alpha, term))
        if term.degree % 2:
            lead = -lead
        return lead + self.t_of(diff(self.middle, term))

    def extended(self, new_middle: DgCategory, alpha, beta, extra_t_gen: dict) -> "TExtension":
        """Same total category, larger middle (used for localized middles)."""
        t_gen = dict(self.t_gen)
        t_gen.update(extra_t_gen)
        return TExtension(
            self.total,
            self.ambient,
            new_middle,
            alpha,
            beta,
            self.mode,
            self.t_obj_names,
            self.t_obj_ends,
            t_gen,
            self.t_gen_names,
            self.factors,
            self.factor_inclusions,
        )


def build_t_extension(
    ambient_pair,
    middle: DgCategory,
    alpha: DgFunctor,
    beta: DgFunctor,
    mode: str = "category",
    factors: Optional[Sequence[DgCategory]] = None,
) -> TExtension:
    """Extend the ambient category by the t-generators over (middle, α, β).

    ambient_pair is (category, inclusions) as produced by coproduct;
    alpha, beta map middle into the ambient category.
    """
    ambient, inclusions = ambient_pair
    ring = ambient.ring
    if middle.ring != ring:
        raise RingMismatch("middle and ambient rings differ")
    if alpha.source != middle or beta.source != middle:
        raise SourceTargetMismatch("legs must start at the middle category")

    taken = {obj.full for obj in ambient.objects}
    taken |= {gen.name for gen in ambient.generators}

    def claim(name):
        if name in taken:
            raise NameCollision(name)
        taken.add(name)

    new_generators: list = []
    t_obj_names: dict = {}
    t_obj_ends: dict = {}
    for obj in middle.objects:
        t_obj_ends[obj.full] = (alpha.obj(obj), beta.obj(obj))
    if mode == "category":
        for obj in middle.objects:
            names = t_object_names(obj)
            for name in names:
                claim(name)
            t_obj_names[obj.full] = names
            a, b = t_obj_ends[obj.full]
            t_name, tp_name, th_name, tc_name, tb_name = names
            t = Term(ring, a, b, 0, {(t_name,): ring.one()})
            tp = Term(ring, b, a, 0, {(tp_name,): ring.one()})
            th = Term(ring, a, a, -1, {(th_name,): ring.one()})
            tc = Term(ring, b, b, -1, {(tc_name,): ring.one()})
            new_generators.append(Generator(t_name, a, b, 0, Term.zero(ring, a, b, 1)))
            new_generators.append(Generator(tp_name, b, a, 0, Term.zero(ring, b, a, 1)))
            new_generators.append(
                Generator(th_name, a, a, -1, Term.identity(ring, a) - (tp * t))
            )
            new_generators.append(
                Generator(tc_name, b, b, -1, Term.identity(ring, b) - (t * tp))
            )
            new_generators.append(Generator(tb_name, a, b, -2, (t * th) - (tc * t)))
    elif mode == "algebra":
        if len(middle.objects) != 1 or len(ambient.objects) != 1:
            raise SourceTargetMismatch("algebra mode needs single-object categories")
    else:
        raise ValueError(f"unknown mode {mode!r}")

    t_gen_names = {}
    for gen in middle.generators:
        name = T_GEN_PREFIX + gen.name
        claim(name)
        t_gen_names[gen.name] = name

    # the t-expansion only needs name-level data, so the t_f differentials
    # can be assembled before the total category exists
    ext = TExtension(
        ambient,  # placeholder until the total is assembled
        ambient,
        middle,
        alpha,
        beta,
        mode,
        t_obj_names,
        t_obj_ends,
        {},
        t_gen_names,
        factors if factors is not None else [],
        inclusions,
    )
    for gen in middle.generators:
        name = t_gen_names[gen.name]
        a = alpha.obj(gen.source)
        b = beta.obj(gen.target)
        t_a = ext.t_source(gen.source)
        t_b = ext.t_source(gen.target)
        f_alpha = apply(alpha, middle.gen(gen.name))
        f_beta = apply(beta, middle.gen(gen.name))
        lead = (f_beta * t_a) - (t_b * f_alpha)
        if gen.degree % 2:
            lead = -lead
        dt = lead + ext.t_of(gen.differential)
        new_generators.append(Generator(name, a, b, gen.degree - 1, dt))
        ext.t_gen[gen.name] = Term(ring, a, b, gen.degree - 1, {(name,): ring.one()})

    total = make_presentation(
        list(ambient.objects),
        list(ambient.generators) + new_generators,
        ring=ring,
        localized_inverses=ambient.localized_inverses,
    )
    ext.total = total
    ext.alpha = retarget(alpha, total)
    ext.beta = retarget(beta, total)
    return ext


def collapse_functor(ext: TExtension, legs: Sequence[DgFunctor], target: DgCategory) -> DgFunctor:
    """The projection sending factor r through legs[r], t and t' to
    identities, and t̂, ť, t̄ and every t_f to zero.  Requires the two
    middle composites to agree in the target, which every caller
    guarantees; validation would catch a violation."""
    ring = target.ring
    object_map = {}
    generator_map = {}
    for leg, incl in zip(legs, ext.factor_inclusions):
        for full, image in incl.object_map.items():
            object_map[image.full] = leg.object_map[full]
        for name, image in incl.generator_map.items():
            (word,) = image.support
            generator_map[word[0]] = leg.generator_map[name]
    for obj in ext.middle.objects:
        a, _ = ext.t_obj_ends[obj.full]
        a_img = object_map[a.full]
        if ext.mode == "category":
            t_name, tp_name, th_name, tc_name, tb_name = ext.t_obj_names[obj.full]
            one = Term.identity(ring, a_img)
            generator_map[t_name] = one
            generator_map[tp_name] = one
            generator_map[th_name] = Term.zero(ring, a_img, a_img, -1)
            generator_map[tc_name] = Term.zero(ring, a_img, a_img, -1)
            generator_map[tb_name] = Term.zero(ring, a_img, a_img, -2)
    for gen_name, t_name in ext.t_gen_names.items():
        t_term = ext.t_gen[gen_name]
        src = object_map[t_term.source.full]
        tgt = object_map[t_term.target.full]
        generator_map[t_name] = Term.zero(ring, src, tgt, t_term.degree)
    return DgFunctor(ext.total, target, object_map, generator_map)


def t_extension_morphism(
    src: TExtension,
    dst: TExtension,
    factor_functors: Sequence[DgFunctor],
    middle_functor: DgFunctor,
) -> DgFunctor:
    """The functor between two t-extensions induced by compatible functors
    on the factors and the middle: factors map through the ambient
    coproduct, t*_C ↦ t*_{F(C)}, and t_f ↦ t_{F(f)} via the target's
    generalized t-expansion."""
    if src.mode != dst.mode:
        raise SourceTargetMismatch("mixed cylinder modes")
    object_map = {}
    generator_map = {}
    for functor, incl_src, incl_dst in zip(
        factor_functors, src.factor_inclusions, dst.factor_inclusions
    ):
        into_total = retarget(incl_dst, dst.total)
        for full, image in incl_src.object_map.items():
            object_map[image.full] = incl_dst.obj(functor.object_map[full])
        for name, image in incl_src.generator_map.items():
            (word,) = image.support
            generator_map[word[0]] = apply(into_total, functor.generator_map[name])
    if src.mode == "category":
        for obj in src.middle.objects:
            names = src.t_obj_names[obj.full]
            target_obj = middle_functor.obj(obj)
            for which, name in enumerate(names):
                generator_map[name] = dst.t_obj_term(target_obj, which)
    for gen_name, t_name in src.t_gen_names.items():
        image = dst.t_of(apply(middle_functor, src.middle.gen(gen_name)))
        generator_map[t_name] = image
    return DgFunctor(src.total, dst.total, object_map, generator_map)


# -- cylinders ----------------------------------------------------------


@dataclass
class CylinderData:
    cyl: DgCategory
    i1: DgFunctor  # C → Cyl(C)
    i2: DgFunctor
    i_C: DgFunctor  # C⊔C → Cyl(C)
    p_C: DgFunctor  # Cyl(C) → C
    mode: str
    base: DgCategory  # the category this is a cylinder for
    ext: TExtension = field(repr=False)
    witness: SemifreeExtensionWitness = field(repr=False)  # of i_C


def cyl_object(cat: DgCategory, mode: str = "category") -> CylinderData:
    """The cylinder C⊔C ↪ Cyl(C) → C."""
    if mode == "algebra":
        cop_pair = algebra_coproduct([cat, cat])
    else:
        cop_pair = coproduct([cat, cat])
    cop, inclusions = cop_pair
    ext = build_t_extension(
        cop_pair, cat, inclusions[0], inclusions[1], mode=mode, factors=[cat, cat]
    )
    witness = SemifreeExtensionWitness(cop, ext.total)
    p = collapse_functor(ext, [identity_functor(cat), identity_functor(cat)], cat)
    return CylinderData(
        cyl=ext.total,
        i1=retarget(inclusions[0], ext.total),
        i2=retarget(inclusions[1], ext.total),
        i_C=witness.inclusion,
        p_C=p,
        mode=mode,
        base=cat,
        ext=ext,
        witness=witness,
    )


def t_of(cyl: CylinderData, term: Term) -> Term:
    return cyl.ext.t_of(term)


def cyl_functor(functor: DgFunctor, cyl_src: CylinderData, cyl_dst: CylinderData) -> DgFunctor:
    """Cyl(F): extends F⊔F by t*_C ↦ t*_{F(C)} and t_f ↦ t_{F(f)}."""
    if functor.source != cyl_src.base or functor.target != cyl_dst.base:
        raise SourceTargetMismatch("cylinders do not match the functor endpoints")
    return t_extension_morphism(cyl_src.ext, cyl_dst.ext, [functor, functor], functor)


# -- localized cylinders --------------------------------------------------


def loc_inverse_t_terms(i1_quad, i2_quad, t_g: Term, t_a: Term, t_b: Term):
    """t-values for the four localization inverses of g: A→B.

    i1_quad and i2_quad are the images (g', ĝ, ǧ, ḡ) under the two legs;
    t_g, t_a, t_b are the t-values of g and of its endpoints.  Degrees come
    out as (−1, −2, −2, −3).
    """
    p1, h1, c1, b1 = i1_quad
    p2, h2, c2, b2 = i2_quad
    t_gp = -(p2 * t_g * p1) - (h2 * t_a * p1) + (p2 * t_b * c1) + ((h2 * p2) - (p2 * c2)) * t_b
    t_gh = (
        (p2 * t_g * h1)
        + (h2 * t_a * h1)
        + (p2 * t_b * b1)
        - ((h2 * h2) + (p2 * b2)) * t_a
        - ((h2 * p2) - (p2 * c2)) * t_g
    )
    t_gc = (
        -(c2 * t_g * p1)
        + (c2 * t_b * c1)
        + (b2 * t_a * p1)
        - ((c2 * c2) + (b2 * p2)) * t_b
    )
    t_gb = (
        -(c2 * t_g * h1)
        - (c2 * t_b * b1)
        + (b2 * t_a * h1)
        + ((c2 * b2) - (b2 * h2)) * t_a
        - ((c2 * c2) + (b2 * p2)) * t_g
    )
    return t_gp, t_gh, t_gc, t_gb


def split_localization(cat: DgCategory):
    """Split a category built by localize() into its base and the inverse
    records; raises NotLocalized when the presentation is not base-plus-
    inverse-quadruples."""
    if not cat.localized_inverses:
        raise NotLocalized("category carries no localization records")
    quad_names = []
    for record in cat.localized_inverses:
        quad_names.extend(record.names)
    base_gens = [g for g in cat.generators if g.name not in set(quad_names)]
    expected = [g.name for g in base_gens] + quad_names
    if [g.name for g in cat.generators] != expected:
        raise NotLocalized("inverse generators are not a suffix of the presentation")
    base = make_presentation(list(cat.objects), base_gens, ring=cat.ring)
    return base, list(cat.localized_inverses)


def _loc_extension(ambient_pair, loc_cat, base, records, alpha_loc, beta_loc, factors):
    """Shared assembly for localized cylinders and hocolims: build the
    t-extension over the base, then adjoin the t-values of the inverses."""
    alpha_base = DgFunctor(
        base,
        alpha_loc.target,
        alpha_loc.object_map,
        {g.name: alpha_loc.generator_map[g.name] for g in base.generators},
        _validated=True,
    )
    beta_base = DgFunctor(
        base,
        beta_loc.target,
        beta_loc.object_map,
        {g.name: beta_loc.generator_map[g.name] for g in base.generators},
        _validated=True,
    )
    ext0 = build_t_extension(
        ambient_pair, base, alpha_base, beta_base, mode="category", factors=factors
    )
    alpha_total = DgFunctor(
        loc_cat, ext0.total, alpha_loc.object_map, alpha_loc.generator_map, _validated=True
    )
    beta_total = DgFunctor(
        loc_cat, ext0.total, beta_loc.object_map, beta_loc.generator_map, _validated=True
    )
    extra = {}
    for record in records:
        g = record.term
        i1_quad = tuple(apply(alpha_total, loc_cat.gen(name)) for name in record.names)
        i2_quad = tuple(apply(beta_total, loc_cat.gen(name)) for name in record.names)
        t_g = ext0.t_of(g)
        t_a = ext0.t_source(g.source)
        t_b = ext0.t_source(g.target)
        values = loc_inverse_t_terms(i1_quad, i2_quad, t_g, t_a, t_b)
        for name, value in zip(record.names, values):
            extra[name] = value
    return ext0.extended(loc_cat, alpha_total, beta_total, extra)


def cyl_object_loc(cat: DgCategory, terms: Sequence[Term]) -> CylinderData:
    """The simpler cylinder object for C[S⁻¹]: the total category carries
    the t-data of C only, with both copies of S inverted.  Presented as the
    semifree extension of C[S⁻¹]⊔C[S⁻¹] by the t-generators of C, so that
    i is a literal extension witness."""
    from .constructions import localize

    loc_cat, _ = localize(cat, terms)
    return cyl_object_of_localized(loc_cat)


def cyl_object_of_localized(loc_cat: DgCategory) -> CylinderData:
    """The simpler cylinder for a category already built by localize()."""
    cop_pair = coproduct([loc_cat, loc_cat])
    cop, inclusions = cop_pair
    base, records = split_localization(loc_cat)
    ext = _loc_extension(
        cop_pair, loc_cat, base, records, inclusions[0], inclusions[1], [loc_cat, loc_cat]
    )
    witness = SemifreeExtensionWitness(cop, ext.total)
    p = collapse_functor(ext, [identity_functor(loc_cat), identity_functor(loc_cat)], loc_cat)
    return CylinderData(
        cyl=ext.total,
        i1=ext.alpha,
        i2=ext.beta,
        i_C=witness.inclusion,
        p_C=p,
        mode="category",
        base=loc_cat,
        ext=ext,
        witness=witness,
    )


def t_loc_inverse_generators(cyl_loc: CylinderData, term: Term):
    """The four t-values (t_{g'}, t_{ĝ}, t_{ǧ}, t_{ḡ}) for a localized
    morphism g of the cylinder's base."""
    from .constructions import find_localized_record

    record = find_localized_record(cyl_loc.base, term)
    if record is None:
        raise NotLocalized(f"{term!r} is not recorded as localized")
    return tuple(cyl_loc.ext.t_gen[name] for name in record.names)


def cyl_functor_loc(
    functor: DgFunctor, cyl_src: CylinderData, cyl_dst: CylinderData
) -> DgFunctor:
    """Cyl(F) between the simpler cylinder objects of two localizations."""
    if functor.source != cyl_src.base or functor.target != cyl_dst.base:
        raise SourceTargetMismatch("cylinders do not match the functor endpoints")
    return t_extension_morphism(cyl_src.ext, cyl_dst.ext, [functor, functor], functor)
