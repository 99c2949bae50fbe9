"""Constructive cofibration-category toolkit.

Mapping cylinders give the functorial factorization F = q∘j into a
cofibration followed by a quasi-equivalence.  hep_extend solves the
homotopy extension property along a semifree extension by the explicit
recursion over the new generators.  relative_cylinder realizes
B ∪_A Cyl(A) ∪_A B ↪ Cyl(B).  interchange swaps the two cylinder
directions of Cyl(Cyl(A)).  promote_equivalence upgrades a homotopy
equivalence datum (s, s', ŝ, š) to one with the full localization pattern
including the degree −2 witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernel
from .core import DgCategory, Generator, ObjectId, Term, coproduct, diff, make_presentation
from .cylinder import (
    CylinderData,
    TExtension,
    build_t_extension,
    cyl_functor,
    cyl_object,
    retarget,
    t_extension_morphism,
)
from .errors import (
    NotAHomotopyEquivalenceDatum,
    PrerequisiteSquareFails,
    SourceTargetMismatch,
    SquareNotCommuting,
)
from .functors import (
    DgFunctor,
    SemifreeExtensionWitness,
    apply,
    compose_functors,
    functor_equal,
    identity_functor,
)


@dataclass
class MappingCylinder:
    m: DgCategory
    j: DgFunctor  # A → M_F, a cofibration
    q: DgFunctor  # M_F → B, a quasi-equivalence
    j_witness: SemifreeExtensionWitness = field(repr=False)
    functor: DgFunctor = field(repr=False)  # the factored F
    ext: TExtension = field(repr=False)


def mapping_cylinder(functor: DgFunctor) -> MappingCylinder:
    """M_F: the extension of B⊔A by t_X: F(X)→X per object and
    t_a: F(U)→V per generator a: U→V of A, i.e. the t-data of A with legs
    (F, 1_A).  q collapses t, t' to identities and everything else to 0;
    j is the inclusion of A."""
    from .cylinder import collapse_functor

    A = functor.source
    B = functor.target
    cop_pair = coproduct([B, A])
    cop, inclusions = cop_pair
    alpha = compose_functors(inclusions[0], functor)
    beta = inclusions[1]
    ext = build_t_extension(cop_pair, A, alpha, beta, factors=[B, A])
    j = retarget(beta, ext.total)
    j_witness = SemifreeExtensionWitness(
        A,
        ext.total,
        obj_map=dict(beta.object_map),
        gen_map={
            name: next(iter(image.support))[0]
            for name, image in beta.generator_map.items()
        },
    )
    q = collapse_functor(ext, [identity_functor(B), functor], B)
    return MappingCylinder(m=ext.total, j=j, q=q, j_witness=j_witness, functor=functor, ext=ext)


def mapping_cylinder_morphism(
    m_src: MappingCylinder, m_dst: MappingCylinder, alpha: DgFunctor, beta: DgFunctor
) -> DgFunctor:
    """M(α, β) for a commuting square β∘F = F'∘α: acts as β⊔α on B⊔A and
    sends t*_X ↦ t*_{α(X)}, t_a ↦ t_{α(a)}."""
    if not functor_equal(
        compose_functors(beta, m_src.functor), compose_functors(m_dst.functor, alpha)
    ):
        raise SquareNotCommuting("β∘F ≠ F'∘α")
    return t_extension_morphism(m_src.ext, m_dst.ext, [beta, alpha], alpha)


# -- homotopy extension property -------------------------------------------


def _partial_apply(term: Term, obj_map: dict, images: dict, target: DgCategory) -> Term:
    ring = target.ring
    support = kernel.apply_words(term.support, images, ring)
    return Term(ring, obj_map[term.source.full], obj_map[term.target.full], term.degree, support)


def hep_extend(
    F: SemifreeExtensionWitness,
    r: int,
    G: DgFunctor,
    H: DgFunctor,
    cyl_base: CylinderData = None,
    cyl_ext: CylinderData = None,
) -> DgFunctor:
    """Extend a homotopy along a cofibration: given G: B→Z and
    H: Cyl(A)→Z with G∘F = H∘i_r, produce E: Cyl(B)→Z with E∘i_r = G and
    E∘Cyl(F) = H.

    E is defined by recursion over the new generators b: U→V (degree n):
    the i_r copy goes to G(b) and the other copy and t_b are evaluated
    through the already-defined part, via

      r=1:  b² ≡ t_V∘b¹∘t'_U − (−1)ⁿ t_{db}∘t'_U − (−1)ⁿ (db)²∘ť_U
            t_b ≡ −t_V∘b¹∘t̂_U + (−1)ⁿ t_{db}∘t̂_U − (−1)ⁿ (db)²∘t̄_U
      r=2:  b¹ ≡ t'_V∘b²∘t_U + (−1)ⁿ t'_V∘t_{db} + t̂_V∘(db)¹
            t_b ≡ (−1)ⁿ ť_V∘b²∘t_U + ť_V∘t_{db} − (−1)ⁿ t̄_V∘(db)¹

    (the r=2 expressions are the mirrored primitives; both sides satisfy
    du = (db)^other and dv = dt_b after substituting u for the missing
    copy, which makes E a chain map).
    """
    if r not in (1, 2):
        raise ValueError("side must be 1 or 2")
    A, B = F.base, F.extension
    if G.source != B:
        raise SourceTargetMismatch("G must start at the extension")
    cyl_a = cyl_base if cyl_base is not None else cyl_object(A)
    cyl_b = cyl_ext if cyl_ext is not None else cyl_object(B)
    if H.source != cyl_a.cyl:
        raise SourceTargetMismatch("H must start at Cyl(base)")
    i_r_a = cyl_a.i1 if r == 1 else cyl_a.i2
    if not functor_equal(compose_functors(G, F.inclusion), compose_functors(H, i_r_a)):
        raise PrerequisiteSquareFails("G∘F ≠ H∘i_r")

    Z = G.target
    ring = Z.ring
    cyl_f = cyl_functor(F.inclusion, cyl_a, cyl_b)

    object_map: dict = {}
    images: dict = {}

    # the Cyl(A)-part is H, transported through the embedding Cyl(F)
    for full, image in cyl_f.object_map.items():
        object_map[image.full] = H.object_map[full]
    for name, image in cyl_f.generator_map.items():
        (word,) = image.support
        images[word[0]] = H.generator_map[name].support

    # new objects: both copies collapse to G's image, t and t' to identities
    embedded_objs = {F.obj_map[obj.full].full for obj in A.objects}
    new_objs = [obj for obj in B.objects if obj.full not in embedded_objs]
    for obj in new_objs:
        g_obj = G.obj(obj)
        names = cyl_b.ext.t_obj_names[obj.full]
        for incl in cyl_b.ext.factor_inclusions:
            object_map[incl.obj(obj).full] = g_obj
        images[names[0]] = {(): ring.one()}
        images[names[1]] = {(): ring.one()}
        images[names[2]] = {}
        images[names[3]] = {}
        images[names[4]] = {}

    incl1, incl2 = cyl_b.ext.factor_inclusions

    def copy_name(gen_name: str, side: int) -> str:
        incl = incl1 if side == 1 else incl2
        return next(iter(incl.generator_map[gen_name].support))[0]

    for gen in F.new_generators:
        n = gen.degree
        sign = -1 if n % 2 else 1
        name1, name2 = copy_name(gen.name, 1), copy_name(gen.name, 2)
        t_name = cyl_b.ext.t_gen_names[gen.name]
        b_term = B.gen(gen.name)
        db1 = apply(cyl_b.i1, gen.differential)
        db2 = apply(cyl_b.i2, gen.differential)
        t_db = cyl_b.ext.t_of(gen.differential)
        t_u = cyl_b.ext.t_source(gen.source)
        t_v = cyl_b.ext.t_source(gen.target)
        tp_u = cyl_b.ext.t_obj_term(gen.source, 1)
        tp_v = cyl_b.ext.t_obj_term(gen.target, 1)
        th_u = cyl_b.ext.t_obj_term(gen.source, 2)
        th_v = cyl_b.ext.t_obj_term(gen.target, 2)
        tc_u = cyl_b.ext.t_obj_term(gen.source, 3)
        tc_v = cyl_b.ext.t_obj_term(gen.target, 3)
        tb_u = cyl_b.ext.t_obj_term(gen.source, 4)
        tb_v = cyl_b.ext.t_obj_term(gen.target, 4)
        if r == 1:
            b1 = apply(cyl_b.i1, b_term)
            images[name1] = apply(G, b_term).support
            other = (t_v * b1 * tp_u) - (t_db * tp_u).scale(sign) - (db2 * tc_u).scale(sign)
            t_expr = -(t_v * b1 * th_u) + (t_db * th_u).scale(sign) - (db2 * tb_u).scale(sign)
            images[name2] = _partial_apply(other, object_map, images, Z).support
        else:
            b2 = apply(cyl_b.i2, b_term)
            images[name2] = apply(G, b_term).support
            other = (tp_v * b2 * t_u) + (tp_v * t_db).scale(sign) + (th_v * db1)
            t_expr = (tc_v * b2 * t_u).scale(sign) + (tc_v * t_db) - (tb_v * db1).scale(sign)
            images[name1] = _partial_apply(other, object_map, images, Z).support
        images[t_name] = _partial_apply(t_expr, object_map, images, Z).support

    generator_map = {}
    for gen in cyl_b.cyl.generators:
        src = object_map[gen.source.full]
        tgt = object_map[gen.target.full]
        generator_map[gen.name] = Term(ring, src, tgt, gen.degree, dict(images[gen.name]))
    return DgFunctor(cyl_b.cyl, Z, object_map, generator_map)


# -- relative cylinder -------------------------------------------------------


def relative_cylinder(F: SemifreeExtensionWitness):
    """P = B ∪_A Cyl(A) ∪_A B together with the cofibration G: P ↪ Cyl(B).

    P extends Cyl(A) by both copies of the new objects and generators; G
    adjoins exactly the t-data of the new part.
    """
    A, B = F.base, F.extension
    cyl_a = cyl_object(A)
    cyl_b = cyl_object(B)
    cyl_f = cyl_functor(F.inclusion, cyl_a, cyl_b)

    # embed Cyl(A) into Cyl(B) names
    obj_map = {full: image for full, image in cyl_f.object_map.items()}
    gen_map = {
        name: next(iter(image.support))[0] for name, image in cyl_f.generator_map.items()
    }

    incl1, incl2 = cyl_b.ext.factor_inclusions
    embedded_objs = {F.obj_map[obj.full].full for obj in A.objects}
    new_objs = [obj for obj in B.objects if obj.full not in embedded_objs]

    objects = [obj_map[obj.full] for obj in cyl_a.cyl.objects]
    for obj in new_objs:
        objects.append(incl1.obj(obj))
        objects.append(incl2.obj(obj))

    generators = []
    for gen in cyl_a.cyl.generators:
        target_gen = cyl_b.cyl.generator(gen_map[gen.name])
        generators.append(target_gen)
    for gen in F.new_generators:
        for incl in (incl1, incl2):
            name = next(iter(incl.generator_map[gen.name].support))[0]
            generators.append(cyl_b.cyl.generator(name))

    P = make_presentation(objects, generators, ring=B.ring)
    G = SemifreeExtensionWitness(P, cyl_b.cyl)
    return P, G


# -- interchange -------------------------------------------------------------


def interchange(cat: DgCategory) -> DgFunctor:
    """T: Cyl(Cyl(A)) → Cyl(Cyl(A)) with T∘i_r = Cyl(i_r) and
    T∘Cyl(i_r) = i_r: swaps the inner and outer cylinder directions."""
    cyl1 = cyl_object(cat)
    cyl2 = cyl_object(cyl1.cyl)
    total = cyl2.cyl
    ring = total.ring

    object_map = {}
    for obj in cat.objects:
        for r in (1, 2):
            for s in (1, 2):
                src = ObjectId(ObjectId(obj.full, r).full, s)
                dst = ObjectId(ObjectId(obj.full, s).full, r)
                object_map[src.full] = total.object(dst.full)

    generator_map = {}

    def gen_term(name: str) -> Term:
        return total.gen(name)

    star = ("t.", "t'.", "th.", "tc.", "tb.")
    for obj in cat.objects:
        full = obj.full
        t1 = gen_term(f"c1.t.{full}")
        t2 = gen_term(f"c2.t.{full}")
        tt = gen_term(f"t.t.{full}")
        for r in (1, 2):
            for prefix in star:
                # (t*_A)^r ↔ t*_{A^r}
                generator_map[f"c{r}.{prefix}{full}"] = gen_term(f"{prefix}c{r}.{full}")
                generator_map[f"{prefix}c{r}.{full}"] = gen_term(f"c{r}.{prefix}{full}")
        gp1 = gen_term(f"t'.c1.{full}")
        gp2 = gen_term(f"t'.c2.{full}")
        th1 = gen_term(f"th.c1.{full}")
        th2 = gen_term(f"th.c2.{full}")
        tc1 = gen_term(f"tc.c1.{full}")
        tc2 = gen_term(f"tc.c2.{full}")
        tb1 = gen_term(f"tb.c1.{full}")
        tb2 = gen_term(f"tb.c2.{full}")
        generator_map[f"t.t.{full}"] = -tt
        generator_map[f"t.t'.{full}"] = (gp2 * tt * gp1) - (th2 * t1 * gp1) + (gp2 * t2 * tc1)
        generator_map[f"t.th.{full}"] = -(gp2 * tt * th1) + (th2 * t1 * th1) + (gp2 * t2 * tb1)
        generator_map[f"t.tc.{full}"] = (tc2 * tt * gp1) + (tc2 * t2 * tc1) + (tb2 * t1 * gp1)
        generator_map[f"t.tb.{full}"] = (tc2 * tt * th1) + (tb2 * t1 * th1) - (tc2 * t2 * tb1)

    for gen in cat.generators:
        name = gen.name
        for r in (1, 2):
            for s in (1, 2):
                generator_map[f"c{s}.c{r}.{name}"] = gen_term(f"c{r}.c{s}.{name}")
            generator_map[f"c{r}.t.{name}"] = gen_term(f"t.c{r}.{name}")
            generator_map[f"t.c{r}.{name}"] = gen_term(f"c{r}.t.{name}")
        generator_map[f"t.t.{name}"] = -gen_term(f"t.t.{name}")

    return DgFunctor(total, total, object_map, generator_map)


# -- homotopies and promotion ------------------------------------------------


def homotopic_via(H: DgFunctor, F1: DgFunctor, F2: DgFunctor, cylinder: CylinderData = None) -> bool:
    """Check a homotopy witness: H∘i₁ = F1 and H∘i₂ = F2."""
    cyl = cylinder if cylinder is not None else cyl_object(F1.source)
    if H.source != cyl.cyl:
        raise SourceTargetMismatch("H must start at the cylinder")
    return functor_equal(compose_functors(H, cyl.i1), F1) and functor_equal(
        compose_functors(H, cyl.i2), F2
    )


def promote_equivalence(cat: DgCategory, s: Term, sp: Term, sh: Term, sc: Term):
    """From (s, s', ŝ, š) with ds = ds' = 0, dŝ = 1 − s'∘s, dš = 1 − s∘s',
    produce (r, r', r̂, ř, r̄) additionally satisfying dr̄ = r∘r̂ − ř∘r:

        r = s, r' = s'∘s∘s', r̂ = ŝ + s'∘š∘s, ř = š + s∘ŝ∘s',
        r̄ = š∘s∘ŝ − s∘ŝ∘ŝ − š∘š∘s.
    """
    ring = cat.ring
    one_a = Term.identity(ring, s.source)
    one_c = Term.identity(ring, s.target)
    if not diff(cat, s).is_zero() or not diff(cat, sp).is_zero():
        raise NotAHomotopyEquivalenceDatum("s and s' must be closed")
    if diff(cat, sh) != one_a - (sp * s):
        raise NotAHomotopyEquivalenceDatum("dŝ ≠ 1 − s'∘s")
    if diff(cat, sc) != one_c - (s * sp):
        raise NotAHomotopyEquivalenceDatum("dš ≠ 1 − s∘s'")
    r = s
    rp = sp * s * sp
    rh = sh + (sp * sc * s)
    rc = sc + (s * sh * sp)
    rb = (sc * s * sh) - (s * sh * sh) - (sc * sc * s)
    if diff(cat, rb) != (r * rh) - (rc * r):
        raise NotAHomotopyEquivalenceDatum("internal promotion identity failed")
    return r, rp, rh, rc, rb
