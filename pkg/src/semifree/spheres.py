"""Endpoint presentations for the cotangent-bundle-of-a-sphere case study.

For n ≥ 2 the target category C_n has one object L and one closed
generator z of degree 1−n; for n = 1 the target is C_1[z⁻¹] with |z| = 0.
The gluing span has two point categories on the sides and, in the middle,
two points (n = 1), C_1[x⁻¹] (n = 2), or C_{n−1} (n ≥ 3).

derive_reflection pushes the reflection of the middle through the homotopy
colimit and conjugates with the explicit equivalences between the hocolim
presentation and the target, recursing on n.  The result fixes L and sends
z to its formal inverse (n = 1) or to −z (n ≥ 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .constructions import localize
from .core import DgCategory, Generator, ObjectId, Term, coproduct, make_presentation
from .errors import SemifreeError
from .functors import DgFunctor, compose_functors, identity_functor, make_functor
from .hocolim import (
    HocolimData,
    Span,
    SpanMorphism,
    hocolim,
    hocolim_loc,
    hocolim_morphism,
)
from .homotopy import promote_equivalence
from .rings import QQ, Ring


def point_category(name: str, ring: Ring = QQ) -> DgCategory:
    return make_presentation([ObjectId(name)], [], ring=ring)


def sphere_category(
    n: int,
    gen_name: str = "z",
    ring: Ring = QQ,
    grading_twist: Optional[int] = None,
    nonstandard_background: bool = False,
) -> DgCategory:
    """The one-object presentation with a single generator of degree 1−n.

    grading_twist (n = 1 only) replaces the degree 0 by an arbitrary one;
    nonstandard_background (n = 2 only) replaces dz = 0 by dz = 2·1_L.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    L = ObjectId("L")
    degree = 1 - n
    if grading_twist is not None:
        if n != 1:
            raise SemifreeError("grading twists only apply to n = 1")
        degree = grading_twist
    if nonstandard_background:
        if n != 2:
            raise SemifreeError("the background flag only applies to n = 2")
        differential = Term.identity(ring, L).scale(2)
    else:
        differential = Term.zero(ring, L, L, degree + 1)
    gen = Generator(gen_name, L, L, degree, differential)
    return make_presentation([L], [gen], ring=ring)


def sphere_target(n: int, gen_name: str = "z", ring: Ring = QQ) -> DgCategory:
    """C_1[z⁻¹] for n = 1, C_n for n ≥ 2."""
    cat = sphere_category(n, gen_name, ring)
    if n == 1:
        cat, _ = localize(cat, [cat.gen(gen_name)])
    return cat


@dataclass
class SphereFixture:
    n: int
    span: Span
    hocolim: HocolimData
    target: DgCategory  # C_1[z⁻¹] or C_n
    phi: DgFunctor  # hocolim presentation → target
    psi: DgFunctor  # target → hocolim presentation (quasi-inverse)
    reflection_morphism: SpanMorphism = field(repr=False)
    hocolim_reflection: DgFunctor = field(repr=False)


def _collapse_to_point(middle: DgCategory, side: DgCategory, unit_image: dict) -> DgFunctor:
    """Leg of the gluing span: every object to the point, generators per
    unit_image (name → coefficient of the identity; absent means zero)."""
    point = side.objects[0]
    ring = side.ring
    object_map = {obj.full: point for obj in middle.objects}
    generator_map = {}
    for gen in middle.generators:
        coeff = unit_image.get(gen.name)
        if coeff is None:
            generator_map[gen.name] = Term.zero(ring, point, point, gen.degree)
        else:
            generator_map[gen.name] = Term.identity(ring, point).scale(coeff)
    return DgFunctor(middle, side, object_map, generator_map)


def _middle_category(n: int, ring: Ring):
    if n == 1:
        pieces = [point_category("K3", ring), point_category("K4", ring)]
        middle, _ = coproduct(pieces)
        return middle
    if n == 2:
        base = sphere_category(1, "x", ring)
        middle, _ = localize(base, [base.gen("x")])
        return middle
    return sphere_category(n - 1, "x", ring)


def _middle_reflection(n: int, middle: DgCategory, ring: Ring) -> DgFunctor:
    """The reflection on the middle category of the gluing span."""
    if n == 1:
        return make_functor(
            middle,
            middle,
            {"K3": "K4", "K4": "K3"},
            {},
        )
    if n == 2:
        return derive_reflection(1, build_fixture(1, ring=ring, gen_name="x"))
    fixture = None  # C_{n-1} reflection is z ↦ −z, known in closed form
    return DgFunctor(
        middle,
        middle,
        {obj.full: obj for obj in middle.objects},
        {"x": -middle.gen("x")},
    )


def build_fixture(n: int, ring: Ring = QQ, gen_name: str = "z") -> SphereFixture:
    """The gluing span for the n-sphere, its homotopy colimit, the explicit
    equivalences with the simplified target, and the reflection data."""
    if n < 1:
        raise ValueError("n must be at least 1")
    side1 = point_category("K1", ring)
    side2 = point_category("K2", ring)
    middle = _middle_category(n, ring)

    if n == 1:
        alpha = _collapse_to_point(middle, side1, {})
        beta = _collapse_to_point(middle, side2, {})
    elif n == 2:
        units = {"x": 1, "inv.x": 1}
        alpha = _collapse_to_point(middle, side1, units)
        beta = _collapse_to_point(middle, side2, units)
    else:
        alpha = _collapse_to_point(middle, side1, {})
        beta = _collapse_to_point(middle, side2, {})

    span = Span(alpha, beta)
    data = hocolim_loc(span) if middle.localized_inverses else hocolim(span)
    target = sphere_target(n, gen_name, ring)
    phi, psi = _target_equivalences(n, data, target, gen_name)

    reflection = _middle_reflection(n, middle, ring)
    refl_morphism = SpanMorphism(
        span, span, identity_functor(side1), reflection, identity_functor(side2)
    )
    hocolim_reflection = hocolim_morphism(refl_morphism, data, data)
    return SphereFixture(
        n=n,
        span=span,
        hocolim=data,
        target=target,
        phi=phi,
        psi=psi,
        reflection_morphism=refl_morphism,
        hocolim_reflection=hocolim_reflection,
    )


def _target_equivalences(n: int, data: HocolimData, target: DgCategory, gen_name: str):
    """phi: hocolim → target and psi: target → hocolim from the case
    analysis: for n = 1 both hom generators become z and 1, for n ≥ 2 the
    degree 1−n generator t_x becomes z and t_L becomes the identity."""
    H = data.category
    ring = H.ring
    L = target.object("L")
    one_l = Term.identity(ring, L)
    obj_to_l = {obj.full: L for obj in H.objects}
    if n == 1:
        z = target.gen(gen_name)
        names = dict(zip(("inv", "ih", "ic", "ib"), target.localized_inverses[0].names))
        phi_map = {
            "t.K3": z,
            "t'.K3": target.gen(names["inv"]),
            "th.K3": target.gen(names["ih"]),
            "tc.K3": target.gen(names["ic"]),
            "tb.K3": target.gen(names["ib"]),
            "t.K4": one_l,
            "t'.K4": one_l,
            "th.K4": Term.zero(ring, L, L, -1),
            "tc.K4": Term.zero(ring, L, L, -1),
            "tb.K4": Term.zero(ring, L, L, -2),
        }
        phi = DgFunctor(H, target, obj_to_l, phi_map)
        # z ↦ t'_{K4}∘t_{K3}; the inverse family comes from promoting the
        # evident homotopy-equivalence datum between the two hom generators
        a = H.gen("t.K3")
        b = H.gen("t.K4")
        ap = H.gen("t'.K3")
        bp = H.gen("t'.K4")
        s = bp * a
        sp = ap * b
        sh = H.gen("th.K3") + (ap * H.gen("tc.K4") * a)
        sc = H.gen("th.K4") + (bp * H.gen("tc.K3") * b)
        r, rp, rh, rc, rb = promote_equivalence(H, s, sp, sh, sc)
        psi = DgFunctor(
            target,
            H,
            {"L": H.object("K1")},
            {
                gen_name: r,
                names["inv"]: rp,
                names["ih"]: rh,
                names["ic"]: rc,
                names["ib"]: rb,
            },
        )
        return phi, psi
    z = target.gen(gen_name)
    phi_map = {
        "t.L": one_l,
        "t'.L": one_l,
        "th.L": Term.zero(ring, L, L, -1),
        "tc.L": Term.zero(ring, L, L, -1),
        "tb.L": Term.zero(ring, L, L, -2),
        "t.x": z,
    }
    phi = DgFunctor(H, target, obj_to_l, phi_map)
    psi = DgFunctor(
        target,
        H,
        {"L": H.object("K1")},
        {gen_name: H.gen("t'.L") * H.gen("t.x")},
    )
    return phi, psi


def derive_reflection(n: int, fixture: Optional[SphereFixture] = None) -> DgFunctor:
    """The reflection as an endofunctor of the simplified presentation:
    conjugate the hocolim-level reflection by the explicit equivalences."""
    if fixture is None:
        fixture = build_fixture(n)
    return compose_functors(fixture.phi, compose_functors(fixture.hocolim_reflection, fixture.psi))
