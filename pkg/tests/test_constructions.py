import random
from fractions import Fraction

import pytest

from corpus import (
    closed_degree_zero_generators,
    presentation_corpus,
    random_automorphism,
    random_extension,
    random_functor_from,
    random_presentation,
)
from oracles import oracle_diff
from semifree.constructions import (
    change_basis,
    destabilize,
    localize,
    mediating_functor,
    pushout,
    semifree_extension,
)
from semifree.core import (
    Generator,
    ObjectId,
    Term,
    check_d_squared,
    compose,
    make_presentation,
)
from semifree.cylinder import cyl_object
from semifree.errors import (
    ConeNotCommuting,
    GeneratorStillUsed,
    NotAStabilizationPair,
    NotAUnit,
    NotClosed,
    NotDegreeZero,
    OrderViolation,
)
from semifree.functors import (
    apply,
    compose_functors,
    functor_equal,
    identity_functor,
    make_functor,
    witness_from_functor,
)
from semifree.homotopy import mapping_cylinder
from semifree.rings import QQ

L = ObjectId("L")
K = ObjectId("K")


def c_n(n, name="z"):
    return make_presentation([L], [Generator(name, L, L, 1 - n, Term.zero(QQ, L, L, 2 - n))])


class TestSemifreeExtension:
    def test_extend_point_to_c_n(self):
        point = make_presentation([K], [])
        ext, witness = semifree_extension(
            point, [], [Generator("z", K, K, -2, Term.zero(QQ, K, K, -1))]
        )
        assert [g.name for g in witness.new_generators] == ["z"]

    def test_empty_extension(self):
        cat = c_n(2)
        ext, witness = semifree_extension(cat, [], [])
        assert ext == cat and not witness.new_generators

    def test_stabilization_extension(self):
        cat = c_n(2)
        b = Generator("b", L, L, 0, Term.zero(QQ, L, L, 1))
        a = Generator("a", L, L, -1, Term(QQ, L, L, 0, {("b",): 1}))
        ext, witness = semifree_extension(cat, [], [b, a])
        assert check_d_squared(ext).ok


class TestPushout:
    def test_along_identity(self):
        point = make_presentation([K], [])
        ext, witness = semifree_extension(
            point, [], [Generator("z", K, K, 0, Term.zero(QQ, K, K, 1))]
        )
        result = pushout(witness, identity_functor(point))
        assert result.result == ext

    def test_square_commutes_on_corpus(self):
        rng = random.Random(41)
        for _ in range(30):
            cat = random_presentation(rng, max_gens=4)
            _, witness = random_extension(rng, cat)
            g = random_functor_from(rng, cat)
            result = pushout(witness, g)
            assert functor_equal(
                compose_functors(result.G_bar, witness.inclusion),
                compose_functors(result.F_bar.inclusion, g),
            )
            assert check_d_squared(result.result).ok

    def test_mapping_cylinder_via_pushout(self):
        # pushout of Cyl(A) ←i₁ A →F B matches the mapping cylinder
        # presentation when no renaming is involved
        a_obj = ObjectId("A0")
        A = make_presentation([a_obj], [Generator("a", a_obj, a_obj, 0, Term.zero(QQ, a_obj, a_obj, 1))])
        B = c_n(1)
        F = make_functor(A, B, {"A0": "L"}, {"a": B.gen("z")})
        cyl = cyl_object(A)
        route = pushout(witness_from_functor(cyl.i1), F)
        direct = mapping_cylinder(F)
        # the two constructions differ only by the deterministic renaming of
        # the A-copy: the pushout keeps Cyl(A)'s c2-names, the mapping
        # cylinder uses the B⊔A coproduct names
        rename_gen = {}
        rename_obj = {}
        direct_incl_a = direct.ext.factor_inclusions[1]
        for gen in A.generators:
            route_name = next(iter(cyl.i2.generator_map[gen.name].support))[0]
            direct_name = next(iter(direct_incl_a.generator_map[gen.name].support))[0]
            rename_gen[route_name] = direct_name
        for obj in A.objects:
            rename_obj[cyl.i2.obj(obj).full] = direct_incl_a.obj(obj).full
        assert len(route.result.generators) == len(direct.m.generators)
        for gen in route.result.generators:
            name = rename_gen.get(gen.name, gen.name)
            other = direct.m.generator(name)
            assert gen.degree == other.degree
            mapped = {
                tuple(rename_gen.get(n, n) for n in word): coeff
                for word, coeff in gen.differential.support.items()
            }
            assert mapped == other.differential.support
        route_objects = [rename_obj.get(o.full, o.full) for o in route.result.objects]
        assert sorted(route_objects) == sorted(o.full for o in direct.m.objects)

    def test_mediating_functor_identity_cocone(self):
        rng = random.Random(43)
        cat = random_presentation(rng, max_gens=4)
        _, witness = random_extension(rng, cat)
        g = identity_functor(cat)
        result = pushout(witness, g)
        u = mediating_functor(result, result.G_bar, result.F_bar.inclusion)
        assert functor_equal(u, identity_functor(result.result))

    def test_mediating_functor_on_corpus(self):
        rng = random.Random(47)
        checked = 0
        for _ in range(25):
            cat = random_presentation(rng, max_gens=3)
            _, witness = random_extension(rng, cat)
            g = random_functor_from(rng, cat)
            result = pushout(witness, g)
            # cocone through a further functor out of the pushout
            h = random_functor_from(rng, result.result)
            h_b = compose_functors(h, result.G_bar)
            h_c = compose_functors(h, result.F_bar.inclusion)
            u = mediating_functor(result, h_b, h_c)
            assert functor_equal(compose_functors(u, result.G_bar), h_b)
            assert functor_equal(compose_functors(u, result.F_bar.inclusion), h_c)
            checked += 1
        assert checked >= 10

    def test_mediating_rejects_noncommuting_cocone(self):
        cat = c_n(1)
        b = Generator("b", L, L, 0, Term.zero(QQ, L, L, 1))
        ext, witness = semifree_extension(cat, [], [b])
        result = pushout(witness, identity_functor(cat))
        flip = make_functor(ext, ext, {"L": "L"}, {"z": -ext.gen("z"), "b": ext.gen("b")})
        with pytest.raises(ConeNotCommuting):
            mediating_functor(result, flip, witness.inclusion)


class TestLocalize:
    def test_c1_localization_shape(self):
        cat = c_n(1)
        loc, witness = localize(cat, [cat.gen("z")])
        assert [g.name for g in loc.generators] == ["z", "inv.z", "ih.z", "ic.z", "ib.z"]
        assert [g.degree for g in loc.generators] == [0, 0, -1, -1, -2]
        assert len(loc.localized_inverses) == 1

    def test_identity_localization(self):
        cat = c_n(1)
        loc, _ = localize(cat, [cat.identity("L")])
        names = loc.localized_inverses[0].names
        gh = loc.generator(names[1])
        gc = loc.generator(names[2])
        # dĝ = 1 − g'∘1 = 1 − g' and dǧ likewise, both copies
        expected = loc.identity("L") - loc.gen(names[0])
        assert gh.differential == expected
        assert gc.differential == expected

    def test_d_squared_via_oracle(self):
        cat = c_n(1)
        loc, _ = localize(cat, [cat.gen("z")])
        for gen in loc.generators:
            assert oracle_diff(loc, gen.differential).is_zero()

    def test_rejects_nonclosed(self):
        f = Generator("f", L, L, 1, Term.zero(QQ, L, L, 2))
        h = Generator("h", L, L, 0, Term(QQ, L, L, 1, {("f",): 1}))
        cat = make_presentation([L], [f, h])
        with pytest.raises(NotClosed):
            localize(cat, [cat.gen("h")])

    def test_rejects_wrong_degree(self):
        cat = c_n(2)
        with pytest.raises(NotDegreeZero):
            localize(cat, [cat.gen("z")])

    def test_composite_term_localization(self):
        cat = c_n(1)
        zz = compose(cat.gen("z"), cat.gen("z"))
        loc, _ = localize(cat, [zz.scale(2)])
        assert check_d_squared(loc).ok
        record = loc.localized_inverses[0]
        assert record.term == zz.scale(2)

    def test_corpus_localizations_pass_d_squared(self):
        for cat in presentation_corpus(seed=51, count=25):
            terms = closed_degree_zero_generators(cat)
            if not terms:
                continue
            loc, _ = localize(cat, terms)
            assert check_d_squared(loc).ok


class TestChangeBasis:
    def test_identity_substitution(self):
        cat = c_n(2)
        new_cat, (forward, backward) = change_basis(cat, {})
        assert new_cat == cat
        assert functor_equal(forward, identity_functor(cat))

    def test_sign_flip(self):
        cat = c_n(2)
        new_cat, (forward, backward) = change_basis(
            cat, {"z": (-1, Term.zero(QQ, L, L, -1))}
        )
        assert new_cat.generator("z").differential.is_zero()
        assert forward.generator_map["z"] == -new_cat.gen("z")

    def test_round_trip_on_corpus(self):
        rng = random.Random(53)
        for _ in range(30):
            cat = random_presentation(rng, max_gens=5)
            forward, backward = random_automorphism(rng, cat)
            assert functor_equal(
                compose_functors(backward, forward), identity_functor(cat)
            )
            assert functor_equal(
                compose_functors(forward, backward), identity_functor(forward.target)
            )

    def test_rejects_non_unit(self):
        cat = c_n(2)
        with pytest.raises(NotAUnit):
            change_basis(cat, {"z": (0, Term.zero(QQ, L, L, -1))})

    def test_rejects_later_generator_shift(self):
        f = Generator("f", L, L, 0, Term.zero(QQ, L, L, 1))
        g = Generator("g", L, L, 0, Term.zero(QQ, L, L, 1))
        cat = make_presentation([L], [f, g])
        with pytest.raises(OrderViolation):
            change_basis(cat, {"f": (1, cat.gen("g"))})


class TestDestabilize:
    def fixture(self):
        b = Generator("b", L, L, 0, Term.zero(QQ, L, L, 1))
        a = Generator("a", L, L, -1, Term(QQ, L, L, 0, {("b",): 1}))
        z = Generator("z", L, L, -2, Term.zero(QQ, L, L, -1))
        return make_presentation([L], [b, a, z])

    def test_remove_pair(self):
        cat = self.fixture()
        smaller, incl = destabilize(cat, [("a", "b")])
        assert [g.name for g in smaller.generators] == ["z"]
        assert functor_equal(compose_functors(identity_functor(cat), incl), incl)

    def test_rejects_non_pair(self):
        cat = c_n(2)
        with pytest.raises(NotAStabilizationPair):
            destabilize(cat, [("z", "z")])

    def test_rejects_used_generator(self):
        b = Generator("b", L, L, 0, Term.zero(QQ, L, L, 1))
        a = Generator("a", L, L, -1, Term(QQ, L, L, 0, {("b",): 1}))
        h = Generator("h", L, L, -1, Term(QQ, L, L, 0, {("b",): 1}))
        cat = make_presentation([L], [b, a, h])
        with pytest.raises(GeneratorStillUsed):
            destabilize(cat, [("a", "b")])

    def test_stabilize_then_destabilize_round_trip(self):
        rng = random.Random(59)
        for _ in range(15):
            cat = random_presentation(rng, max_gens=4)
            src = rng.choice(cat.objects)
            tgt = rng.choice(cat.objects)
            deg = rng.randint(-2, 2)
            b = Generator("stab.b", src, tgt, deg, Term.zero(QQ, src, tgt, deg + 1))
            a = Generator("stab.a", src, tgt, deg - 1, Term(QQ, src, tgt, deg, {("stab.b",): 1}))
            bigger, _ = semifree_extension(cat, [], [b, a])
            smaller, _ = destabilize(bigger, [("stab.a", "stab.b")])
            assert smaller == cat
