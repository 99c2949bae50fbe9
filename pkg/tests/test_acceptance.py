"""Acceptance suite: every criterion at exact (symbolic) tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one pass/fail line
per criterion.  The shared corpus is regenerated deterministically; all
comparisons are exact equalities of canonical terms, functors, or
presentations.
"""

import random
import sys
import time

import pytest

from corpus import (
    closed_degree_zero_generators,
    presentation_corpus,
    random_automorphism,
    random_composable_functors,
    random_extension,
    random_functor_from,
    random_presentation,
    random_span,
    random_span_morphism,
    random_term,
)
from test_cylinder import expand_t_via_factors
from semifree.constructions import localize, semifree_extension
from semifree.core import (
    Generator,
    ObjectId,
    Term,
    check_d_squared,
    compose,
    diff,
    make_presentation,
)
from semifree.cylinder import (
    cyl_functor,
    cyl_object,
    cyl_object_loc,
    t_of,
)
from semifree.dsl import parse, serialize_category, serialize_workspace
from semifree.functors import (
    SemifreeExtensionWitness,
    apply,
    codiagonal,
    compose_functors,
    functor_equal,
    identity_functor,
)
from semifree.hocolim import (
    Span,
    SpanMorphism,
    compose_span_morphisms,
    hocolim,
    hocolim_loc,
    hocolim_morphism,
    hocolim_via_pipeline,
)
from semifree.homotopy import (
    hep_extend,
    interchange,
    mapping_cylinder,
    mapping_cylinder_morphism,
)
from semifree.rings import QQ
from semifree.spheres import build_fixture, derive_reflection

CORPUS_SEED = 20260


def report(number: int, ok: bool, label: str):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {number:02d}] {status} — {label}", file=sys.stderr)
    assert ok, f"criterion {number} failed: {label}"


@pytest.fixture(scope="module")
def corpus():
    return presentation_corpus(seed=CORPUS_SEED, count=200)


@pytest.fixture(scope="module")
def cylinders(corpus):
    return [cyl_object(cat) for cat in corpus]


def test_criterion_01_d_squared_everywhere(corpus, cylinders):
    started = time.time()
    rng = random.Random(CORPUS_SEED + 1)
    ok = True
    for cat, cyl in zip(corpus, cylinders):
        ok &= check_d_squared(cat).ok
        terms = closed_degree_zero_generators(cat)
        if terms:
            loc, _ = localize(cat, terms)
            ok &= check_d_squared(loc).ok
            loc_cyl = cyl_object_loc(cat, terms)
            ok &= check_d_squared(loc_cyl.cyl).ok
        ok &= check_d_squared(cyl.cyl).ok
        if len(cat.objects) == 1:
            ok &= check_d_squared(cyl_object(cat, mode="algebra").cyl).ok
        for _ in range(2):
            span = random_span(rng, cat)
            ok &= check_d_squared(hocolim(span).category).ok
        functor = random_functor_from(rng, cat)
        ok &= check_d_squared(mapping_cylinder(functor).m).ok
        ok &= check_d_squared(cyl_object(cyl.cyl).cyl).ok
        if not ok:
            break
    elapsed = time.time() - started
    ok &= elapsed < 60
    report(
        1,
        ok,
        f"d²=0 on 200 presentations, localizations, cylinders (both modes), "
        f"localized cylinders, hocolims, mapping cylinders, Cyl(Cyl(·)) "
        f"[{elapsed:.1f}s < 60s]",
    )


def test_criterion_02_cylinder_axioms(corpus, cylinders):
    ok = True
    for cat, cyl in zip(corpus, cylinders):
        nabla = codiagonal(cat, (cyl.i_C.source, cyl.ext.factor_inclusions))
        ok &= functor_equal(compose_functors(cyl.p_C, cyl.i_C), nabla)
        witness = SemifreeExtensionWitness(cyl.i_C.source, cyl.cyl)
        ok &= len(witness.new_generators) == 5 * len(cat.objects) + len(cat.generators)
        if not ok:
            break
    report(2, ok, "p∘i = ∇ exactly and i is a semifree extension witness, full corpus")


def test_criterion_03_t_theta_identities(corpus, cylinders):
    rng = random.Random(CORPUS_SEED + 3)
    identity_checks = 0
    ok = True
    while identity_checks < 1000:
        index = rng.randrange(len(corpus))
        cat, cyl = corpus[index], cylinders[index]
        theta = random_term(rng, cat, terms=3)
        if theta is None:
            continue
        t_theta = t_of(cyl, theta)
        ok &= diff(cyl.cyl, t_theta) == cyl.ext.t_identity_rhs(theta)
        identity_checks += 1
        if not ok:
            break
    regroupings = 0
    while ok and regroupings < 200:
        index = rng.randrange(len(corpus))
        cat, cyl = corpus[index], cylinders[index]
        factors = []
        cursor = None
        for _ in range(rng.randint(2, 3)):
            term = random_term(rng, cat, source=cursor, terms=2, max_len=3)
            if term is None:
                break
            factors.append(term)
            cursor = term.target
        if len(factors) < 2:
            continue
        theta = factors[0]
        for factor in factors[1:]:
            theta = compose(factor, theta)
        ok &= expand_t_via_factors(cyl.ext, [(QQ.one(), factors)]) == t_of(cyl, theta)
        regroupings += 1
    report(
        3,
        ok,
        f"dt_θ identity on {identity_checks} random terms; "
        f"{regroupings} decomposition-independence checks",
    )


def test_criterion_04_functoriality(corpus):
    rng = random.Random(CORPUS_SEED + 4)
    ok = True
    pairs = 0
    while pairs < 100:
        cat = corpus[rng.randrange(len(corpus))]
        g, f = random_composable_functors(rng, cat)
        cyl_a = cyl_object(cat)
        cyl_b = cyl_object(f.target)
        cyl_c = cyl_object(g.target)
        ok &= functor_equal(
            cyl_functor(identity_functor(cat), cyl_a, cyl_a), identity_functor(cyl_a.cyl)
        )
        ok &= functor_equal(
            cyl_functor(compose_functors(g, f), cyl_a, cyl_c),
            compose_functors(
                cyl_functor(g, cyl_b, cyl_c), cyl_functor(f, cyl_a, cyl_b)
            ),
        )
        pairs += 1
        if not ok:
            break
    span_pairs = 0
    while ok and span_pairs < 30:
        cat = corpus[rng.randrange(len(corpus))]
        span = random_span(rng, cat)
        mor1 = random_span_morphism(rng, span)
        mor2 = random_span_morphism(rng, mor1.target)
        data_a, data_b, data_c = hocolim(span), hocolim(mor1.target), hocolim(mor2.target)
        ok &= functor_equal(
            hocolim_morphism(compose_span_morphisms(mor2, mor1), data_a, data_c),
            compose_functors(
                hocolim_morphism(mor2, data_b, data_c),
                hocolim_morphism(mor1, data_a, data_b),
            ),
        )
        span_pairs += 1
    report(
        4,
        ok,
        f"Cyl(1)=1 and Cyl(G∘F)=Cyl(G)∘Cyl(F) on {pairs} pairs; "
        f"hocolim functoriality on {span_pairs} composable span morphisms",
    )


def test_criterion_05_localized_inverse_t_formulas(corpus):
    ok = True
    quadruples = 0
    for cat in corpus:
        terms = closed_degree_zero_generators(cat)
        if not terms:
            continue
        loc_cyl = cyl_object_loc(cat, terms)
        for record in loc_cyl.base.localized_inverses:
            for name in record.names:
                theta = loc_cyl.base.gen(name)
                value = loc_cyl.ext.t_gen[name]
                ok &= diff(loc_cyl.cyl, value) == loc_cyl.ext.t_identity_rhs(theta)
                quadruples += 1
        if not ok:
            break
    report(
        5,
        ok,
        f"dt_θ identity for t_g', t_ĝ, t_ǧ, t_ḡ on {quadruples} localized inverses",
    )


def test_criterion_06_interchange():
    rng = random.Random(CORPUS_SEED + 6)
    ok = True
    count = 0
    # one category with a non-closed generator, exercising dT(t_{t_a}) = T(dt_{t_a})
    A = ObjectId("A")
    cats = [
        make_presentation(
            [A],
            [
                Generator("b", A, A, 0, Term.zero(QQ, A, A, 1)),
                Generator("a", A, A, -1, Term(QQ, A, A, 0, {("b",): 1})),
            ],
        )
    ]
    while len(cats) < 50:
        cats.append(random_presentation(rng, max_objects=2, max_gens=3))
    for cat in cats:
        functor = interchange(cat)  # construction validates the chain map
        cyl1 = cyl_object(cat)
        cyl2 = cyl_object(cyl1.cyl)
        for base_i, outer_i in ((cyl1.i1, cyl2.i1), (cyl1.i2, cyl2.i2)):
            lifted = cyl_functor(base_i, cyl1, cyl2)
            ok &= functor_equal(compose_functors(functor, outer_i), lifted)
            ok &= functor_equal(compose_functors(functor, lifted), outer_i)
        count += 1
        if not ok:
            break
    report(6, ok, f"interchange chain map with T∘i_r = Cyl(i_r), T∘Cyl(i_r) = i_r on {count} categories")


def test_criterion_07_factorization(corpus):
    rng = random.Random(CORPUS_SEED + 7)
    ok = True
    squares = 0
    for cat in corpus[:60]:
        functor = random_functor_from(rng, cat)
        m = mapping_cylinder(functor)
        ok &= functor_equal(compose_functors(m.q, m.j), functor)
        ok &= functor_equal(
            mapping_cylinder_morphism(
                m, m, identity_functor(cat), identity_functor(functor.target)
            ),
            identity_functor(m.m),
        )
        # composable squares built from basis-change automorphisms
        alpha, alpha_back = random_automorphism(rng, cat)
        beta, beta_back = random_automorphism(rng, functor.target)
        f_prime = compose_functors(beta, compose_functors(functor, alpha_back))
        m_prime = mapping_cylinder(f_prime)
        first = mapping_cylinder_morphism(m, m_prime, alpha, beta)
        second = mapping_cylinder_morphism(m_prime, m, alpha_back, beta_back)
        ok &= functor_equal(
            compose_functors(second, first),
            mapping_cylinder_morphism(
                m,
                m,
                compose_functors(alpha_back, alpha),
                compose_functors(beta_back, beta),
            ),
        )
        squares += 1
        if not ok:
            break
    report(7, ok, f"q∘j = F, M(1,1) = 1, and the composition law on {squares} squares")


def test_criterion_08_hep():
    rng = random.Random(CORPUS_SEED + 8)
    ok = True
    triples = 0
    while triples < 50:
        cat = random_presentation(rng, max_objects=2, max_gens=3)
        _, witness = random_extension(rng, cat)
        ext = witness.extension
        side = rng.choice((1, 2))
        cyl_a = cyl_object(cat)
        cyl_b = cyl_object(ext)
        post = random_functor_from(rng, ext)
        g = post
        h = compose_functors(post, compose_functors(witness.inclusion, cyl_a.p_C))
        e = hep_extend(witness, side, g, h, cyl_base=cyl_a, cyl_ext=cyl_b)
        i_r = cyl_b.i1 if side == 1 else cyl_b.i2
        ok &= functor_equal(compose_functors(e, i_r), g)
        ok &= functor_equal(
            compose_functors(e, cyl_functor(witness.inclusion, cyl_a, cyl_b)), h
        )
        triples += 1
        if not ok:
            break
    report(8, ok, f"hep_extend: E∘i_r = G and E∘Cyl(F) = H on {triples} random triples")


def test_criterion_09_sphere_n1():
    fixture = build_fixture(1)
    cat = fixture.hocolim.category
    ok = len(cat.objects) == 2 and len(cat.generators) == 10
    ok &= [g.degree for g in cat.generators] == [0, 0, -1, -1, -2, 0, 0, -1, -1, -2]
    # the differentials follow the localization pattern for both families
    for stub, src, tgt in (("K3", "K1", "K2"), ("K4", "K1", "K2")):
        t = cat.gen(f"t.{stub}")
        tp = cat.gen(f"t'.{stub}")
        ok &= cat.generator(f"t.{stub}").differential.is_zero()
        ok &= cat.generator(f"t'.{stub}").differential.is_zero()
        ok &= cat.generator(f"th.{stub}").differential == cat.identity(src) - compose(tp, t)
        ok &= cat.generator(f"tc.{stub}").differential == cat.identity(tgt) - compose(t, tp)
        ok &= cat.generator(f"tb.{stub}").differential == compose(t, cat.gen(f"th.{stub}")) - compose(
            cat.gen(f"tc.{stub}"), t
        )
    reflection = derive_reflection(1, fixture)
    ok &= reflection.generator_map["z"] == fixture.target.gen("inv.z")
    report(9, ok, "n=1: two objects, ten generators in the localization pattern; reflection z ↦ z'")


def test_criterion_10_sphere_higher():
    ok = True
    times = []
    for n in range(2, 9):
        started = time.time()
        fixture = build_fixture(n)
        cat = fixture.hocolim.category
        ok &= cat.generator("t.x").degree == 1 - n
        ok &= cat.generator("t.x").differential.is_zero()
        if n == 2:
            ok &= fixture.hocolim.ext.t_gen["inv.x"] == -cat.gen("t.x")
        reflection = derive_reflection(n, fixture)
        ok &= reflection.generator_map["z"] == -fixture.target.gen("z")
        ok &= functor_equal(
            compose_functors(reflection, reflection), identity_functor(fixture.target)
        )
        elapsed = time.time() - started
        times.append(elapsed)
        ok &= elapsed < 5
        if not ok:
            break
    report(
        10,
        ok,
        f"n=2..8: |t_x| = 1−n, dt_x = 0, t_x' = −t_x at n=2, reflection z ↦ −z, "
        f"R∘R = 1 [max {max(times):.2f}s < 5s per n]",
    )


def test_criterion_11_pipeline_cross_check(corpus):
    rng = random.Random(CORPUS_SEED + 11)
    ok = True
    count = 0
    for cat in corpus:
        span = random_span(rng, cat)
        ok &= hocolim_via_pipeline(span).result == hocolim(span).category
        count += 1
        if not ok:
            break
    report(11, ok, f"l∘colim∘Q∘T equals the closed-form hocolim on {count} spans")


def test_criterion_12_dsl_round_trip(corpus):
    rng = random.Random(CORPUS_SEED + 12)
    ok = True
    count = 0
    for index, cat in enumerate(corpus):
        text = serialize_category(f"C{index}", cat)
        ok &= parse(text).categories[f"C{index}"] == cat
        ok &= serialize_category(f"C{index}", parse(text).categories[f"C{index}"]) == text
        count += 1
        # derived entities: localizations and cylinders for a sample
        if index % 20 == 0:
            terms = closed_degree_zero_generators(cat)
            if terms:
                loc, _ = localize(cat, terms)
                loc_text = serialize_category("L", loc)
                ok &= parse(loc_text).categories["L"] == loc
            cyl = cyl_object(cat)
            cyl_text = serialize_category("Y", cyl.cyl)
            ok &= parse(cyl_text).categories["Y"] == cyl.cyl
        if not ok:
            break
    report(12, ok, f"parse∘serialize identity and byte-determinism on {count} corpus entities")
