"""The shipped .dg fixture files replay the sphere computation."""

import pathlib

import pytest

from semifree.dsl import parse, serialize_workspace
from semifree.functors import compose_functors, functor_equal
from semifree.hocolim import hocolim, hocolim_loc, hocolim_morphism
from semifree.spheres import build_fixture

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fixture_parses_and_matches_builder(n):
    text = (FIXTURES / f"sphere_n{n}.dg").read_text(encoding="utf-8")
    ws = parse(text)
    fx = build_fixture(n)
    assert ws.categories["hocolim"] == fx.hocolim.category
    assert ws.categories["target"] == fx.target
    assert functor_equal(ws.functors["phi"], fx.phi)
    assert functor_equal(ws.functors["psi"], fx.psi)
    assert ws.spans["gluing"] == fx.span


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fixture_replays_reflection(n):
    text = (FIXTURES / f"sphere_n{n}.dg").read_text(encoding="utf-8")
    ws = parse(text)
    morphism = ws.span_morphisms["reflection"]
    span = ws.spans["gluing"]
    data = hocolim_loc(span) if span.middle.localized_inverses else hocolim(span)
    lifted = hocolim_morphism(morphism, data, data)
    composite = compose_functors(
        ws.functors["phi"], compose_functors(lifted, ws.functors["psi"])
    )
    target = ws.categories["target"]
    if n == 1:
        assert composite.generator_map["z"] == target.gen("inv.z")
    else:
        assert composite.generator_map["z"] == -target.gen("z")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fixture_files_are_current(n):
    import scripts_path_shim  # noqa: F401

    from make_fixtures import fixture_workspace

    text = (FIXTURES / f"sphere_n{n}.dg").read_text(encoding="utf-8")
    assert serialize_workspace(fixture_workspace(n)) == text
