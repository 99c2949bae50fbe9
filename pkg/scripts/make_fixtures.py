#!/usr/bin/env python3
"""Regenerate the .dg fixture files for the sphere case study.

Each file contains the gluing span, the reflection span morphism, the
simplified target presentation, and the explicit equivalences, so the whole
reflection computation can be replayed from the CLI.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from semifree.dsl import Workspace, serialize_workspace
from semifree.spheres import build_fixture


def fixture_workspace(n: int) -> Workspace:
    fx = build_fixture(n)
    ws = Workspace()
    ws.categories["side1"] = fx.span.left
    ws.categories["side2"] = fx.span.right
    ws.categories["mid"] = fx.span.middle
    ws.categories["hocolim"] = fx.hocolim.category
    ws.categories["target"] = fx.target
    ws.functors["alpha"] = fx.span.alpha
    ws.functors["beta"] = fx.span.beta
    ws.functors["reflection_mid"] = fx.reflection_morphism.F_C
    ws.functors["id_side1"] = fx.reflection_morphism.F_A
    ws.functors["id_side2"] = fx.reflection_morphism.F_B
    ws.functors["hocolim_reflection"] = fx.hocolim_reflection
    ws.functors["phi"] = fx.phi
    ws.functors["psi"] = fx.psi
    ws.spans["gluing"] = fx.span
    ws.span_morphisms["reflection"] = fx.reflection_morphism
    return ws


def main():
    out_dir = pathlib.Path(__file__).resolve().parents[1] / "fixtures"
    out_dir.mkdir(exist_ok=True)
    for n in (1, 2, 3, 4):
        path = out_dir / f"sphere_n{n}.dg"
        path.write_text(serialize_workspace(fixture_workspace(n)), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
