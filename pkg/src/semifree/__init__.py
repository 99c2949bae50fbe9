"""Symbolic engine for finitely presented semifree dg categories.

Exact-arithmetic presentations, dg functors, cylinders, homotopy colimits,
dg localization, and the constructive cofibration-category toolkit, all
verified by term-level identities.
"""

from .core import (
    DgCategory,
    Generator,
    ObjectId,
    Path,
    Term,
    check_d_squared,
    compose,
    coproduct,
    diff,
    hom_truncation,
    make_presentation,
)
from .functors import (
    DgFunctor,
    SemifreeExtensionWitness,
    apply,
    codiagonal,
    compose_functors,
    functor_equal,
    identity_functor,
    make_functor,
)
from .constructions import (
    change_basis,
    destabilize,
    localize,
    mediating_functor,
    pushout,
    semifree_extension,
)
from .cylinder import (
    CylinderData,
    cyl_functor,
    cyl_functor_loc,
    cyl_object,
    cyl_object_loc,
    t_loc_inverse_generators,
    t_of,
)
from .hocolim import (
    Span,
    SpanMorphism,
    cofibrant_resolution,
    hocolim,
    hocolim_loc,
    hocolim_morphism,
    hocolim_object,
    hocolim_object_loc,
    t_diagram,
)
from .homotopy import (
    MappingCylinder,
    hep_extend,
    homotopic_via,
    interchange,
    mapping_cylinder,
    mapping_cylinder_morphism,
    promote_equivalence,
    relative_cylinder,
)
from .rings import QQ, ZZ, IntegersMod
from .spheres import build_fixture, derive_reflection, sphere_category, sphere_target

__version__ = "0.1.0"
