"""Parity between the pure-Python term kernel and the compiled one."""

import random
from fractions import Fraction

import pytest

from semifree import _termops as py_kernel
from semifree import kernel
from semifree.rings import QQ, IntegersMod

try:
    from semifree import _termops_c as c_kernel
except ImportError:
    c_kernel = None

NAMES = ["a", "b", "c", "d"]


def rand_support(rng, n):
    out = {}
    for _ in range(n):
        word = tuple(rng.choice(NAMES) for _ in range(rng.randint(0, 4)))
        coeff = rng.choice([1, -1, 2, -3, Fraction(1, 2), Fraction(-2, 3)])
        out[word] = coeff
    return out


def test_selected_kernel_exposes_same_api():
    for name in (
        "add_into",
        "scaled_into",
        "neg",
        "scale",
        "concat_bilinear",
        "leibniz",
        "apply_words",
    ):
        assert hasattr(kernel, name)
    assert kernel.IMPLEMENTATION in ("python", "c")


@pytest.mark.skipif(c_kernel is None, reason="compiled kernel not built")
def test_parity_random():
    rng = random.Random(0)
    gen_deg = {n: rng.randint(-2, 2) for n in NAMES}
    gen_diff = {n: rand_support(rng, 2) for n in NAMES}
    for trial in range(500):
        ring = QQ if trial % 4 else IntegersMod(5)

        def conv(support):
            return {
                w: ring.coerce(v)
                for w, v in support.items()
                if not ring.is_zero(ring.coerce(v))
            }

        s1 = conv(rand_support(rng, 4))
        s2 = conv(rand_support(rng, 4))
        gd = {n: conv(s) for n, s in gen_diff.items()}
        a_py, a_c = dict(s1), dict(s1)
        py_kernel.add_into(a_py, s2, ring)
        c_kernel.add_into(a_c, s2, ring)
        assert a_py == a_c
        assert py_kernel.concat_bilinear(s1, s2, ring) == c_kernel.concat_bilinear(
            s1, s2, ring
        )
        coeff = ring.coerce(rng.choice([2, Fraction(1, 2), -1]))
        assert py_kernel.scale(coeff, s1, ring) == c_kernel.scale(coeff, s1, ring)
        assert py_kernel.neg(s1, ring) == c_kernel.neg(s1, ring)
        assert py_kernel.leibniz(s1, gd, gen_deg, ring) == c_kernel.leibniz(
            s1, gd, gen_deg, ring
        )
        images = {n: conv(rand_support(rng, 2)) for n in NAMES}
        assert py_kernel.apply_words(s1, images, ring) == c_kernel.apply_words(
            s1, images, ring
        )


@pytest.mark.skipif(c_kernel is None, reason="compiled kernel not built")
def test_whole_engine_agrees_across_kernels():
    """Build a nontrivial construction with each kernel implementation and
    compare the serialized output byte for byte."""
    import subprocess
    import sys

    script = (
        "from semifree import kernel\n"
        "from semifree.core import ObjectId, Generator, Term, make_presentation\n"
        "from semifree.cylinder import cyl_object\n"
        "from semifree.dsl import serialize_category\n"
        "from semifree.rings import QQ\n"
        "L = ObjectId('L')\n"
        "cat = make_presentation([L], [Generator('z', L, L, -1, Term.zero(QQ, L, L, 0))])\n"
        "cyl2 = cyl_object(cyl_object(cat).cyl)\n"
        "print(kernel.IMPLEMENTATION)\n"
        "print(serialize_category('X', cyl2.cyl))\n"
    )
    import os

    env_c = dict(os.environ)
    env_c.pop("SEMIFREE_PURE_PYTHON", None)
    env_py = dict(os.environ, SEMIFREE_PURE_PYTHON="1")
    out_c = subprocess.run(
        [sys.executable, "-c", script], capture_output=True, text=True, env=env_c
    )
    out_py = subprocess.run(
        [sys.executable, "-c", script], capture_output=True, text=True, env=env_py
    )
    assert out_c.returncode == 0 and out_py.returncode == 0
    head_c, _, body_c = out_c.stdout.partition("\n")
    head_py, _, body_py = out_py.stdout.partition("\n")
    assert head_c == "c" and head_py == "python"
    assert body_c == body_py
