"""Term-kernel selection.

Imports the compiled kernel when available, the pure-Python one otherwise.
Set SEMIFREE_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by tests that compare the two implementations).
"""

import os

if os.environ.get("SEMIFREE_PURE_PYTHON"):
    from . import _termops as _impl
else:
    try:
        from . import _termops_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _termops as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION

add_into = _impl.add_into
scaled_into = _impl.scaled_into
neg = _impl.neg
scale = _impl.scale
concat_bilinear = _impl.concat_bilinear
leibniz = _impl.leibniz
apply_words = _impl.apply_words
