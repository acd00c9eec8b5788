"""Kernel selection: compiled Cython extension if available, else pure Python.

Set FLEXLAB_PURE=1 to force the pure-Python kernel (used by the benchmark to
compare both backends).
"""
from __future__ import annotations

import os

if os.environ.get("FLEXLAB_PURE") == "1":
    from flexlab.polysym import _kernels_py as _impl
else:
    try:
        from flexlab.polysym import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from flexlab.polysym import _kernels_py as _impl

BACKEND = _impl.BACKEND
add_terms = _impl.add_terms
sub_terms = _impl.sub_terms
neg_terms = _impl.neg_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms
addmul_terms = _impl.addmul_terms
div_terms = _impl.div_terms
