"""Build script: compiles the optional Cython kernel for polynomial arithmetic.

The package is fully functional without the extension (a pure-Python kernel
with the same interface is selected at import time), so any failure here is
non-fatal: we fall back to a pure-Python install.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("FLEXLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/flexlab/polysym/_kernels_cy.pyx"],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
