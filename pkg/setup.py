"""Build script: compiles the optional fast-arithmetic extension.

The package works without the extension (a pure-Python twin of the same
kernels is selected at import time), so the build is best-effort: if
Cython or a C toolchain is missing, the install proceeds without it.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "amalgam._kernels_cy",
                ["src/amalgam/_kernels_cy.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
