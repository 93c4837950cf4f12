"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (pure-Python twins are selected at
import time), so any build failure here degrades to a pure install instead
of aborting.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "multicurve._kernels._ckernels",
                ["src/multicurve/_kernels/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
