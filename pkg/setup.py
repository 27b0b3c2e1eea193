"""Builds the optional Cython kernel extension.

The package works without it: pubgrowth._kernels falls back to the pure
NumPy implementation when the compiled module is absent (or when
PUBGROWTH_PURE_PYTHON is set).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pubgrowth._kernels._c",
                sources=["src/pubgrowth/_kernels/_c.pyx"],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
