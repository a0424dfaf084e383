"""Build script for the optional Cython kernels.

The package works without them: ``phylon.kernels`` falls back to the
pure-Python implementation when the extension is missing.
"""
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("phylon._ckernels", ["src/phylon/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
