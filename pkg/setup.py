"""Build script.  The compiled GF(p) kernel is optional: if Cython or a C
compiler is unavailable the package falls back to a pure numpy implementation
selected at import time."""

from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize
    import numpy as np

    ext_modules = cythonize(
        [
            Extension(
                "gentlecat._gfcore",
                ["src/gentlecat/_gfcore.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
