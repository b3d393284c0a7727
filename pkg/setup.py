"""Build script for the optional compiled kernel core.

The package works without the extension (a NumPy fallback is selected at
import time), so a missing compiler or Cython only costs speed.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pointfuse._kernels",
                ["src/pointfuse/_kernels.pyx"],
                include_dirs=[np.get_include()],
                # no -ffast-math: the fallback relies on IEEE semantics
                # (inf from division by zero) and we want bit-identical
                # results between the two backends.
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
