"""Build script for the compiled kernel extension.

The package works without the extension (a pure-Python kernel lane is
selected at import time), so a failed compile only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "lazyprune._kernels.ckernels",
                ["src/lazyprune/_kernels/ckernels.pyx"],
                include_dirs=[np.get_include()],
                # -ffp-contract=off: the pure-Python lane must match the
                # compiled lane bit for bit, so FMA fusion is forbidden.
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
