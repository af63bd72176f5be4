"""Build script: the Cython kernel extension is optional.

If Cython or a C compiler is missing the package still installs and falls back
to the numpy kernels at import time.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "adzeta._kernels",
                ["src/adzeta/_kernels.pyx"],
                extra_compile_args=["-O2", "-fno-fast-math"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
