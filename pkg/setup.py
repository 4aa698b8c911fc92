"""Build script: compiles the numeric kernels with Cython when possible.

The kernel module is written in Cython "pure Python" mode, so the package
works unmodified (just slower) when the extension cannot be built.  Set
INTRINSIC_METRICS_PURE=1 to skip compilation on purpose.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("INTRINSIC_METRICS_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/intrinsic_metrics/_kernels.py"],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "initializedcheck": False,
                "cdivision": True,
            },
        )
        for ext in ext_modules:
            # Two flags keep compiled results bit-identical with the
            # interpreted fallback: -ffp-contract=off stops FMA contraction
            # of a*b+c, and the no-builtin trio stops gcc from fusing
            # adjacent cos(x)/sin(x) calls into glibc sincos, whose result
            # differs from separate calls by 1 ulp on rare angles.
            ext.extra_compile_args = [
                "-O3",
                "-ffp-contract=off",
                "-fno-builtin-sin",
                "-fno-builtin-cos",
                "-fno-builtin-sincos",
            ]
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
