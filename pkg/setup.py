"""Build script for the optional compiled quadrature kernels.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile degrades the build instead of breaking it.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

FAST_MATH_FLAGS = [
    "-O3",
    "-fno-math-errno",
    "-fno-trapping-math",
    "-funroll-loops",
]


class OptionalBuildExt(build_ext):
    """Build the extension if possible, retrying without -march=native."""

    def build_extension(self, ext):
        if self.compiler.compiler_type != "unix":
            ext.extra_compile_args = []
        try:
            super().build_extension(ext)
        except Exception:
            if "-march=native" not in ext.extra_compile_args:
                warnings.warn(
                    "compiled kernels unavailable; the NumPy fallback will be used"
                )
                return
            ext.extra_compile_args = [
                f for f in ext.extra_compile_args if f != "-march=native"
            ]
            self.build_extension(ext)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; building without compiled kernels")
        return []
    ext = Extension(
        "lcdisc._kernels._core",
        sources=[
            "src/lcdisc/_kernels/_core.pyx",
            "src/lcdisc/_kernels/j0kernel.c",
        ],
        include_dirs=["src/lcdisc/_kernels"],
        extra_compile_args=FAST_MATH_FLAGS + ["-march=native"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
