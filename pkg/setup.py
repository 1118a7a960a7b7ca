"""Build script: compiles the optional enumeration kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed compile only costs speed, never functionality.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible; fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"skipping compiled kernels ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"failed to build {ext.name} ({exc}); using pure-Python fallback")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; using pure-Python kernels")
        return []
    return cythonize(
        [
            Extension(
                "polycount.kernels._fast",
                ["src/polycount/kernels/_fast.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
