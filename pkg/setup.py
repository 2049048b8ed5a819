"""Build script: compiles the optional C kernel, falling back to pure Python.

Set ENTSORT_PURE_PYTHON=1 to skip the extension entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible; a missing compiler is not fatal."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: C kernel build skipped ({exc}); "
                  "the pure-Python kernel will be used", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: building {ext.name} failed ({exc}); "
                  "the pure-Python kernel will be used", file=sys.stderr)


ext_modules = []
if os.environ.get("ENTSORT_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "entsort._kernel_c",
                    ["src/entsort/_kernel_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        print("warning: Cython not available; building pure-Python only",
              file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
