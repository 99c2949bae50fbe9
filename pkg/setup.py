"""Build script: compiles the optional Cython term kernel.

The compiled kernel is a drop-in twin of semifree._termops; the package
falls back to the pure-Python version when the extension is missing, so a
failed compile must never fail the install.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping compiled kernel ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping {ext.name} ({exc})", file=sys.stderr)


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/semifree/_termops_c.pyx"],
        language_level=3,
    )
except ImportError:
    print("warning: Cython not available, building pure-Python only", file=sys.stderr)

setup(
    ext_modules=ext_modules,
    cmdclass={"build_ext": OptionalBuildExt},
)
