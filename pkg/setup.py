"""Build script: compiles the optional echelon extension.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so any build failure here downgrades
to a warning instead of breaking the install.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("bntoric._elim", ["src/bntoric/_elim.pyx"],
                   extra_compile_args=["-O2"])],
        language_level=3,
    )
except Exception as exc:  # noqa: BLE001 - extension is optional
    print(f"warning: skipping compiled kernel ({exc}); "
          "the pure-Python kernel will be used", file=sys.stderr)

setup(ext_modules=ext_modules)
