"""Builds the optional compiled scan kernel.

The package is fully functional without the extension; a pure-Python twin
is selected at import time when the compiled module is unavailable.
Set CENTRISCAN_PURE=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CENTRISCAN_PURE") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "centriscan._scan_c",
                    ["src/centriscan/_scan_c.pyx"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
