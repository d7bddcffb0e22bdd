"""Build script for the compiled Jacobi kernel.

The package is fully functional without the extension (a pure-Python kernel
is selected at import time), so a failed build only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "spinhop._jacobi",
                ["src/spinhop/_jacobi.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
