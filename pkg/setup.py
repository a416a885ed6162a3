import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("INTERFPDF_SKIP_EXT", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "interfpdf._kernels",
                    ["src/interfpdf/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install pure-Python only, the package
        # falls back to interfpdf._kernels_py at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
