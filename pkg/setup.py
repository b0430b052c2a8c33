import os

from setuptools import setup

ext_modules = []
if os.environ.get("FACETFORGE_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/facetforge/_scoring.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install the pure fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
