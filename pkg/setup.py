"""Build the optional compiled scan kernel.

Without Cython (or a C compiler) the package installs pure-Python and
``polycube.kernel`` falls back to the interpreted scan.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("POLYCUBE_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("polycube._kernel", ["src/polycube/_kernel.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
