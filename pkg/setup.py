"""Build hook for the optional compiled reduction kernel.

The package is pure Python; if Cython is available the Smith normal form
inner loop is compiled as fourfold._snf_cy and picked up at import time.
A failed or skipped extension build leaves a fully working install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext = Extension("fourfold._snf_cy", ["src/fourfold/_snf_cy.pyx"])
    ext.optional = True
    ext_modules = cythonize([ext], language_level=3)
except ImportError:
    pass

setup(ext_modules=ext_modules)
