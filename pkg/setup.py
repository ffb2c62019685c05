"""Build script: compiles the optional Cython core.

The package works without the extension (a pure-numpy fallback is selected at
import time), so the extension is marked optional: a failing C build must not
fail the install.
"""

from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize
    import numpy as np

    ext = Extension(
        "plurikernel._corex",
        sources=["src/plurikernel/_corex.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
        optional=True,
    )
    ext_modules = cythonize([ext], language_level=3)
except ImportError:
    pass

setup(ext_modules=ext_modules)
