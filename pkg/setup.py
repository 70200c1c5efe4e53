import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Source build without Cython: the package falls back to the pure-Python
    # kernels at import time.
    ext_modules = []
else:
    extensions = [
        Extension(
            "sinedde._kernels._core",
            ["src/sinedde/_kernels/_core.pyx"],
            include_dirs=[np.get_include()],
            extra_compile_args=["-O3"],
        )
    ]
    ext_modules = cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
