"""Build script for the optional compiled sequence kernels.

The package works without the extension (a numpy fallback is selected at
import time), but the compiled kernels make encoder training several times
faster. `pip install -e . --no-build-isolation` builds them in place.
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "hawk.learn._kernels",
        sources=["src/hawk/learn/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
