import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "convexlab._kernels._khachiyan",
                ["src/convexlab/_kernels/_khachiyan.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    # pure-python fallback kernel is selected at import time
    ext_modules = []

setup(ext_modules=ext_modules)
