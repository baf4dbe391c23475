import os

import numpy as np
from setuptools import setup

ext_modules = []
if os.environ.get("QWMIX_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:  # pure-Python fallback is selected at import
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "qwmix._fwht_ext",
                    ["src/qwmix/_fwht_ext.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
