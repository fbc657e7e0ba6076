"""Build hook: compile the optional C kernels when Cython is available.

The package is fully functional without the extension; the import-time
backend selector in orbitale._kernels falls back to the numpy versions.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "orbitale._kernels._ckernels",
                ["src/orbitale/_kernels/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
