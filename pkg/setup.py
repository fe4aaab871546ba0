"""Build the compiled oracle kernel; the package still works without it."""
from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension(
            "partisan_symmetry.oracle._kernel",
            ["src/partisan_symmetry/oracle/_kernel.pyx"],
            include_dirs=[numpy.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
