"""Build hook for the optional compiled kernel extension.

The package is fully functional without the extension (covgrid._kernels
falls back to a NumPy implementation at import time); building it just
makes the hot loops faster. Cython is therefore not a hard requirement.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "covgrid._kernels._core",
                ["src/covgrid/_kernels/_core.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
