"""Build script for the optional compiled kernel.

The package is pure Python plus one Cython extension for the hot evaluation
kernels.  The extension is optional: if Cython (or a C compiler) is missing,
the install still succeeds and acp.kernels falls back to the numpy backend.
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
                "acp._ckernels",
                ["src/acp/_ckernels.pyx"],
                optional=True,
                # -ffast-math lets gcc vectorize the exp loops via libmvec;
                # the kernels never rely on NaN/signed-zero semantics.
                extra_compile_args=["-O3", "-ffast-math", "-funroll-loops"],
                extra_link_args=["-lmvec", "-lm"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
