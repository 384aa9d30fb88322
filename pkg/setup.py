"""Build script: compiles the optional Cython core.

The extension is a pure speedup; if Cython or a C compiler is missing the
install still succeeds and the package falls back to the numpy kernels.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "cstlp._core",
                ["src/cstlp/_core.pyx"],
                # -ffp-contract=off: the numpy fallback must stay bit-identical,
                # so the compiler may not fuse multiply-add in the pivot kernel.
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
