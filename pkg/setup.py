"""Build script: compiles the Euler-Maruyama hot-loop extension when Cython
and a C compiler are available.  The package falls back to the pure-numpy
kernels in ``sianneal._kernels_py`` if the extension is absent, so a failed
extension build is not fatal."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from setuptools import Extension
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "sianneal._kernels",
                ["src/sianneal/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                # -ffp-contract=off: keep results bit-identical with the
                # numpy fallback backend (no fused multiply-add)
                extra_compile_args=["-O3", "-ffp-contract=off"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
