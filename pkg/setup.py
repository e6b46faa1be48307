from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    # -ffp-contract=off: no FMA contraction, so the compiled kernels produce
    # bit-identical results to the pure-Python fallback.
    extensions = cythonize(
        [
            Extension(
                "sifbm._kernels",
                ["src/sifbm/_kernels.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
