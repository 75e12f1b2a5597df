from setuptools import Extension, setup

# The compiled variance kernel is optional: without Cython (or a working C
# toolchain) the package falls back to the NumPy implementation at import.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "mfkit._varcore",
                ["src/mfkit/_varcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
