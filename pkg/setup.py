from setuptools import setup, Extension

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dalc._kernel",
                ["src/dalc/_kernel.pyx"],
                language="c++",
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-Python fallback still works without the compiled kernel.
    ext_modules = []

setup(ext_modules=ext_modules)
