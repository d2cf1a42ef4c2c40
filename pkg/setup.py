from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "graphcorr._core._fastcore",
        ["src/graphcorr/_core/_fastcore.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

setup(ext_modules=cythonize(extensions, language_level="3"))
