from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "toughham.kernels._fast",
        ["src/toughham/kernels/_fast.pyx"],
        extra_compile_args=["-O2"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
