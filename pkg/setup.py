from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension("seqcomp._kernels", ["src/seqcomp/_kernels.pyx"]),
]

# The compiled kernels are an optional speedup; seqcomp.kernels falls back to
# the pure-Python implementation at import time when the extension is absent.
ext_modules = cythonize(extensions, language_level="3") if cythonize else []

setup(ext_modules=ext_modules)
