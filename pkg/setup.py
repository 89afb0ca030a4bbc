"""Build script: compiles the hot-loop kernels when a toolchain is available.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed compile only costs speed, not correctness.
`python setup.py build_ext --inplace` rebuilds the extension in a checkout.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("usm._kernels", ["src/usm/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
