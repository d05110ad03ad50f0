"""Build the optional compiled kernel. The package falls back to a numpy
implementation when the extension is unavailable, so a failed compile is
not fatal: run `pip install -e . --no-build-isolation` and check
`qdcascade.kernel_backend`."""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qdcascade/_kernels/_core.pyx"],
        compiler_directives={"language_level": 3},
    )
    include_dirs = [numpy.get_include()]
except ImportError:
    ext_modules = []
    include_dirs = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)
