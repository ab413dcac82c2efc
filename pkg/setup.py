import sys

from setuptools import Extension, setup

# The compiled ascent kernel is optional: the package falls back to a
# vectorized numpy implementation when the extension is absent.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("pqcert.kernels._ascent", ["src/pqcert/kernels/_ascent.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    print(f"skipping compiled kernel build: {exc}", file=sys.stderr)

setup(ext_modules=ext_modules)
