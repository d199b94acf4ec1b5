from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernels are optional: if the extension cannot be built the
# package falls back to the pure-Python implementations in satlab._pure.
extensions = [
    Extension(
        "satlab._core",
        ["src/satlab/_core.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
    if cythonize is not None
    else [],
)
