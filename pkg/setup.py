import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

# -ffp-contract=off keeps the compiled distance loop bit-identical to the
# numpy fallback (FMA contraction would round differently).
extensions = [
    Extension(
        "fireworks_fs._kernels._core",
        ["src/fireworks_fs/_kernels/_core.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3", "-ffp-contract=off"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
