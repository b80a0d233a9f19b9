import numpy as np
from setuptools import Extension, setup

# The compiled kernels are optional: if Cython (or a C compiler) is missing the
# package falls back to the pure-NumPy implementations in repairlab._core.fallback.
try:
    from Cython.Build import cythonize

    # -ffp-contract=off keeps the C arithmetic bit-identical to the NumPy
    # fallback (no FMA fusion), which the backend-equality tests rely on.
    ext_modules = cythonize(
        [
            Extension(
                "repairlab._core.kernels",
                ["src/repairlab/_core/kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
