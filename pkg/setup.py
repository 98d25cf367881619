"""Build script: compiles the accelerated integrator kernels when Cython and a
C compiler are available.  The package installs and works without them (the
pure numpy backend is selected at import), so any build failure here is
non-fatal by design: run ``pip install -e . --no-build-isolation`` and check
``spinfric.backends.active_backend()`` to see what you got.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "spinfric.backends._accel",
                ["src/spinfric/backends/_accel.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3", "-march=native", "-funroll-loops"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - depends on build environment
    print(f"spinfric: skipping accelerated extension ({exc}); "
          "pure-python backend will be used")

setup(ext_modules=ext_modules)
