import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("vilenkin._kernel", ["src/vilenkin/_kernel.pyx"],
                   include_dirs=[np.get_include()], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
