import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = ["python/bindings.cpp"] + sorted(glob.glob("src/*.cpp"))

setup(
    ext_modules=[
        Pybind11Extension(
            "logsel._logsel",
            sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
