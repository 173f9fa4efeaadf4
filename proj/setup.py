import os
import subprocess
import sys
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools import Extension


class CMakeExtension(Extension):
    def __init__(self, name, sourcedir=""):
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        extdir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        cfg = "Debug" if self.debug else "Release"
        build_temp = Path(self.build_temp) / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DRELAYDMT_BUILD_TESTS=OFF",
            "-DRELAYDMT_BUILD_PYTHON=ON",
        ]
        subprocess.run(
            ["cmake", ext.sourcedir, *cmake_args], cwd=build_temp, check=True
        )
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_core", "--parallel"],
            cwd=build_temp,
            check=True,
        )
        # get_ext_fullpath already points inside <build_lib>/relaydmt
        built = build_temp / "pythonpkg" / "relaydmt"
        extdir.mkdir(parents=True, exist_ok=True)
        for f in built.iterdir():
            if f.suffix in (".so", ".pyd", ".dylib"):
                self.copy_file(f, extdir / f.name)


setup(
    packages=["relaydmt"],
    package_dir={"relaydmt": "python/relaydmt"},
    ext_modules=[CMakeExtension("relaydmt._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
