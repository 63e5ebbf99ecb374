"""Build the pybind11 extension through the project's CMake configuration."""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", str(source),
                "-B", str(build_dir),
                "-DSKBUILD=2",  # library + module only, no test targets
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_subdivlab", "-j"],
            check=True,
        )
        built = sorted(build_dir.glob("_subdivlab.*"))
        if not built:
            raise RuntimeError("cmake did not produce the _subdivlab module")
        out = Path(self.get_ext_fullpath(ext.name)).resolve()
        out.parent.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(built[0]), str(out))


setup(
    ext_modules=[CMakeExtension("subdivlab._subdivlab")],
    cmdclass={"build_ext": CMakeBuild},
)
