"""Read and write ``HSC1`` cube files.

Layout (little-endian)::

    offset  size  field
    0       4     magic b"HSC1"
    4       2     version (u16) = 1
    6       2     kind (u16): 0 spectral, 1 interferogram
    8       12    I, J, M (u32 each)
    20      4     reserved, zero (aligns the f64 fields)
    24      8     axis_start (f64): um^-1 for spectral, um for interferogram
    32      8     axis_step (f64)
    40      8     reflectivity (f64), interferogram kind only
    40|48   ...   I*J*M f64 values, third mode fastest, then columns, then rows
"""

import os
import struct

import numpy as np

from .errors import CubeFileError
from .tensor_core import InterferogramCube, SpectralCube

__all__ = [
    "MAGIC",
    "VERSION",
    "KIND_SPECTRAL",
    "KIND_INTERFEROGRAM",
    "header_size",
    "write_cube",
    "read_cube",
]

MAGIC = b"HSC1"
VERSION = 1
KIND_SPECTRAL = 0
KIND_INTERFEROGRAM = 1

_BASE = struct.Struct("<4sHH3I4xdd")
_REFL = struct.Struct("<d")


def header_size(kind):
    return _BASE.size + (_REFL.size if kind == KIND_INTERFEROGRAM else 0)


def write_cube(path, cube):
    """Write a :class:`SpectralCube` or :class:`InterferogramCube` to `path`."""
    if isinstance(cube, InterferogramCube):
        kind, start, step = KIND_INTERFEROGRAM, cube.opd_start, cube.opd_step
    elif isinstance(cube, SpectralCube):
        kind, start, step = KIND_SPECTRAL, cube.wn_start, cube.wn_step
    else:
        raise TypeError(f"cannot write object of type {type(cube).__name__}")
    i, j, m = cube.data.shape
    header = _BASE.pack(MAGIC, VERSION, kind, i, j, m, float(start), float(step))
    if kind == KIND_INTERFEROGRAM:
        header += _REFL.pack(float(cube.reflectivity))
    payload = np.ascontiguousarray(cube.data, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload.tobytes())


def read_cube(path, kind=None):
    """Read a cube file; optionally require a given `kind`."""
    size = os.path.getsize(path)
    with open(path, "rb") as fh:
        raw = fh.read(_BASE.size)
        if len(raw) < _BASE.size:
            raise CubeFileError(f"{path}: truncated header")
        magic, version, file_kind, i, j, m, start, step = _BASE.unpack(raw)
        if magic != MAGIC:
            raise CubeFileError(f"{path}: bad magic {magic!r}")
        if version != VERSION:
            raise CubeFileError(f"{path}: unsupported version {version}")
        if file_kind not in (KIND_SPECTRAL, KIND_INTERFEROGRAM):
            raise CubeFileError(f"{path}: unknown kind {file_kind}")
        if kind is not None and file_kind != kind:
            names = {KIND_SPECTRAL: "spectral", KIND_INTERFEROGRAM: "interferogram"}
            raise CubeFileError(f"{path}: expected a {names[kind]} cube, found {names[file_kind]}")
        reflectivity = 0.0
        if file_kind == KIND_INTERFEROGRAM:
            (reflectivity,) = _REFL.unpack(fh.read(_REFL.size))
        expected = header_size(file_kind) + 8 * i * j * m
        if size != expected:
            raise CubeFileError(f"{path}: size {size} bytes, expected {expected}")
        data = np.frombuffer(fh.read(8 * i * j * m), dtype="<f8").astype(np.float64)
    data = data.reshape(i, j, m)
    if file_kind == KIND_INTERFEROGRAM:
        return InterferogramCube(data, start, step, reflectivity)
    return SpectralCube(data, start, step)
