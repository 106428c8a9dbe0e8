# -*- coding: utf-8 -*-

"""The .tvol volume container.

+ Line 1: UTF-8 JSON header with "dims", "dtype" and "layout".
+ Then nx * ny * nz little-endian 32-bit floats, slice-major.
"""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, Dict, Any
from json import loads, dumps, JSONDecodeError
from numpy import frombuffer, ascontiguousarray, dtype as np_dtype
from lncad.errors import ContractError, ValidationError
from .volume import Volume

_DTYPE = np_dtype('<f4')
_HEADER = {'dtype': 'f32le', 'layout': 'slice-major'}


def read_tvol(path: str, *, check_bounds: bool = True) -> Tuple[Volume, Dict[str, Any]]:
    """Load a volume and its header."""
    with open(path, 'rb') as f:
        line = f.readline()
        payload = f.read()
    try:
        header = loads(line.decode('utf-8'))
    except (UnicodeDecodeError, JSONDecodeError) as e:
        raise ValidationError(f"bad header: {e}", path=path, line=1) from e
    if not isinstance(header, dict):
        raise ValidationError("header is not an object", path=path, line=1)
    for key, value in _HEADER.items():
        if header.get(key) != value:
            raise ValidationError(f"unsupported {key}: {header.get(key)!r}",
                                  path=path, line=1, field=key)
    dims = header.get('dims')
    if (
        not isinstance(dims, list)
        or len(dims) != 3
        or not all(type(n) is int and n > 0 for n in dims)
    ):
        raise ValidationError(f"invalid dims: {dims!r}",
                              path=path, line=1, field='dims')
    nx, ny, nz = dims
    expected = nx * ny * nz * _DTYPE.itemsize
    if len(payload) != expected:
        raise ValidationError(
            f"payload has {len(payload)} bytes, expected {expected}", path=path)
    voxels = frombuffer(payload, dtype=_DTYPE).reshape(nz, ny, nx)
    try:
        volume = Volume((nx, ny, nz), voxels)
        if check_bounds:
            volume.check_bounds()
    except ContractError as e:
        raise ValidationError(str(e), path=path) from e
    return volume, header


def write_tvol(volume: Volume, path: str, **extra: Any) -> None:
    """Save a volume, extra header keys are kept."""
    header: Dict[str, Any] = {'dims': list(volume.dims)}
    header.update(_HEADER)
    header.update(extra)
    data = ascontiguousarray(volume.voxels, dtype=_DTYPE).tobytes()
    with open(path, 'wb') as f:
        f.write(dumps(header).encode('utf-8') + b'\n')
        f.write(data)
