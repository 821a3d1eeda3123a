# Copyright 2023 cartanquot developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from typing import Any, Sequence, Tuple
import zlib

import numpy as np
import simplejson

from .exceptions import ConfigurationException, InvalidPointException


def as_batch(points, width: int, name: str = "point") -> Tuple[np.ndarray, bool]:
    """Turn a point or a batch of points into a 2d complex array.

    :param points: a point of shape ``(width,)`` or a batch of shape ``(N, width)``
    :param int width: expected number of complex coordinates
    :param str name: name used in error messages
    :raises ~cartanquot.exceptions.InvalidPointException: wrong shape or non finite coordinates
    :returns: the ``(N, width)`` array and whether the input was a single point
    """
    arr = np.asarray(points, dtype=complex)
    single = arr.ndim == 1
    if single:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2 or arr.shape[1] != width:
        raise InvalidPointException("{} must have {} coordinates, got shape {}".format(name, width, np.shape(points)))
    check_finite(arr, name)
    return arr, single


def as_matrix_batch(matrices, rows: int, cols: int, name: str = "matrix") -> Tuple[np.ndarray, bool]:
    """Same as :func:`as_batch` for a matrix or a stack of matrices."""
    arr = np.asarray(matrices, dtype=complex)
    single = arr.ndim == 2
    if single:
        arr = arr[np.newaxis, :, :]
    if arr.ndim != 3 or arr.shape[1:] != (rows, cols):
        raise InvalidPointException("{} must have shape {}x{}, got shape {}".format(name, rows, cols,
                                                                           np.shape(matrices)))
    check_finite(arr, name)
    return arr, single


def check_finite(arr: np.ndarray, name: str = "point"):
    if not np.all(np.isfinite(arr)):
        raise InvalidPointException("{} has non finite coordinates".format(name))


def unbatch(arr: np.ndarray, single: bool):
    return arr[0] if single else arr


def quadratic_roots(b, c) -> Tuple[np.ndarray, np.ndarray]:
    """Roots of ``t**2 - b*t + c`` on the principal branch.

    The larger root is computed first and the other one from Vieta's product,
    which keeps both accurate when ``|c|`` is small against ``|b|**2``.
    """
    b = np.asarray(b, dtype=complex)
    c = np.asarray(c, dtype=complex)
    disc = np.sqrt(b * b - 4 * c)
    plus = b + disc
    minus = b - disc
    q = np.where(np.abs(plus) >= np.abs(minus), plus, minus)
    first = q / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        second = np.where(first != 0, c / np.where(first != 0, first, 1), 0)
    return first, second


def polydisc_uniform(rng: np.random.Generator, count: int, radii: Sequence[float]) -> np.ndarray:
    """Uniform samples in the polydisc of the given radii."""
    radii = np.asarray(radii, dtype=float)
    modulus = radii * np.sqrt(rng.random((count, radii.size)))
    angle = 2 * np.pi * rng.random((count, radii.size))
    return modulus * np.exp(1j * angle)


def ball_uniform(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Uniform samples in the unit ball of ``C^dim``."""
    gauss = rng.standard_normal((count, 2 * dim))
    direction = gauss / np.linalg.norm(gauss, axis=1, keepdims=True)
    radius = rng.random(count) ** (1.0 / (2 * dim))
    real = direction * radius[:, np.newaxis]
    return real[:, :dim] + 1j * real[:, dim:]


def derive_seed(seed: int, stream: str) -> int:
    """Deterministic sub-seed of ``seed`` for a named stream."""
    sequence = np.random.SeedSequence([int(seed), zlib.crc32(stream.encode("utf-8"))])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def complex_to_json(value) -> list:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def complex_from_json(value) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ConfigurationException("a complex number must be written [re, im], got {!r}".format(value))


def _is_complex_leaf(value) -> bool:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return True
    return (isinstance(value, (list, tuple)) and len(value) == 2
            and all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in value))


def _decode_nested(value):
    if _is_complex_leaf(value):
        return complex_from_json(value)
    if not isinstance(value, (list, tuple)) or len(value) == 0:
        raise ConfigurationException("expected a non empty array of [re, im] pairs, got {!r}".format(value))
    return [_decode_nested(entry) for entry in value]


def array_from_json(value) -> np.ndarray:
    """Decode a point, a matrix or a batch of them; entries are ``[re, im]`` pairs or real numbers.

    The outer list is always an array, so ``[0.5, 0.25]`` is a point with two
    real coordinates while ``[[0.5, 0.25]]`` is a point with one complex one.
    """
    if not isinstance(value, (list, tuple)) or len(value) == 0:
        raise ConfigurationException("expected a non empty array of [re, im] pairs, got {!r}".format(value))
    decoded = [complex_from_json(entry) if _is_complex_leaf(entry) else _decode_nested(entry) for entry in value]
    try:
        return np.array(decoded, dtype=complex)
    except ValueError as error:
        raise ConfigurationException("ragged array in json input: {}".format(error)) from error


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy and complex values to plain json types."""
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return to_jsonable(value.tolist())
        return value.tolist()
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        return complex_to_json(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def dumps(value: Any, indent: int = 2) -> str:
    """Deterministic json text: sorted keys and fixed separators."""
    return simplejson.dumps(to_jsonable(value), sort_keys=True, indent=indent, separators=(",", ": "),
                            ignore_nan=True)


def loads(text: str) -> Any:
    try:
        return simplejson.loads(text)
    except simplejson.JSONDecodeError as error:
        raise ConfigurationException("malformed json input: {}".format(error)) from error
