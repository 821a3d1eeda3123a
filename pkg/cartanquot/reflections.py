"""Linear reflections and the basic polynomial maps they induce."""

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

from typing import Any, Callable, Dict, Tuple, Union

import numpy as np

from ._util import as_batch, array_from_json, polydisc_uniform, to_jsonable, unbatch
from .exceptions import FrameConditionException, InvalidPointException, NotAReflectionException
from .proper_maps import MapId

__all__ = ['LinearMap', 'BasicPolynomialMap', 'is_reflection', 'reflection_data', 'conjugate',
           'fixed_hyperplane_basis', 'frame_for_reflection', 'basic_map_from_reflection',
           'intertwine_residual', 'p_omega']

MatrixLike = Union["LinearMap", np.ndarray, list]


class LinearMap(object):
    """A square complex matrix acting on column vectors."""

    def __init__(self, matrix):
        matrix = np.array(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidPointException("a linear map needs a square matrix, got shape {}".format(matrix.shape))
        if not np.all(np.isfinite(matrix)):
            raise InvalidPointException("a linear map needs finite entries")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, z):
        arr, single = as_batch(z, self.dim)
        return unbatch(arr @ self.matrix.T, single)

    @classmethod
    def from_json(cls, json):
        return cls(array_from_json(json))

    def to_json(self):
        return to_jsonable(self.matrix)

    def __eq__(self, other):
        if other is None or not isinstance(other, LinearMap):
            return False
        return np.array_equal(self.matrix, other.matrix)

    def __repr__(self) -> str:
        return "reflections.LinearMap({})".format(self.matrix.tolist())


def _matrix(m: MatrixLike) -> np.ndarray:
    return m.matrix if isinstance(m, LinearMap) else LinearMap(m).matrix


def _phase_normalize(vector: np.ndarray) -> np.ndarray:
    significant = np.flatnonzero(np.abs(vector) > 1e-12 * np.max(np.abs(vector)))
    pivot = vector[significant[0]]
    return vector * (abs(pivot) / pivot)


def is_reflection(m: MatrixLike, tol: float = 1e-10) -> bool:
    """Order 2 and ``I - M`` of rank one.

    Ranks are read on singular values against the relative threshold
    ``tol * ||M||``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    matrix = _matrix(m)
    identity = np.eye(matrix.shape[0])
    if np.linalg.norm(matrix @ matrix - identity, 2) >= tol:
        return False
    singular = np.linalg.svd(identity - matrix, compute_uv=False)
    return int(np.count_nonzero(singular > tol * np.linalg.norm(matrix, 2))) == 1


def reflection_data(m: MatrixLike, tol: float = 1e-10) -> Tuple[np.ndarray, np.ndarray]:
    """Unit ``-1`` eigenvector and unit normal of the fixed hyperplane.

    The fixed hyperplane is ``{x : <x, normal> = 0}``. Both vectors are
    phase normalised so that their first significant coordinate is real
    and positive.

    :raises ~cartanquot.exceptions.NotAReflectionException: ``m`` is not a reflection
    :returns: ``(axis, normal)``
    """
    matrix = _matrix(m)
    if not is_reflection(matrix, tol):
        raise NotAReflectionException("matrix is not a reflection")
    identity = np.eye(matrix.shape[0])
    axis = _phase_normalize(np.linalg.svd(matrix + identity)[2][-1].conj())
    normal = _phase_normalize(np.linalg.svd(identity - matrix)[2][0].conj())
    if np.linalg.norm(matrix @ axis + axis) > tol * max(1.0, np.linalg.norm(matrix, 2)):
        raise NotAReflectionException("no -1 eigenvector found")
    return axis, normal


def conjugate(m: MatrixLike, p: MatrixLike) -> LinearMap:
    """``P M P^-1``."""
    matrix = _matrix(p)
    return LinearMap(matrix @ _matrix(m) @ np.linalg.inv(matrix))


def fixed_hyperplane_basis(m: MatrixLike) -> np.ndarray:
    """Orthonormal columns spanning ``ker(I - M)``."""
    matrix = _matrix(m)
    vh = np.linalg.svd(np.eye(matrix.shape[0]) - matrix)[2]
    return vh[1:].conj().T


def frame_for_reflection(m: MatrixLike, tol: float = 1e-10) -> LinearMap:
    """A unitary-like frame ``A`` straightening the reflection.

    The first row is the conjugated hyperplane normal, so ``A`` kills the
    fixed hyperplane in its first coordinate; the other rows span the
    orthogonal complement of the axis.
    """
    axis, normal = reflection_data(m, tol)
    complement = np.linalg.svd(axis.conj()[np.newaxis, :])[2][1:]
    return LinearMap(np.vstack([normal.conj()[np.newaxis, :], complement]))


class BasicPolynomialMap(object):
    """``z -> ((A_1 z)**2, A_2 z, ..., A_n z)`` for a frame matrix ``A``."""

    def __init__(self, frame: MatrixLike):
        self.frame = _matrix(frame)

    @property
    def dim(self) -> int:
        return self.frame.shape[0]

    def __call__(self, z):
        arr, single = as_batch(z, self.dim)
        image = arr @ self.frame.T
        image[:, 0] = image[:, 0] ** 2
        return unbatch(image, single)

    def to_json(self) -> Dict[str, Any]:
        return {"frame": to_jsonable(self.frame)}

    def __repr__(self) -> str:
        return "reflections.BasicPolynomialMap(frame: {})".format(self.frame.tolist())


def basic_map_from_reflection(sigma: MatrixLike, a: MatrixLike, tol: float = 1e-10) -> BasicPolynomialMap:
    """Basic polynomial map of the group ``{id, sigma}`` in the frame ``a``.

    ``a`` must be invertible, send the fixed hyperplane of ``sigma`` into
    ``{0} x C^(n-1)`` and send the axis of ``sigma`` to a nonzero multiple of
    ``e_1``.

    :raises ~cartanquot.exceptions.NotAReflectionException: ``sigma`` is not a reflection
    :raises ~cartanquot.exceptions.FrameConditionException: ``a`` violates a frame condition
    """
    reflection = _matrix(sigma)
    frame = _matrix(a)
    if frame.shape != reflection.shape:
        raise FrameConditionException("frame and reflection have different sizes")
    axis, _ = reflection_data(reflection, tol)
    singular = np.linalg.svd(frame, compute_uv=False)
    if singular[-1] <= tol * singular[0]:
        raise FrameConditionException("frame matrix is not invertible")
    scale = singular[0]
    if np.max(np.abs((frame @ fixed_hyperplane_basis(reflection))[0]), initial=0.0) > tol * scale:
        raise FrameConditionException("frame does not send the fixed hyperplane into {0} x C^(n-1)")
    image = frame @ axis
    if np.max(np.abs(image[1:]), initial=0.0) > tol * scale or abs(image[0]) <= tol * scale:
        raise FrameConditionException("frame does not send the axis onto the first coordinate line")
    return BasicPolynomialMap(frame)


def _as_function(theta: Union[Callable, MapId]) -> Callable:
    if isinstance(theta, MapId):
        return theta._eval
    return theta


def intertwine_residual(theta1: Union[Callable, MapId], theta2: Union[Callable, MapId], p: MatrixLike,
                        samples: int = 1000, seed: int = 0) -> float:
    """``sup |theta2(P z) - theta1(z)|`` over the unit polydisc.

    Zero certifies the exact intertwining ``theta2 o P = theta1``.
    """
    matrix = _matrix(p)
    rng = np.random.default_rng(seed)
    points = polydisc_uniform(rng, samples, np.ones(matrix.shape[1]))
    first = _as_function(theta1)(points)
    second = _as_function(theta2)(points @ matrix.T)
    return float(np.max(np.linalg.norm(np.asarray(second) - np.asarray(first), axis=1)))


def p_omega(omega: complex) -> LinearMap:
    """``diag(omega, conj(omega))``, with ``pi_{2,omega} o P_omega = pi_{2,1}``."""
    omega = complex(omega)
    return LinearMap(np.diag([omega, np.conj(omega)]))
