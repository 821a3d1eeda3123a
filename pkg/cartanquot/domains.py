"""Module describing the domains and their membership predicates.

Every domain is a :class:`DomainId` subclass. Points are complex vectors;
the matrix domains also accept matrices and store them in a coordinate
chart, so sampling, scaling and Monte-Carlo volumes work the same way for
all of them. Operations are vectorised: a point of shape ``(n,)`` gives a
scalar answer, a batch of shape ``(N, n)`` gives an array.
"""

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

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union
import logging

import numpy as np

from ._util import (as_batch, as_matrix_batch, ball_uniform, polydisc_uniform, quadratic_roots, unbatch)
from .exceptions import (CartanQuotGenericException, ConfigurationException, InvalidPointException,
                         UnsupportedDomainException)

__all__ = ['DEFAULT_TOL', 'MembershipState', 'MembershipVerdict', 'DomainId',
           'UnitDisc', 'Polydisc', 'EuclideanBall', 'Annulus', 'CartanI', 'CartanII', 'CartanIII',
           'LieBall', 'QuotientL', 'Ellipsoid', 'SymBidisc', 'Tetrablock', 'FDomain',
           'contains', 'margins', 'cartan1_contains_2x2', 'cartan1_2x2_margin',
           'lie_ball_contains_eq1', 'quotient_contains_intrinsic', 'minkowski', 'shilov_sample',
           'mc_volume', 'bounding_box', 'complex_dim', 'sample_uniform', 'boundary_sample']

LOGGER = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
_REJECTION_ROUNDS = 10000


class MembershipState(Enum):
    INSIDE = "Inside"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


class MembershipVerdict(object):
    """Inside / boundary / outside classification of a point.

    ``margin`` is the smallest slack of the strict inequalities defining the
    domain, positive strictly inside. The state is ``Boundary`` exactly when
    ``|margin| <= tol``.
    """

    def __init__(self, state: MembershipState, margin: float, tol: float):
        self.state = state
        self.margin = float(margin)
        self.tol = float(tol)

    @classmethod
    def from_margin(cls, margin: float, tol: float = DEFAULT_TOL):
        if tol < 0:
            raise ValueError("tol must be nonnegative")
        if abs(margin) <= tol:
            state = MembershipState.BOUNDARY
        elif margin > 0:
            state = MembershipState.INSIDE
        else:
            state = MembershipState.OUTSIDE
        return cls(state, margin, tol)

    @property
    def inside(self) -> bool:
        return self.state == MembershipState.INSIDE

    @property
    def outside(self) -> bool:
        return self.state == MembershipState.OUTSIDE

    @property
    def boundary(self) -> bool:
        return self.state == MembershipState.BOUNDARY

    @classmethod
    def from_json(cls, json: Dict[str, Any]):
        return cls(MembershipState(json["state"]), json["margin"], json["tol"])

    def to_json(self) -> Dict[str, Any]:
        return {"state": self.state.value, "margin": self.margin, "tol": self.tol}

    def __eq__(self, other):
        if other is None or not isinstance(other, MembershipVerdict):
            return False
        return self.state == other.state and self.margin == other.margin and self.tol == other.tol

    def __str__(self) -> str:
        return "{} (margin {:.6g}, tol {:.1g})".format(self.state.value, self.margin, self.tol)

    def __repr__(self) -> str:
        return "domains.MembershipVerdict(state: {}, margin: {}, tol: {})".format(self.state.value, self.margin,
                                                                                 self.tol)


def _norm_sq(arr: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(arr) ** 2, axis=1)


def _largest_singular_value(mats: np.ndarray) -> np.ndarray:
    if mats.shape[1:] == (2, 2):
        frob = np.sum(np.abs(mats) ** 2, axis=(1, 2))
        det = np.abs(mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0])
        return np.sqrt((frob + np.sqrt(np.maximum(frob * frob - 4 * det * det, 0.0))) / 2)
    if mats.shape[1] == 0 or mats.shape[2] == 0:
        return np.zeros(mats.shape[0])
    return np.linalg.svd(mats, compute_uv=False)[:, 0]


def lie_margin(z: np.ndarray) -> np.ndarray:
    """Slacks of ``||z||^2 < 1`` and ``2||z||^2 < 1 + |z.z|^2`` on a batch."""
    sq = _norm_sq(z)
    dot = np.abs(np.sum(z * z, axis=1))
    return np.minimum(1 - sq, 1 + dot * dot - 2 * sq)


def lie_eq1_margin(z: np.ndarray) -> np.ndarray:
    sq = _norm_sq(z)
    dot = np.abs(np.sum(z * z, axis=1))
    gap = np.sqrt(np.maximum(sq * sq - dot * dot, 0.0))
    return np.minimum(1 - sq, (1 - sq) - gap)


def lie_norm(z: np.ndarray) -> np.ndarray:
    """Gauge of the Lie ball, ``sqrt(||z||^2 + sqrt(||z||^4 - |z.z|^2))``."""
    sq = _norm_sq(z)
    dot = np.abs(np.sum(z * z, axis=1))
    return np.sqrt(sq + np.sqrt(np.maximum(sq * sq - dot * dot, 0.0)))


def quotient_lift(w: np.ndarray) -> np.ndarray:
    """Principal square-root preimage of a batch under ``(z1**2, z2, ..., zn)``."""
    lifted = np.array(w, dtype=complex, copy=True)
    lifted[:, 0] = np.sqrt(lifted[:, 0])
    return lifted


def quotient_intrinsic_margin(w: np.ndarray) -> np.ndarray:
    total = np.abs(w[:, 0]) + _norm_sq(w[:, 1:])
    dot = np.abs(w[:, 0] + np.sum(w[:, 1:] ** 2, axis=1))
    gap = np.sqrt(np.maximum(total * total - dot * dot, 0.0))
    return np.minimum(1 - total, (1 - total) - gap)


def _require_int(value, name: str, minimum: int) -> int:
    try:
        valid = not isinstance(value, bool) and int(value) == value and int(value) >= minimum
    except (TypeError, ValueError):
        valid = False
    if not valid:
        raise UnsupportedDomainException("{} must be an integer >= {}, got {!r}".format(name, minimum, value))
    return int(value)


class DomainId(object):
    """Tagged descriptor of a domain family."""
    _tag: str = None
    _weights: Optional[Tuple[int, ...]] = None

    @property
    def tag(self) -> str:
        return self._tag

    @property
    def dim(self) -> int:
        """Number of complex coordinates of a point."""
        raise NotImplementedError

    def params(self) -> Dict[str, Any]:
        return {}

    @property
    def weights(self) -> Optional[np.ndarray]:
        """Weights of the quasi-balanced action, None when the domain is not balanced."""
        if self._weights is None:
            return None
        return np.asarray(self._weights, dtype=float)

    def points(self, p) -> Tuple[np.ndarray, bool]:
        return as_batch(p, self.dim)

    def margin(self, p):
        """Signed margin of a point or a batch of points."""
        arr, single = self.points(p)
        return unbatch(self._margin(arr), single)

    def _margin(self, arr: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def bounding_box(self) -> Tuple[float, ...]:
        return tuple([1.0] * self.dim)

    def scale(self, arr: np.ndarray, t: np.ndarray) -> np.ndarray:
        """Apply ``w -> (w_1 / t**k_1, ..., w_n / t**k_n)`` row by row."""
        return arr / np.asarray(t, dtype=float)[:, np.newaxis] ** self.weights[np.newaxis, :]

    def gauge(self, arr: np.ndarray) -> np.ndarray:
        """Minkowski functional on a batch; bisection unless a closed form exists."""
        return _minkowski_batch(self, arr, 1e-13)

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform samples by rejection from the bounding polydisc."""
        box = self.bounding_box()
        found: List[np.ndarray] = []
        total = 0
        chunk = max(1024, 4 * count)
        for _ in range(_REJECTION_ROUNDS):
            candidates = polydisc_uniform(rng, chunk, box)
            accepted = candidates[self._margin(candidates) > 0]
            found.append(accepted)
            total += accepted.shape[0]
            if total >= count:
                return np.concatenate(found)[:count]
        raise CartanQuotGenericException("rejection sampling of {!r} did not produce {} points".format(self, count))

    @classmethod
    def from_json(cls, json: Dict[str, Any]):
        """Create a domain descriptor from json.

        :param dict json: ``{"tag": str, "params": {...}}``
        :raises ~cartanquot.exceptions.ConfigurationException: unknown tag or malformed object
        :returns: The created :class:`~cartanquot.domains.DomainId`.
        """
        if not isinstance(json, dict) or "tag" not in json:
            raise ConfigurationException("a domain must be a json object with a 'tag' field")
        domain_type = _DOMAIN_TYPES.get(json["tag"])
        if domain_type is None:
            raise ConfigurationException("unknown domain tag {!r}".format(json["tag"]))
        params = json.get("params") or {}
        try:
            return domain_type(**params)
        except TypeError as error:
            raise ConfigurationException("bad parameters for {}: {}".format(json["tag"], error)) from error

    def to_json(self) -> Dict[str, Any]:
        """Get a dict ready to be json packed.

        :return: the json elements of the class.
        :rtype: `dict`
        """
        return {"tag": self._tag, "params": self.params()}

    def __eq__(self, other):
        if other is None or not isinstance(other, DomainId):
            return False
        return self._tag == other._tag and self.params() == other.params()

    def __hash__(self):
        return hash((self._tag, tuple(sorted(self.params().items()))))

    def __str__(self) -> str:
        params = ", ".join("{}={}".format(key, value) for key, value in sorted(self.params().items()))
        return "{}({})".format(self._tag, params)

    def __repr__(self) -> str:
        return "domains.{}".format(str(self))


class UnitDisc(DomainId):
    _tag = "UnitDisc"
    _weights = (1,)

    @property
    def dim(self) -> int:
        return 1

    def _margin(self, arr):
        return 1 - np.abs(arr[:, 0])

    def gauge(self, arr):
        return np.abs(arr[:, 0])


class Polydisc(DomainId):
    _tag = "Polydisc"

    def __init__(self, n: int):
        self.n = _require_int(n, "n", 1)
        self._weights = tuple([1] * self.n)

    @property
    def dim(self) -> int:
        return self.n

    def params(self):
        return {"n": self.n}

    def _margin(self, arr):
        return np.min(1 - np.abs(arr), axis=1)

    def gauge(self, arr):
        return np.max(np.abs(arr), axis=1)


class EuclideanBall(DomainId):
    _tag = "EuclideanBall"

    def __init__(self, n: int):
        self.n = _require_int(n, "n", 1)
        self._weights = tuple([1] * self.n)

    @property
    def dim(self) -> int:
        return self.n

    def params(self):
        return {"n": self.n}

    def _margin(self, arr):
        return 1 - _norm_sq(arr)

    def gauge(self, arr):
        return np.sqrt(_norm_sq(arr))

    def sample(self, count, rng):
        return ball_uniform(rng, count, self.n)


class Annulus(DomainId):
    """The annulus ``A(r, 1/r)``."""
    _tag = "Annulus"

    def __init__(self, r: float):
        r = float(r)
        if not 0 < r < 1:
            raise UnsupportedDomainException("annulus parameter r must lie in (0, 1), got {}".format(r))
        self.r = r

    @property
    def dim(self) -> int:
        return 1

    def params(self):
        return {"r": self.r}

    def _margin(self, arr):
        modulus = np.abs(arr[:, 0])
        return np.minimum(modulus - self.r, 1 / self.r - modulus)

    def bounding_box(self):
        return (1 / self.r,)

    def gauge(self, arr):
        raise UnsupportedDomainException("the annulus is not balanced")


class _MatrixDomain(DomainId):
    """Matrix ball ``{A : ||A|| < 1}`` stored in a coordinate chart."""
    rows: int = 0
    cols: int = 0

    def _chart_indices(self) -> Tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    @property
    def dim(self) -> int:
        return len(self._chart_indices()[0])

    def to_matrix(self, chart) -> np.ndarray:
        arr, single = as_batch(chart, self.dim, "chart point")
        return unbatch(self._to_matrix(arr), single)

    def from_matrix(self, matrices) -> np.ndarray:
        mats, single = as_matrix_batch(matrices, self.rows, self.cols)
        self._check_structure(mats)
        rows, cols = self._chart_indices()
        return unbatch(mats[:, rows, cols], single)

    def _to_matrix(self, arr: np.ndarray) -> np.ndarray:
        rows, cols = self._chart_indices()
        mats = np.zeros((arr.shape[0], self.rows, self.cols), dtype=complex)
        mats[:, rows, cols] = arr
        return mats

    def _check_structure(self, mats: np.ndarray):
        pass

    def points(self, p):
        arr = np.asarray(p, dtype=complex)
        if arr.ndim >= 2 and arr.shape[-2:] == (self.rows, self.cols):
            single = arr.ndim == 2
            return self.from_matrix(arr)[np.newaxis, :] if single else self.from_matrix(arr), single
        return as_batch(p, self.dim)

    def _margin(self, arr):
        return 1 - _largest_singular_value(self._to_matrix(arr))

    def gauge(self, arr):
        return _largest_singular_value(self._to_matrix(arr))


class CartanI(_MatrixDomain):
    """Type I: complex ``m x n`` matrices of operator norm below one."""
    _tag = "CartanI"

    def __init__(self, m: int, n: int):
        self.rows = _require_int(m, "m", 1)
        self.cols = _require_int(n, "n", 1)
        self._weights = tuple([1] * (self.rows * self.cols))

    def params(self):
        return {"m": self.rows, "n": self.cols}

    def _chart_indices(self):
        return np.indices((self.rows, self.cols)).reshape(2, -1)


class CartanII(_MatrixDomain):
    """Type II: skew-symmetric ``n x n`` matrices, charted by the strict upper triangle."""
    _tag = "CartanII"

    def __init__(self, n: int):
        self.rows = self.cols = _require_int(n, "n", 2)
        self._weights = tuple([1] * (self.rows * (self.rows - 1) // 2))

    def params(self):
        return {"n": self.rows}

    def _chart_indices(self):
        return np.triu_indices(self.rows, 1)

    def _to_matrix(self, arr):
        mats = super(CartanII, self)._to_matrix(arr)
        return mats - np.transpose(mats, (0, 2, 1))

    def _check_structure(self, mats):
        scale = max(1.0, float(np.max(np.abs(mats))))
        if np.max(np.abs(mats + np.transpose(mats, (0, 2, 1)))) > 1e-12 * scale:
            raise InvalidPointException("a CartanII point must be skew-symmetric")


class CartanIII(_MatrixDomain):
    """Type III: symmetric ``n x n`` matrices, charted by the upper triangle."""
    _tag = "CartanIII"

    def __init__(self, n: int):
        self.rows = self.cols = _require_int(n, "n", 1)
        self._weights = tuple([1] * (self.rows * (self.rows + 1) // 2))

    def params(self):
        return {"n": self.rows}

    def _chart_indices(self):
        return np.triu_indices(self.rows)

    def _to_matrix(self, arr):
        mats = super(CartanIII, self)._to_matrix(arr)
        strict = np.triu(mats, 1)
        return mats + np.transpose(strict, (0, 2, 1))

    def _check_structure(self, mats):
        scale = max(1.0, float(np.max(np.abs(mats))))
        if np.max(np.abs(mats - np.transpose(mats, (0, 2, 1)))) > 1e-12 * scale:
            raise InvalidPointException("a CartanIII point must be symmetric")


class LieBall(DomainId):
    """Type IV Cartan domain ``L_n``."""
    _tag = "LieBall"

    def __init__(self, n: int):
        self.n = _require_int(n, "n", 1)
        self._weights = tuple([1] * self.n)

    @property
    def dim(self):
        return self.n

    def params(self):
        return {"n": self.n}

    def _margin(self, arr):
        return lie_margin(arr)

    def gauge(self, arr):
        return lie_norm(arr)

    def sample(self, count, rng):
        found: List[np.ndarray] = []
        total = 0
        chunk = max(1024, 4 * count)
        for _ in range(_REJECTION_ROUNDS):
            candidates = ball_uniform(rng, chunk, self.n)
            accepted = candidates[lie_margin(candidates) > 0]
            found.append(accepted)
            total += accepted.shape[0]
            if total >= count:
                return np.concatenate(found)[:count]
        raise CartanQuotGenericException("rejection sampling of {!r} did not produce {} points".format(self, count))


class QuotientL(DomainId):
    """The quotient domain, image of ``L_n`` under ``(z1**2, z2, ..., zn)``."""
    _tag = "QuotientL"

    def __init__(self, n: int):
        self.n = _require_int(n, "n", 2)
        self._weights = tuple([2] + [1] * (self.n - 1))

    @property
    def dim(self):
        return self.n

    def params(self):
        return {"n": self.n}

    def _margin(self, arr):
        return lie_margin(quotient_lift(arr))

    def gauge(self, arr):
        return lie_norm(quotient_lift(arr))

    def sample(self, count, rng):
        # thinning by |z1|^2 cancels the jacobian of the squaring map
        lie = LieBall(self.n)
        found: List[np.ndarray] = []
        total = 0
        for _ in range(_REJECTION_ROUNDS):
            lifted = lie.sample(max(1024, 4 * count), rng)
            keep = rng.random(lifted.shape[0]) < np.abs(lifted[:, 0]) ** 2
            accepted = lifted[keep]
            accepted[:, 0] = accepted[:, 0] ** 2
            found.append(accepted)
            total += accepted.shape[0]
            if total >= count:
                return np.concatenate(found)[:count]
        raise CartanQuotGenericException("sampling of {!r} did not produce {} points".format(self, count))


class Ellipsoid(DomainId):
    """``{|w1| + |w2|^2 + ... + |wn|^2 < 1}``, image of the ball under ``(z1**2, z2, ..., zn)``."""
    _tag = "Ellipsoid"

    def __init__(self, n: int):
        self.n = _require_int(n, "n", 1)
        self._weights = tuple([2] + [1] * (self.n - 1))

    @property
    def dim(self):
        return self.n

    def params(self):
        return {"n": self.n}

    def _margin(self, arr):
        return 1 - (np.abs(arr[:, 0]) + _norm_sq(arr[:, 1:]))

    def gauge(self, arr):
        return np.sqrt(np.abs(arr[:, 0]) + _norm_sq(arr[:, 1:]))

    def sample(self, count, rng):
        found: List[np.ndarray] = []
        total = 0
        for _ in range(_REJECTION_ROUNDS):
            lifted = ball_uniform(rng, max(1024, 4 * count), self.n)
            keep = rng.random(lifted.shape[0]) < np.abs(lifted[:, 0]) ** 2
            accepted = lifted[keep]
            accepted[:, 0] = accepted[:, 0] ** 2
            found.append(accepted)
            total += accepted.shape[0]
            if total >= count:
                return np.concatenate(found)[:count]
        raise CartanQuotGenericException("sampling of {!r} did not produce {} points".format(self, count))


class SymBidisc(DomainId):
    """Symmetrized bidisc, ``{(l1 + l2, l1 l2) : l in D^2}``."""
    _tag = "SymBidisc"
    _weights = (1, 2)

    @property
    def dim(self):
        return 2

    def _margin(self, arr):
        first, second = quadratic_roots(arr[:, 0], arr[:, 1])
        return np.minimum(1 - np.abs(first), 1 - np.abs(second))

    def bounding_box(self):
        return (2.0, 1.0)


class Tetrablock(DomainId):
    """Tetrablock, image of the symmetric 2x2 matrix ball under ``(a11, a22, det)``."""
    _tag = "Tetrablock"
    _weights = (1, 1, 2)

    @property
    def dim(self):
        return 3

    def lift(self, arr: np.ndarray) -> np.ndarray:
        off = np.sqrt(arr[:, 0] * arr[:, 1] - arr[:, 2])
        mats = np.empty((arr.shape[0], 2, 2), dtype=complex)
        mats[:, 0, 0] = arr[:, 0]
        mats[:, 1, 1] = arr[:, 1]
        mats[:, 0, 1] = off
        mats[:, 1, 0] = off
        return mats

    def _margin(self, arr):
        return 1 - _largest_singular_value(self.lift(arr))

    def bounding_box(self):
        return (1.0, 1.0, 1.0)


class FDomain(DomainId):
    """Image of the 2x2 matrix ball under ``(a11, a22, det, a12 + a21)``."""
    _tag = "FDomain"
    _weights = (1, 1, 2, 1)

    @property
    def dim(self):
        return 4

    def lift(self, arr: np.ndarray) -> np.ndarray:
        upper, lower = quadratic_roots(arr[:, 3], arr[:, 0] * arr[:, 1] - arr[:, 2])
        mats = np.empty((arr.shape[0], 2, 2), dtype=complex)
        mats[:, 0, 0] = arr[:, 0]
        mats[:, 1, 1] = arr[:, 1]
        mats[:, 0, 1] = upper
        mats[:, 1, 0] = lower
        return mats

    def _margin(self, arr):
        return 1 - _largest_singular_value(self.lift(arr))

    def bounding_box(self):
        return (1.0, 1.0, 1.0, 2.0)


_DOMAIN_TYPES = {domain_type._tag: domain_type for domain_type in (
    UnitDisc, Polydisc, EuclideanBall, Annulus, CartanI, CartanII, CartanIII,
    LieBall, QuotientL, Ellipsoid, SymBidisc, Tetrablock, FDomain)}


def _verdicts(margin, single: bool, tol: float):
    if single:
        return MembershipVerdict.from_margin(float(margin), tol)
    return [MembershipVerdict.from_margin(float(value), tol) for value in margin]


def contains(d: DomainId, p, tol: float = DEFAULT_TOL) -> Union[MembershipVerdict, List[MembershipVerdict]]:
    """Classify a point (or each point of a batch) against a domain.

    :param d: the domain
    :type d: :class:`~cartanquot.domains.DomainId`
    :param p: a point, a matrix for the matrix domains, or a batch of them
    :param float tol: boundary tolerance on the margin
    :raises ~cartanquot.exceptions.InvalidPointException: shape mismatch or non finite coordinates
    :rtype: :class:`~cartanquot.domains.MembershipVerdict`
    """
    arr, single = d.points(p)
    return _verdicts(d._margin(arr), single, tol)


def margins(d: DomainId, p) -> np.ndarray:
    """Raw margins, the vectorised counterpart of :func:`contains`."""
    return d.margin(p)


def cartan1_2x2_margin(matrices):
    """``min(2 - ||A||_F^2, 1 + |det A|^2 - ||A||_F^2)`` on a 2x2 matrix or a stack."""
    mats, single = as_matrix_batch(matrices, 2, 2)
    frob = np.sum(np.abs(mats) ** 2, axis=(1, 2))
    det = np.abs(mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0])
    return unbatch(np.minimum(2 - frob, 1 + det * det - frob), single)


def cartan1_contains_2x2(matrix, tol: float = DEFAULT_TOL) -> MembershipVerdict:
    """Membership in the 2x2 matrix ball through the two scalar inequalities.

    ``2 > sum |a_ij|^2`` and ``1 + |det A|^2 > sum |a_ij|^2`` are the sum and
    the product of ``1 - s_i^2`` over the singular values, so the verdict
    agrees in sign with ``contains(CartanI(2, 2), A)``.
    """
    mats, single = as_matrix_batch(matrix, 2, 2)
    return _verdicts(cartan1_2x2_margin(mats), single, tol)


def lie_ball_contains_eq1(z, tol: float = DEFAULT_TOL):
    """Lie ball membership through ``sqrt(||z||^4 - |z.z|^2) < 1 - ||z||^2``."""
    arr, single = as_batch(z, np.shape(z)[-1])
    return _verdicts(lie_eq1_margin(arr), single, tol)


def quotient_contains_intrinsic(w, tol: float = DEFAULT_TOL):
    """Membership in the quotient domain without lifting.

    With ``s = |w1| + sum_{j>=2} |wj|^2`` and ``q = w1 + sum_{j>=2} wj^2``,
    ``w`` is inside iff ``s < 1`` and ``sqrt(s^2 - |q|^2) < 1 - s``.
    """
    arr, single = as_batch(w, np.shape(w)[-1])
    if arr.shape[1] < 2:
        raise InvalidPointException("quotient points have at least 2 coordinates")
    return _verdicts(quotient_intrinsic_margin(arr), single, tol)


def _minkowski_batch(d: DomainId, arr: np.ndarray, tol: float) -> np.ndarray:
    if d.weights is None:
        raise UnsupportedDomainException("{!r} has no Minkowski functional".format(d))
    count = arr.shape[0]
    active = np.any(arr != 0, axis=1)
    low = np.zeros(count)
    high = np.ones(count)
    for _ in range(2000):
        outside = active & (d._margin(d.scale(arr, high)) <= 0)
        if not outside.any():
            break
        low = np.where(outside, high, low)
        high = np.where(outside, 2 * high, high)
    iterations = 0
    while np.any(active & (high - low > tol)) and iterations < 200:
        middle = (low + high) / 2
        inside = d._margin(d.scale(arr, middle)) > 0
        high = np.where(active & inside, middle, high)
        low = np.where(active & ~inside, middle, low)
        iterations += 1
    LOGGER.debug("minkowski bisection on %d points took %d iterations", count, iterations)
    return np.where(active, high, 0.0)


def minkowski(d: DomainId, w, tol: float = 1e-12):
    """Minkowski functional ``M(w) = inf{t > 0 : delta_{1/t} w in d}`` by bisection.

    ``delta_t`` is the weighted action of the domain (weights ``(2, 1, ..., 1)``
    for the quotient domain and the ellipsoid, all ones for balanced domains).
    The returned value is an upper bound within ``tol`` of ``M(w)``, so the
    point scaled by the returned value is inside.

    :param d: a quasi-balanced domain
    :param w: a point or a batch of points
    :param float tol: absolute accuracy, must be positive
    :raises ~cartanquot.exceptions.UnsupportedDomainException: the domain is not balanced
    :rtype: float
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    arr, single = d.points(w)
    return unbatch(_minkowski_batch(d, arr, tol), single)


def shilov_sample(d: DomainId, count: int, seed: int) -> np.ndarray:
    """Points of the Shilov boundary of the Lie ball or of its quotient.

    Lie ball points are ``exp(i theta) x`` with ``x`` uniform on the real
    unit sphere and ``theta`` stratified uniform in ``[0, pi)``; the quotient
    points are their images under ``(z1**2, z2, ..., zn)``.
    """
    if not isinstance(d, (LieBall, QuotientL)):
        raise UnsupportedDomainException("Shilov sampling is available for LieBall and QuotientL, not {!r}".format(d))
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    gauss = rng.standard_normal((count, d.n))
    sphere = gauss / np.linalg.norm(gauss, axis=1, keepdims=True)
    theta = np.pi * (np.arange(count) + rng.random(count)) / count
    points = np.exp(1j * theta)[:, np.newaxis] * sphere
    if isinstance(d, QuotientL):
        points[:, 0] = points[:, 0] ** 2
    return points


def bounding_box(d: DomainId) -> Tuple[float, ...]:
    """Radii ``R_j`` with ``|p_j| <= R_j`` on the whole domain."""
    return d.bounding_box()


def complex_dim(d: DomainId) -> int:
    return d.dim


def sample_uniform(d: DomainId, count: int, rng: Union[int, np.random.Generator]) -> np.ndarray:
    """Uniform samples of a domain (in its chart for the matrix domains)."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return d.sample(count, rng)


def boundary_sample(d: DomainId, count: int, rng: Union[int, np.random.Generator], shrink: float = 1e-8) -> np.ndarray:
    """Interior points close to the boundary of a quasi-balanced domain.

    Uniform samples are pushed along their weighted orbit to the gauge level
    ``1 / (1 + shrink)``.
    """
    points = sample_uniform(d, count, rng)
    return d.scale(points, d.gauge(points) * (1 + shrink))


def mc_volume(d: DomainId, samples: int, seed: int, chunk: int = 10 ** 6) -> Tuple[float, float]:
    """Monte-Carlo volume of a domain with its binomial standard error.

    Points are drawn uniformly in the bounding polydisc of
    :func:`bounding_box`, whose volume is ``prod(pi R_j^2)``.

    :param d: the domain
    :param int samples: number of draws, at least 10**4
    :param int seed: seed of the generator
    :returns: ``(estimate, stderr)``
    """
    if samples < 10 ** 4:
        raise ValueError("mc_volume needs at least 10**4 samples, got {}".format(samples))
    box = d.bounding_box()
    box_volume = float(np.prod([np.pi * radius * radius for radius in box]))
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        hits += int(np.count_nonzero(d._margin(polydisc_uniform(rng, size, box)) > 0))
        remaining -= size
    ratio = hits / samples
    LOGGER.debug("mc_volume %r: %d hits over %d samples", d, hits, samples)
    return box_volume * ratio, box_volume * float(np.sqrt(ratio * (1 - ratio) / samples))
