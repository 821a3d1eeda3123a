"""Catalog of the 2-proper holomorphic maps.

Each map knows its formula, its closed-form derivative, how to solve a fiber
and its non trivial deck involution. Points are given in the map's source
coordinates; for the matrix maps these are listed in the class docstrings.
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

from typing import Any, Callable, Dict, List, Optional, Tuple
import logging

import numpy as np

from . import domains
from ._util import as_batch, complex_from_json, complex_to_json, quadratic_roots, unbatch
from .exceptions import (ConfigurationException, InconsistentMultiplicityException, OutOfImageException,
                         PoleException, UnsupportedMapException)

__all__ = ['MapId', 'DiscSquare', 'AnnulusSquare', 'Joukowski', 'BidiscSplit', 'BidiscSym', 'BallEllipsoid',
           'TetrablockPhi', 'FMapPhi4', 'LambdaN', 'NeilMap', 'Fiber', 'CRITICAL_MERGE_DISTANCE',
           'catalog', 'eval_map', 'jacobian_matrix', 'jacobian_det', 'finite_difference_jacobian', 'fiber',
           'deck', 'deck_involution_from_fibers', 'locus_margin', 'locus_samples', 'image_contains',
           'multiplicity_probe', 'neil_variety_residual']

LOGGER = logging.getLogger(__name__)

CRITICAL_MERGE_DISTANCE = 1e-9


def _unimodular(omega) -> complex:
    omega = complex(omega)
    if abs(abs(omega) - 1) > 1e-12:
        raise UnsupportedMapException("omega must be unimodular, got |omega| = {}".format(abs(omega)))
    return omega


def _annulus_r(r) -> float:
    r = float(r)
    if not 0 < r < 1:
        raise UnsupportedMapException("annulus parameter r must lie in (0, 1), got {}".format(r))
    return r


def _dimension(n, minimum: int = 2) -> int:
    if isinstance(n, bool) or int(n) != n or int(n) < minimum:
        raise UnsupportedMapException("n must be an integer >= {}, got {!r}".format(minimum, n))
    return int(n)


class MapId(object):
    """Tagged descriptor of a catalogued proper holomorphic map.

    Subclasses implement the batch primitives ``_eval``, ``_jacobian``,
    ``_fiber_pair`` and ``_deck`` on arrays of shape ``(N, source_dim)``.
    """
    _tag: str = None
    source_dim: int = 0
    target_dim: int = 0
    linear_deck: bool = True

    def source_domain(self) -> domains.DomainId:
        raise NotImplementedError

    def target_domain(self) -> Optional[domains.DomainId]:
        """Domain tag of the image, None when the image has no descriptor of its own."""
        return None

    def to_source_domain(self, arr: np.ndarray) -> np.ndarray:
        """Map coordinates to the coordinates used by :meth:`source_domain`."""
        return arr

    def from_source_domain(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def source_margin(self, arr: np.ndarray) -> np.ndarray:
        return self.source_domain()._margin(self.to_source_domain(arr))

    def sample_source(self, count: int, rng: np.random.Generator) -> np.ndarray:
        return self.from_source_domain(self.source_domain().sample(count, rng))

    def _eval(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _jacobian(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _jacobian_det(self, z: np.ndarray) -> np.ndarray:
        return np.linalg.det(self._jacobian(z))

    def _fiber_pair(self, w: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def _deck(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _locus_margin(self, z: np.ndarray) -> np.ndarray:
        return np.abs(self._jacobian_det(z))

    def _image_residual(self, w: np.ndarray) -> np.ndarray:
        return np.zeros(w.shape[0])

    def params(self) -> Dict[str, Any]:
        return {}

    @classmethod
    def from_json(cls, json: Dict[str, Any]):
        """Create a map descriptor from json.

        :param dict json: ``{"tag": str, "n": int?, "omega": [re, im]?, "r": float?, "source": str?}``
        :returns: The created :class:`~cartanquot.proper_maps.MapId`.
        """
        if not isinstance(json, dict) or "tag" not in json:
            raise ConfigurationException("a map must be a json object with a 'tag' field")
        tag = json["tag"]
        omega = complex_from_json(json.get("omega", [1.0, 0.0]))
        if tag == DiscSquare._tag:
            return DiscSquare()
        elif tag == AnnulusSquare._tag:
            return AnnulusSquare(json.get("r", 0.5))
        elif tag == Joukowski._tag:
            return Joukowski(json.get("r", 0.5), omega)
        elif tag == BidiscSplit._tag:
            return BidiscSplit()
        elif tag == BidiscSym._tag:
            return BidiscSym(omega)
        elif tag == BallEllipsoid._tag:
            return BallEllipsoid(json.get("n", 2))
        elif tag == TetrablockPhi._tag:
            return TetrablockPhi()
        elif tag == FMapPhi4._tag:
            return FMapPhi4()
        elif tag == LambdaN._tag:
            return LambdaN(json.get("n", 2))
        elif tag == NeilMap._tag:
            return NeilMap(json.get("source", "Bidisc"))
        raise ConfigurationException("unknown map tag {!r}".format(tag))

    def to_json(self) -> Dict[str, Any]:
        json = {"tag": self._tag}
        json.update(self.params())
        if "omega" in json:
            json["omega"] = complex_to_json(json["omega"])
        return json

    def __eq__(self, other):
        if other is None or not isinstance(other, MapId):
            return False
        return self._tag == other._tag and self.params() == other.params()

    def __hash__(self):
        return hash((self._tag, tuple(sorted(self.params().items()))))

    def __str__(self) -> str:
        params = ", ".join("{}={}".format(key, value) for key, value in sorted(self.params().items()))
        return "{}({})".format(self._tag, params)

    def __repr__(self) -> str:
        return "proper_maps.{}".format(str(self))


class DiscSquare(MapId):
    """``z -> z**2`` on the unit disc."""
    _tag = "DiscSquare"
    source_dim = target_dim = 1

    def source_domain(self):
        return domains.UnitDisc()

    def target_domain(self):
        return domains.UnitDisc()

    def _eval(self, z):
        return z ** 2

    def _jacobian(self, z):
        return (2 * z)[:, :, np.newaxis]

    def _jacobian_det(self, z):
        return 2 * z[:, 0]

    def _fiber_pair(self, w):
        root = np.sqrt(w)
        return root, -root

    def _deck(self, z):
        return -z


class AnnulusSquare(DiscSquare):
    """``z -> z**2`` from ``A(r, 1/r)`` onto ``A(r**2, 1/r**2)``."""
    _tag = "AnnulusSquare"
    linear_deck = False

    def __init__(self, r: float):
        self.r = _annulus_r(r)

    def params(self):
        return {"r": self.r}

    def source_domain(self):
        return domains.Annulus(self.r)

    def target_domain(self):
        return domains.Annulus(self.r ** 2)


class Joukowski(MapId):
    """``z -> z + omega / z`` on ``A(r, 1/r)``, deck involution ``z -> omega / z``."""
    _tag = "Joukowski"
    source_dim = target_dim = 1
    linear_deck = False

    def __init__(self, r: float, omega: complex = 1):
        self.r = _annulus_r(r)
        self.omega = _unimodular(omega)

    def params(self):
        return {"r": self.r, "omega": self.omega}

    def source_domain(self):
        return domains.Annulus(self.r)

    def _check_pole(self, z):
        if np.any(z == 0):
            raise PoleException("z + omega / z has a pole at 0")

    def _eval(self, z):
        self._check_pole(z)
        return z + self.omega / z

    def _jacobian(self, z):
        self._check_pole(z)
        return (1 - self.omega / z ** 2)[:, :, np.newaxis]

    def _jacobian_det(self, z):
        self._check_pole(z)
        return 1 - self.omega / z[:, 0] ** 2

    def _fiber_pair(self, w):
        first, second = quadratic_roots(w[:, 0], self.omega)
        return first[:, np.newaxis], second[:, np.newaxis]

    def _deck(self, z):
        self._check_pole(z)
        return self.omega / z

    def fixed_points(self) -> np.ndarray:
        root = np.sqrt(self.omega)
        return np.array([[root], [-root]])


class BidiscSplit(MapId):
    """``(z1, z2) -> (z1**2, z2)`` on the bidisc.

    Conjugate by the coordinate swap to ``(z1, z2) -> (z1, z2**2)`` with deck
    ``diag(1, -1)``; this class squares the first coordinate and its deck is
    ``diag(-1, 1)``.
    """
    _tag = "BidiscSplit"
    source_dim = target_dim = 2

    def source_domain(self):
        return domains.Polydisc(2)

    def target_domain(self):
        return domains.Polydisc(2)

    def _eval(self, z):
        return np.stack([z[:, 0] ** 2, z[:, 1]], axis=1)

    def _jacobian(self, z):
        jac = np.zeros((z.shape[0], 2, 2), dtype=complex)
        jac[:, 0, 0] = 2 * z[:, 0]
        jac[:, 1, 1] = 1
        return jac

    def _jacobian_det(self, z):
        return 2 * z[:, 0]

    def _fiber_pair(self, w):
        root = np.sqrt(w[:, 0])
        return np.stack([root, w[:, 1]], axis=1), np.stack([-root, w[:, 1]], axis=1)

    def _deck(self, z):
        return np.stack([-z[:, 0], z[:, 1]], axis=1)


class BidiscSym(MapId):
    """``(z1, z2) -> (conj(omega) z1 + omega z2, z1 z2)`` onto the symmetrized bidisc.

    The deck involution is ``(z1, z2) -> (omega**2 z2, conj(omega)**2 z1)``,
    fixing the line ``{(omega t, conj(omega) t)}`` where the jacobian
    determinant ``conj(omega) z1 - omega z2`` vanishes.
    """
    _tag = "BidiscSym"
    source_dim = target_dim = 2

    def __init__(self, omega: complex = 1):
        self.omega = _unimodular(omega)

    def params(self):
        return {"omega": self.omega}

    def source_domain(self):
        return domains.Polydisc(2)

    def target_domain(self):
        return domains.SymBidisc()

    def _eval(self, z):
        return np.stack([np.conj(self.omega) * z[:, 0] + self.omega * z[:, 1], z[:, 0] * z[:, 1]], axis=1)

    def _jacobian(self, z):
        jac = np.empty((z.shape[0], 2, 2), dtype=complex)
        jac[:, 0, 0] = np.conj(self.omega)
        jac[:, 0, 1] = self.omega
        jac[:, 1, 0] = z[:, 1]
        jac[:, 1, 1] = z[:, 0]
        return jac

    def _jacobian_det(self, z):
        return np.conj(self.omega) * z[:, 0] - self.omega * z[:, 1]

    def _fiber_pair(self, w):
        first, second = quadratic_roots(w[:, 0], w[:, 1])
        omega, conj = self.omega, np.conj(self.omega)
        return np.stack([omega * first, conj * second], axis=1), np.stack([omega * second, conj * first], axis=1)

    def _deck(self, z):
        return np.stack([self.omega ** 2 * z[:, 1], np.conj(self.omega) ** 2 * z[:, 0]], axis=1)


class LambdaN(MapId):
    """``(z1, z2, ..., zn) -> (z1**2, z2, ..., zn)`` from the Lie ball onto its quotient."""
    _tag = "LambdaN"

    def __init__(self, n: int):
        self.n = _dimension(n)
        self.source_dim = self.target_dim = self.n

    def params(self):
        return {"n": self.n}

    def source_domain(self):
        return domains.LieBall(self.n)

    def target_domain(self):
        return domains.QuotientL(self.n)

    def _eval(self, z):
        image = np.array(z, dtype=complex, copy=True)
        image[:, 0] = z[:, 0] ** 2
        return image

    def _jacobian(self, z):
        jac = np.zeros((z.shape[0], self.n, self.n), dtype=complex)
        jac[:, np.arange(self.n), np.arange(self.n)] = 1
        jac[:, 0, 0] = 2 * z[:, 0]
        return jac

    def _jacobian_det(self, z):
        return 2 * z[:, 0]

    def _fiber_pair(self, w):
        first = np.array(w, dtype=complex, copy=True)
        first[:, 0] = np.sqrt(w[:, 0])
        second = first.copy()
        second[:, 0] = -first[:, 0]
        return first, second

    def _deck(self, z):
        image = np.array(z, dtype=complex, copy=True)
        image[:, 0] = -z[:, 0]
        return image


class BallEllipsoid(LambdaN):
    """``(z1, z2, ..., zn) -> (z1**2, z2, ..., zn)`` from the ball onto the ellipsoid."""
    _tag = "BallEllipsoid"

    def source_domain(self):
        return domains.EuclideanBall(self.n)

    def target_domain(self):
        return domains.Ellipsoid(self.n)


class TetrablockPhi(MapId):
    """``(a11, a22, a) -> (a11, a22, a11 a22 - a**2)`` onto the tetrablock.

    Source coordinates ``(a11, a22, a)`` stand for the symmetric matrix
    ``[[a11, a], [a, a22]]``.
    """
    _tag = "TetrablockPhi"
    source_dim = target_dim = 3

    def source_domain(self):
        return domains.CartanIII(2)

    def target_domain(self):
        return domains.Tetrablock()

    def to_source_domain(self, arr):
        return arr[:, [0, 2, 1]]

    def from_source_domain(self, arr):
        return arr[:, [0, 2, 1]]

    def _eval(self, z):
        return np.stack([z[:, 0], z[:, 1], z[:, 0] * z[:, 1] - z[:, 2] ** 2], axis=1)

    def _jacobian(self, z):
        jac = np.zeros((z.shape[0], 3, 3), dtype=complex)
        jac[:, 0, 0] = 1
        jac[:, 1, 1] = 1
        jac[:, 2, 0] = z[:, 1]
        jac[:, 2, 1] = z[:, 0]
        jac[:, 2, 2] = -2 * z[:, 2]
        return jac

    def _jacobian_det(self, z):
        return -2 * z[:, 2]

    def _fiber_pair(self, w):
        off = np.sqrt(w[:, 0] * w[:, 1] - w[:, 2])
        return np.stack([w[:, 0], w[:, 1], off], axis=1), np.stack([w[:, 0], w[:, 1], -off], axis=1)

    def _deck(self, z):
        return np.stack([z[:, 0], z[:, 1], -z[:, 2]], axis=1)


class FMapPhi4(MapId):
    """``(a11, a12, a21, a22) -> (a11, a22, a11 a22 - a12 a21, a12 + a21)``.

    Source coordinates are the entries of a 2x2 matrix in row-major order;
    the deck involution is the transposition and the jacobian determinant
    is ``a12 - a21``.
    """
    _tag = "FMapPhi4"
    source_dim = target_dim = 4

    def source_domain(self):
        return domains.CartanI(2, 2)

    def target_domain(self):
        return domains.FDomain()

    def _eval(self, z):
        return np.stack([z[:, 0], z[:, 3], z[:, 0] * z[:, 3] - z[:, 1] * z[:, 2], z[:, 1] + z[:, 2]], axis=1)

    def _jacobian(self, z):
        jac = np.zeros((z.shape[0], 4, 4), dtype=complex)
        jac[:, 0, 0] = 1
        jac[:, 1, 3] = 1
        jac[:, 2, 0] = z[:, 3]
        jac[:, 2, 1] = -z[:, 2]
        jac[:, 2, 2] = -z[:, 1]
        jac[:, 2, 3] = z[:, 0]
        jac[:, 3, 1] = 1
        jac[:, 3, 2] = 1
        return jac

    def _jacobian_det(self, z):
        return z[:, 1] - z[:, 2]

    def _fiber_pair(self, w):
        upper, lower = quadratic_roots(w[:, 3], w[:, 0] * w[:, 1] - w[:, 2])
        return (np.stack([w[:, 0], upper, lower, w[:, 1]], axis=1),
                np.stack([w[:, 0], lower, upper, w[:, 1]], axis=1))

    def _deck(self, z):
        return z[:, [0, 2, 1, 3]]


class NeilMap(MapId):
    """``(z1, z2) -> (z1**2, z2**2, z1 z2)`` onto a piece of ``{w1 w2 = w3**2}``.

    The map is not equidimensional: its locus margin is the Gram volume
    ``sqrt(det(J^* J))`` of the 3x2 derivative, zero only at the origin.
    """
    _tag = "NeilMap"
    source_dim = 2
    target_dim = 3

    def __init__(self, source: str = "Bidisc"):
        if source not in ("Ball2", "Bidisc"):
            raise UnsupportedMapException("NeilMap source must be Ball2 or Bidisc, got {!r}".format(source))
        self.source = source

    def params(self):
        return {"source": self.source}

    def source_domain(self):
        return domains.EuclideanBall(2) if self.source == "Ball2" else domains.Polydisc(2)

    def _eval(self, z):
        return np.stack([z[:, 0] ** 2, z[:, 1] ** 2, z[:, 0] * z[:, 1]], axis=1)

    def _jacobian(self, z):
        jac = np.zeros((z.shape[0], 3, 2), dtype=complex)
        jac[:, 0, 0] = 2 * z[:, 0]
        jac[:, 1, 1] = 2 * z[:, 1]
        jac[:, 2, 0] = z[:, 1]
        jac[:, 2, 1] = z[:, 0]
        return jac

    def _jacobian_det(self, z):
        raise UnsupportedMapException("NeilMap is not equidimensional, use locus_margin instead")

    def _locus_margin(self, z):
        jac = self._jacobian(z)
        gram = np.einsum("nji,njk->nik", np.conj(jac), jac)
        return np.sqrt(np.abs(np.linalg.det(gram)))

    def _image_residual(self, w):
        scale = np.maximum(1.0, np.max(np.abs(w), axis=1) ** 2)
        return np.abs(w[:, 0] * w[:, 1] - w[:, 2] ** 2) / scale

    def _fiber_pair(self, w):
        first = np.sqrt(w[:, 0])
        safe = np.where(np.abs(first) > 1e-150, first, 1)
        second = np.where(np.abs(first) > 1e-150, w[:, 2] / safe, np.sqrt(w[:, 1]))
        point = np.stack([first, second], axis=1)
        return point, -point

    def _deck(self, z):
        return -z


def catalog() -> List[MapId]:
    """One representative of every catalogued map."""
    omega = np.exp(0.7j)
    return [DiscSquare(), AnnulusSquare(0.5), Joukowski(0.5, 1), Joukowski(0.5, omega), BidiscSplit(),
            BidiscSym(1), BidiscSym(omega), BallEllipsoid(3), TetrablockPhi(), FMapPhi4(),
            LambdaN(2), LambdaN(3), LambdaN(5), NeilMap("Ball2"), NeilMap("Bidisc")]


class Fiber(object):
    """Preimages of a target point."""

    def __init__(self, preimages: List[np.ndarray], is_critical: bool):
        self.preimages = preimages
        self.is_critical = is_critical

    def __len__(self) -> int:
        return len(self.preimages)

    def to_json(self) -> Dict[str, Any]:
        return {"preimages": [[complex_to_json(value) for value in point] for point in self.preimages],
                "isCritical": self.is_critical}

    def __str__(self) -> str:
        return "fiber of {} point(s){}".format(len(self.preimages), ", critical" if self.is_critical else "")

    def __repr__(self) -> str:
        return "proper_maps.Fiber(preimages: {}, is_critical: {})".format(self.preimages, self.is_critical)


def eval_map(m: MapId, p, check: bool = False):
    """Evaluate a catalogued map.

    :param m: the map
    :param p: a source point or a batch of source points
    :param bool check: verify first that the points lie in the source domain
    :raises ~cartanquot.exceptions.PoleException: Joukowski map at 0
    :raises ~cartanquot.exceptions.OutOfImageException: ``check`` is set and a point is outside the source
    """
    arr, single = as_batch(p, m.source_dim)
    if check:
        margin = m.source_margin(arr)
        if np.any(margin <= 0):
            raise OutOfImageException("point outside the source domain of {!r}".format(m), float(np.min(margin)))
    return unbatch(m._eval(arr), single)


def jacobian_matrix(m: MapId, p):
    arr, single = as_batch(p, m.source_dim)
    return unbatch(m._jacobian(arr), single)


def jacobian_det(m: MapId, p):
    """Closed-form determinant of the derivative, in the source coordinate order of ``m``."""
    arr, single = as_batch(p, m.source_dim)
    return unbatch(m._jacobian_det(arr), single)


def finite_difference_jacobian(m: MapId, p, step: float = 1e-6):
    """Central differences along the real coordinate directions.

    The maps are holomorphic, so the real directional derivative along ``e_j``
    is the complex partial derivative.
    """
    arr, single = as_batch(p, m.source_dim)
    columns = []
    for index in range(m.source_dim):
        shift = np.zeros(m.source_dim, dtype=complex)
        shift[index] = step
        columns.append((m._eval(arr + shift) - m._eval(arr - shift)) / (2 * step))
    return unbatch(np.stack(columns, axis=2), single)


def _merge(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    return np.max(np.abs(first - second), axis=1) < CRITICAL_MERGE_DISTANCE


def fiber(m: MapId, target, tol: float = 1e-10) -> Fiber:
    """All preimages of a target point.

    :param m: the map
    :param target: a point of the image domain
    :param float tol: slack allowed on the source margin of the preimages
    :raises ~cartanquot.exceptions.OutOfImageException: the target is not in the image,
      the exception carries the source margin of the lifted point
    :rtype: :class:`~cartanquot.proper_maps.Fiber`
    """
    arr, _ = as_batch(target, m.target_dim, "target")
    if arr.shape[0] != 1:
        raise UnsupportedMapException("fiber takes a single target point")
    residual = float(m._image_residual(arr)[0])
    if residual > tol:
        raise OutOfImageException("target is off the image variety of {!r}".format(m), -residual)
    first, second = m._fiber_pair(arr)
    margin = float(np.max([m.source_margin(first)[0], m.source_margin(second)[0]]))
    if margin < -tol:
        raise OutOfImageException("target is outside the image of {!r} (margin {:.3g})".format(m, margin), margin)
    if _merge(first, second)[0]:
        distance = float(np.max(np.abs(first[0] - second[0])))
        if distance > 0:
            LOGGER.warning("fiber of %r: preimages %.3g apart merged into a critical point", m, distance)
        return Fiber([first[0]], True)
    return Fiber([first[0], second[0]], False)


def image_contains(m: MapId, w, tol: float = domains.DEFAULT_TOL):
    """Membership in the image of a map by lifting through the fiber."""
    arr, single = as_batch(w, m.target_dim)
    first, second = m._fiber_pair(arr)
    margin = np.maximum(m.source_margin(first), m.source_margin(second))
    margin = np.where(m._image_residual(arr) > 1e-10, -m._image_residual(arr), margin)
    if single:
        return domains.MembershipVerdict.from_margin(float(margin[0]), tol)
    return [domains.MembershipVerdict.from_margin(float(value), tol) for value in margin]


def deck(m: MapId) -> List[Callable]:
    """The deck group ``{id, g}`` as point transformations."""

    def identity(p):
        arr, single = as_batch(p, m.source_dim)
        return unbatch(arr.copy(), single)

    def involution(p):
        arr, single = as_batch(p, m.source_dim)
        return unbatch(m._deck(arr), single)

    involution.__name__ = "deck_{}".format(m._tag)
    return [identity, involution]


def deck_involution_from_fibers(m: MapId, p):
    """The other point of the fiber through ``p``, or ``p`` itself on the locus."""
    arr, single = as_batch(p, m.source_dim)
    first, second = m._fiber_pair(m._eval(arr))
    use_first = np.max(np.abs(first - arr), axis=1) >= np.max(np.abs(second - arr), axis=1)
    other = np.where(use_first[:, np.newaxis], first, second)
    on_locus = _merge(first, second)
    return unbatch(np.where(on_locus[:, np.newaxis], arr, other), single)


def locus_margin(m: MapId, p):
    """``|det m'(p)|``, zero exactly on the locus set (Gram volume for NeilMap)."""
    arr, single = as_batch(p, m.source_dim)
    return unbatch(m._locus_margin(arr), single)


def locus_samples(m: MapId, count: int, rng: np.random.Generator) -> np.ndarray:
    """Source points on the fixed set of the deck involution."""
    if isinstance(m, Joukowski):
        fixed = m.fixed_points()
        return fixed[rng.integers(0, 2, count)]
    if isinstance(m, NeilMap):
        return np.zeros((count, 2), dtype=complex)
    if not m.linear_deck:
        return np.zeros((0, m.source_dim), dtype=complex)
    points = m.sample_source(count, rng)
    return (points + m._deck(points)) / 2


def multiplicity_probe(m: MapId, samples: int, seed: int) -> int:
    """Observed cardinality of the regular fibers.

    Random source points are pushed forward, their fibers are solved and the
    distinct preimages lying in the source domain are counted.

    :raises ~cartanquot.exceptions.InconsistentMultiplicityException: the count varies
    """
    if samples < 100:
        raise ValueError("multiplicity_probe needs at least 100 samples")
    rng = np.random.default_rng(seed)
    points = m.sample_source(samples, rng)
    points = points[m._locus_margin(points) > 1e-6]
    targets = m._eval(points)
    first, second = m._fiber_pair(targets)
    counts = np.zeros(points.shape[0], dtype=int)
    for candidate in (first, second):
        valid = (m.source_margin(candidate) > -1e-10) & (np.max(np.abs(m._eval(candidate) - targets), axis=1) < 1e-10)
        counts += valid.astype(int)
    counts -= (_merge(first, second) & (counts == 2)).astype(int)
    observed = sorted(set(int(value) for value in counts))
    LOGGER.debug("multiplicity_probe %r: cardinalities %s over %d regular targets", m, observed, counts.size)
    if len(observed) != 1:
        raise InconsistentMultiplicityException("fiber cardinality of {!r} is not constant: {}".format(m, observed),
                                                observed)
    return observed[0]


def neil_variety_residual(w):
    """``w1 w2 - w3**2``, zero on the image of the Neil map."""
    arr, single = as_batch(w, 3)
    return unbatch(arr[:, 0] * arr[:, 1] - arr[:, 2] ** 2, single)
