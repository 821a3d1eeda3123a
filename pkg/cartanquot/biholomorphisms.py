"""Explicit biholomorphisms of the low dimensional Lie balls and their quotients.

``L2toBidisc``, ``L3toR3`` and ``L4toR1`` send ``L_2``, ``L_3``, ``L_4`` onto
the bidisc, the symmetric and the full 2x2 matrix balls; ``LL2toG2``,
``LL3toE`` and ``LL4toF`` send the quotients onto the symmetrized bidisc, the
tetrablock and ``FDomain``. The matrix valued maps return 2x2 matrices.
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

from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from . import domains, proper_maps
from ._util import as_batch, as_matrix_batch, unbatch
from .exceptions import ConfigurationException, UnsupportedMapException

__all__ = ['BihId', 'BIH_TAGS', 'bih_eval', 'bih_inverse', 'source_domain', 'target_domain',
           'permutation', 'isomorphism_residual', 'commuting_square_residual', 'deck_transport_residual',
           'transported_margins']

BIH_TAGS = ("L2toBidisc", "L3toR3", "L4toR1", "LL2toG2", "LL3toE", "LL4toF")


class BihId(object):
    """One of the catalogued biholomorphisms, or its inverse."""

    def __init__(self, tag: str, inverse: bool = False):
        if tag not in BIH_TAGS:
            raise UnsupportedMapException("unknown biholomorphism {!r}".format(tag))
        self.tag = tag
        self.inverse = bool(inverse)

    @classmethod
    def from_json(cls, json: Dict[str, Any]):
        if not isinstance(json, dict) or "tag" not in json:
            raise ConfigurationException("a biholomorphism must be a json object with a 'tag' field")
        if json["tag"] not in BIH_TAGS:
            raise ConfigurationException("unknown biholomorphism {!r}".format(json["tag"]))
        return cls(json["tag"], json.get("inverse", False))

    def to_json(self) -> Dict[str, Any]:
        return {"tag": self.tag, "inverse": self.inverse}

    def __eq__(self, other):
        if other is None or not isinstance(other, BihId):
            return False
        return self.tag == other.tag and self.inverse == other.inverse

    def __hash__(self):
        return hash((self.tag, self.inverse))

    def __repr__(self) -> str:
        return "biholomorphisms.BihId(tag: {}, inverse: {})".format(self.tag, self.inverse)


def _matrices(first, second, third, fourth) -> np.ndarray:
    mats = np.empty((first.shape[0], 2, 2), dtype=complex)
    mats[:, 0, 0] = first
    mats[:, 0, 1] = second
    mats[:, 1, 0] = third
    mats[:, 1, 1] = fourth
    return mats


def _l2_to_bidisc(z):
    return np.stack([z[:, 0] + 1j * z[:, 1], -z[:, 0] + 1j * z[:, 1]], axis=1)


def _bidisc_to_l2(q):
    return np.stack([(q[:, 0] - q[:, 1]) / 2, (q[:, 0] + q[:, 1]) / 2j], axis=1)


def _l3_to_r3(z):
    return _matrices(z[:, 0] + 1j * z[:, 1], z[:, 2], z[:, 2], -z[:, 0] + 1j * z[:, 1])


def _r3_to_l3(mats):
    return np.stack([(mats[:, 0, 0] - mats[:, 1, 1]) / 2, (mats[:, 0, 0] + mats[:, 1, 1]) / 2j, mats[:, 0, 1]],
                    axis=1)


def _l4_to_r1(z):
    return _matrices(z[:, 0] + 1j * z[:, 1], z[:, 2] + 1j * z[:, 3], z[:, 2] - 1j * z[:, 3], -z[:, 0] + 1j * z[:, 1])


def _r1_to_l4(mats):
    return np.stack([(mats[:, 0, 0] - mats[:, 1, 1]) / 2, (mats[:, 0, 0] + mats[:, 1, 1]) / 2j,
                     (mats[:, 0, 1] + mats[:, 1, 0]) / 2, (mats[:, 0, 1] - mats[:, 1, 0]) / 2j], axis=1)


def _ll2_to_g2(w):
    return np.stack([2j * w[:, 1], -w[:, 0] - w[:, 1] ** 2], axis=1)


def _g2_to_ll2(s):
    second = s[:, 0] / 2j
    return np.stack([-s[:, 1] - second ** 2, second], axis=1)


def _ll3_to_e(w):
    return np.stack([w[:, 1] + 1j * w[:, 2], -w[:, 1] + 1j * w[:, 2], -w[:, 2] ** 2 - w[:, 1] ** 2 - w[:, 0]], axis=1)


def _e_to_ll3(x):
    second = (x[:, 0] - x[:, 1]) / 2
    third = (x[:, 0] + x[:, 1]) / 2j
    return np.stack([-x[:, 2] - second ** 2 - third ** 2, second, third], axis=1)


def _ll4_to_f(w):
    return np.stack([w[:, 2] + 1j * w[:, 3], -w[:, 2] + 1j * w[:, 3],
                     -w[:, 1] ** 2 - w[:, 2] ** 2 - w[:, 3] ** 2 - w[:, 0], 2 * w[:, 1]], axis=1)


def _f_to_ll4(x):
    third = (x[:, 0] - x[:, 1]) / 2
    fourth = (x[:, 0] + x[:, 1]) / 2j
    second = x[:, 3] / 2
    return np.stack([-x[:, 2] - second ** 2 - third ** 2 - fourth ** 2, second, third, fourth], axis=1)


# tag: (source dim, target shape, forward, backward, source, target)
_TABLE: Dict[str, Tuple[int, Tuple[int, ...], Callable, Callable, Callable, Callable]] = {
    "L2toBidisc": (2, (2,), _l2_to_bidisc, _bidisc_to_l2, lambda: domains.LieBall(2), lambda: domains.Polydisc(2)),
    "L3toR3": (3, (2, 2), _l3_to_r3, _r3_to_l3, lambda: domains.LieBall(3), lambda: domains.CartanIII(2)),
    "L4toR1": (4, (2, 2), _l4_to_r1, _r1_to_l4, lambda: domains.LieBall(4), lambda: domains.CartanI(2, 2)),
    "LL2toG2": (2, (2,), _ll2_to_g2, _g2_to_ll2, lambda: domains.QuotientL(2), lambda: domains.SymBidisc()),
    "LL3toE": (3, (3,), _ll3_to_e, _e_to_ll3, lambda: domains.QuotientL(3), lambda: domains.Tetrablock()),
    "LL4toF": (4, (4,), _ll4_to_f, _f_to_ll4, lambda: domains.QuotientL(4), lambda: domains.FDomain()),
}


def _batch(shape: Tuple[int, ...], p):
    if len(shape) == 2:
        return as_matrix_batch(p, shape[0], shape[1])
    return as_batch(p, shape[0])


def _forward(tag: str, p):
    dim, _, forward, _, _, _ = _TABLE[tag]
    arr, single = as_batch(p, dim)
    return unbatch(forward(arr), single)


def _backward(tag: str, q):
    _, shape, _, backward, _, _ = _TABLE[tag]
    arr, single = _batch(shape, q)
    return unbatch(backward(arr), single)


def bih_eval(b: BihId, p):
    """Evaluate a biholomorphism (its inverse when ``b.inverse`` is set)."""
    return _backward(b.tag, p) if b.inverse else _forward(b.tag, p)


def bih_inverse(b: BihId, q):
    """Inverse of :func:`bih_eval`, solved from the linear and quadratic structure."""
    return _forward(b.tag, q) if b.inverse else _backward(b.tag, q)


def source_domain(b: BihId) -> domains.DomainId:
    source, target = _TABLE[b.tag][4](), _TABLE[b.tag][5]()
    return target if b.inverse else source


def target_domain(b: BihId) -> domains.DomainId:
    source, target = _TABLE[b.tag][4](), _TABLE[b.tag][5]()
    return source if b.inverse else target


def permutation(n: int) -> np.ndarray:
    """Index array of the coordinate permutation ``P_n`` applied before the Lie ball maps."""
    if n == 2:
        return np.array([0, 1])
    if n == 3:
        return np.array([1, 2, 0])
    if n == 4:
        return np.array([2, 3, 1, 0])
    raise UnsupportedMapException("commuting squares exist for n in {2, 3, 4}, got " + str(n))


def _square(n: int):
    """``(b, phi, a)`` triple of the commuting square in dimension ``n``, batch functions on map coordinates."""
    if n == 2:
        return _ll2_to_g2, proper_maps.BidiscSym(1), _l2_to_bidisc
    if n == 3:
        return _ll3_to_e, proper_maps.TetrablockPhi(), lambda z: _r3_coords(_l3_to_r3(z))
    if n == 4:
        return _ll4_to_f, proper_maps.FMapPhi4(), lambda z: _l4_to_r1(z).reshape(-1, 4)
    raise UnsupportedMapException("commuting squares exist for n in {2, 3, 4}, got " + str(n))


def _r3_coords(mats):
    return np.stack([mats[:, 0, 0], mats[:, 1, 1], mats[:, 0, 1]], axis=1)


def isomorphism_residual(pi1: Callable, pi2: Callable, a: Callable, b: Callable, points) -> float:
    """``sup |b(pi1(z)) - pi2(a(z))|`` over a batch, all maps acting on batches."""
    points = np.asarray(points, dtype=complex)
    return float(np.max(np.linalg.norm(b(pi1(points)) - pi2(a(points)), axis=1)))


def _lie_points(n: int, z, samples: int, seed: int) -> np.ndarray:
    if z is not None:
        return as_batch(z, n)[0]
    return domains.LieBall(n).sample(samples, np.random.default_rng(seed))


def commuting_square_residual(n: int, z=None, samples: int = 10000, seed: int = 0) -> float:
    """``sup |b(Lambda_n(z)) - phi(a(P_n z))|`` at ``z`` or at sampled Lie ball points.

    The triples ``(b, phi, a)`` are ``(LL2toG2, symmetrization, L2toBidisc)``,
    ``(LL3toE, phi_3, L3toR3)`` and ``(LL4toF, phi_4, L4toR1)``; ``P_n`` is
    :func:`permutation`.
    """
    b, phi, a = _square(n)
    order = permutation(n)
    points = _lie_points(n, z, samples, seed)
    return isomorphism_residual(proper_maps.LambdaN(n)._eval, phi._eval, lambda arr: a(arr[:, order]), b, points)


def deck_transport_residual(n: int, z=None, samples: int = 10000, seed: int = 0) -> float:
    """Distance between ``a(P_n(Lambda_n fiber))`` and the ``phi`` fiber over ``b(Lambda_n(z))``, as sets."""
    b, phi, a = _square(n)
    order = permutation(n)
    points = _lie_points(n, z, samples, seed)
    lam = proper_maps.LambdaN(n)
    image_first = a(points[:, order])
    image_second = a(lam._deck(points)[:, order])
    first, second = phi._fiber_pair(b(lam._eval(points)))
    straight = np.maximum(np.linalg.norm(image_first - first, axis=1), np.linalg.norm(image_second - second, axis=1))
    crossed = np.maximum(np.linalg.norm(image_first - second, axis=1), np.linalg.norm(image_second - first, axis=1))
    return float(np.max(np.minimum(straight, crossed)))


def transported_margins(b: BihId, points) -> Tuple[np.ndarray, np.ndarray]:
    """Source margins of ``points`` and target margins of their images."""
    source = source_domain(b)
    arr, _ = source.points(points)
    image = bih_eval(b, _restore(source, arr))
    return source._margin(arr), target_domain(b).margin(image)


def _restore(domain: domains.DomainId, arr: np.ndarray) -> Optional[np.ndarray]:
    if isinstance(domain, domains._MatrixDomain):
        return domain._to_matrix(arr)
    return arr
