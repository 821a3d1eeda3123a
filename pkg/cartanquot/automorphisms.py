"""Automorphisms of the Lie ball and the automorphisms they induce on the quotient."""

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
import logging

import numpy as np

from . import domains
from ._util import array_from_json, as_batch, complex_from_json, complex_to_json, to_jsonable, unbatch
from .exceptions import FiberNotPreservedException, InvalidAutomorphismException

__all__ = ['LieLinearAut', 'BlockExtension', 'AutomorphismReport', 'lie_linear_apply', 'extend_linear',
           'rho_omega', 'induced_quotient_aut', 'induced_quotient_map', 'block_extend', 'lie_form_residual',
           'random_special_orthogonal', 'random_lie_form_element', 'validate_automorphism', 'fix_points_sample']

LOGGER = logging.getLogger(__name__)

FIBER_RESIDUAL_LIMIT = 1e-10


def _check_omega(omega) -> complex:
    omega = complex(omega)
    if abs(abs(omega) - 1) > 1e-12:
        raise InvalidAutomorphismException("omega must be unimodular, got |omega| = {}".format(abs(omega)))
    return omega


class LieLinearAut(object):
    """Linear automorphism ``z -> omega U z`` of ``L_n``, ``U`` real special orthogonal."""

    def __init__(self, omega: complex, u):
        self.omega = _check_omega(omega)
        u = np.asarray(u)
        if np.iscomplexobj(u):
            if np.max(np.abs(u.imag), initial=0.0) > 0:
                raise InvalidAutomorphismException("U must be a real matrix")
            u = u.real
        u = np.array(u, dtype=float)
        if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] < 1:
            raise InvalidAutomorphismException("U must be a square matrix, got shape {}".format(u.shape))
        if not np.all(np.isfinite(u)):
            raise InvalidAutomorphismException("U has non finite entries")
        if np.max(np.abs(u.T @ u - np.eye(u.shape[0]))) > 1e-10:
            raise InvalidAutomorphismException("U is not orthogonal")
        if abs(np.linalg.det(u) - 1) > 1e-10:
            raise InvalidAutomorphismException("U must have determinant +1")
        self.u = u

    @property
    def n(self) -> int:
        return self.u.shape[0]

    def __call__(self, z):
        arr, single = as_batch(z, self.n)
        return unbatch(self.omega * (arr @ self.u.T), single)

    @classmethod
    def from_json(cls, json: Dict[str, Any]):
        """Create the automorphism from ``{"omega": [re, im], "U": matrix}``."""
        matrix = array_from_json(json["U"])
        if np.max(np.abs(matrix.imag), initial=0.0) > 0:
            raise InvalidAutomorphismException("U must be a real matrix")
        return cls(complex_from_json(json.get("omega", [1.0, 0.0])), matrix.real)

    def to_json(self) -> Dict[str, Any]:
        return {"omega": complex_to_json(self.omega), "U": to_jsonable(self.u.astype(complex))}

    def __eq__(self, other):
        if other is None or not isinstance(other, LieLinearAut):
            return False
        return self.omega == other.omega and np.array_equal(self.u, other.u)

    def __str__(self) -> str:
        return "linear automorphism of L_{}: omega {}".format(self.n, self.omega)

    def __repr__(self) -> str:
        return "automorphisms.LieLinearAut(omega: {}, U: {})".format(self.omega, self.u.tolist())


def lie_linear_apply(a: LieLinearAut, z):
    return a(z)


def extend_linear(a: LieLinearAut) -> LieLinearAut:
    """``(z1, z) -> omega (z1, U z)`` on ``L_(n+1)``; commutes with the first coordinate flip."""
    u = np.eye(a.n + 1)
    u[1:, 1:] = a.u
    return LieLinearAut(a.omega, u)


def rho_omega(omega: complex, w):
    """``(w1, w2, ..., wn) -> (omega**2 w1, omega w2, ..., omega wn)``."""
    omega = _check_omega(omega)
    arr, single = as_batch(w, np.shape(w)[-1])
    image = omega * arr
    image[:, 0] = omega * image[:, 0]
    return unbatch(image, single)


def _square_first(arr: np.ndarray) -> np.ndarray:
    image = np.array(arr, dtype=complex, copy=True)
    image[:, 0] = image[:, 0] ** 2
    return image


def induced_quotient_aut(a: Callable, w, tol: float = FIBER_RESIDUAL_LIMIT) -> Tuple[Any, Any]:
    """Push ``a`` down to the quotient through both square roots of ``w1``.

    :param a: a map of ``L_n`` acting on batches, expected to commute with the first coordinate flip
    :param w: a point (or batch) of the quotient domain
    :raises ~cartanquot.exceptions.FiberNotPreservedException: the two branches disagree by more than ``tol``
    :returns: ``(image, residual)``
    """
    arr, single = as_batch(w, np.shape(w)[-1])
    plus = domains.quotient_lift(arr)
    minus = plus.copy()
    minus[:, 0] = -minus[:, 0]
    image_plus = _square_first(np.asarray(a(plus)))
    image_minus = _square_first(np.asarray(a(minus)))
    residual = np.max(np.abs(image_plus - image_minus), axis=1)
    worst = float(np.max(residual))
    if worst > tol:
        raise FiberNotPreservedException("map does not preserve fibers (residual {:.3g})".format(worst), worst)
    return unbatch(image_plus, single), unbatch(residual, single)


def induced_quotient_map(a: Callable, tol: float = FIBER_RESIDUAL_LIMIT) -> Callable:
    def induced(w):
        return induced_quotient_aut(a, w, tol)[0]
    return induced


class BlockExtension(object):
    """Blocks ``(A~, B~, C~, D~)`` extending ``g = [[A, B], [C, D]]`` from ``n`` to ``n + 1``."""

    def __init__(self, atilde: np.ndarray, btilde: np.ndarray, ctilde: np.ndarray, dtilde: np.ndarray):
        self.atilde = atilde
        self.btilde = btilde
        self.ctilde = ctilde
        self.dtilde = dtilde

    @property
    def n(self) -> int:
        return self.atilde.shape[0]

    def blocks(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.atilde, self.btilde, self.ctilde, self.dtilde

    def inner_blocks(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """The blocks ``A, B, C, D`` the extension was built from."""
        return self.atilde[1:, 1:], self.btilde[1:], self.ctilde[:, 1:], self.dtilde

    def assemble(self) -> np.ndarray:
        """``[[A~, B~], [C~, D~]]``."""
        return np.block([[self.atilde, self.btilde], [self.ctilde, self.dtilde]])

    def to_json(self) -> Dict[str, Any]:
        return {"Atilde": to_jsonable(self.atilde), "Btilde": to_jsonable(self.btilde),
                "Ctilde": to_jsonable(self.ctilde), "Dtilde": to_jsonable(self.dtilde)}

    def __repr__(self) -> str:
        return "automorphisms.BlockExtension(n: {})".format(self.n)


def block_extend(a, b, c, d) -> BlockExtension:
    """``A~ = [[1, 0], [0, A]]``, ``B~ = [[0], [B]]``, ``C~ = [0, C]``, ``D~ = D``.

    :raises ~cartanquot.exceptions.InvalidAutomorphismException: shapes other than
      ``A: k x k``, ``B: k x 2``, ``C: 2 x k``, ``D: 2 x 2``
    """
    a, b, c, d = (np.atleast_2d(np.asarray(block, dtype=complex)) for block in (a, b, c, d))
    size = a.shape[0]
    if a.shape != (size, size) or b.shape != (size, 2) or c.shape != (2, size) or d.shape != (2, 2):
        raise InvalidAutomorphismException("inconsistent block shapes A{} B{} C{} D{}".format(
            a.shape, b.shape, c.shape, d.shape))
    atilde = np.zeros((size + 1, size + 1), dtype=complex)
    atilde[0, 0] = 1
    atilde[1:, 1:] = a
    btilde = np.vstack([np.zeros((1, 2), dtype=complex), b])
    ctilde = np.hstack([np.zeros((2, 1), dtype=complex), c])
    return BlockExtension(atilde, btilde, ctilde, d.copy())


def lie_form_residual(g, n: int) -> float:
    """``max |g^T J g - J|`` with ``J = diag(I_n, -I_2)``."""
    g = np.asarray(g)
    if g.shape != (n + 2, n + 2):
        raise InvalidAutomorphismException("g must be {0}x{0}, got shape {1}".format(n + 2, g.shape))
    form = np.diag([1.0] * n + [-1.0, -1.0])
    return float(np.max(np.abs(g.T @ form @ g - form)))


def random_special_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar distributed element of ``SO(n)``."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_lie_form_element(n: int, rng: np.random.Generator, boosts: int = 2) -> np.ndarray:
    """Random element of ``SO(n, 2)`` built from rotations and hyperbolic boosts."""
    g = np.eye(n + 2)
    g[:n, :n] = random_special_orthogonal(n, rng)
    g[n:, n:] = random_special_orthogonal(2, rng)
    for _ in range(boosts):
        boost = np.eye(n + 2)
        i = int(rng.integers(0, n))
        j = n + int(rng.integers(0, 2))
        t = rng.uniform(-1, 1)
        boost[i, i] = boost[j, j] = np.cosh(t)
        boost[i, j] = boost[j, i] = np.sinh(t)
        g = g @ boost
    return g


class AutomorphismReport(object):
    """Outcome of :func:`validate_automorphism`."""

    def __init__(self, interior_failures: int, boundary_failures: int, involution_residual: float,
                 samples: int, min_interior_margin: float, max_boundary_margin: float):
        self.interior_failures = interior_failures
        self.boundary_failures = boundary_failures
        self.involution_residual = involution_residual
        self.samples = samples
        self.min_interior_margin = min_interior_margin
        self.max_boundary_margin = max_boundary_margin

    @property
    def passed(self) -> bool:
        return self.interior_failures == 0 and self.boundary_failures == 0 and self.involution_residual < 1e-10

    def to_json(self) -> Dict[str, Any]:
        return {"interiorFailures": self.interior_failures, "boundaryFailures": self.boundary_failures,
                "involutionResidual": self.involution_residual, "samples": self.samples,
                "minInteriorMargin": self.min_interior_margin, "maxBoundaryMargin": self.max_boundary_margin,
                "passed": self.passed}

    def __str__(self) -> str:
        return "automorphism check: {} interior and {} boundary failures over {} samples".format(
            self.interior_failures, self.boundary_failures, self.samples)


def validate_automorphism(f: Callable, d: domains.DomainId, samples: int, seed: Union[int, np.random.Generator],
                          involution: bool = False, boundary_in: float = 1e-6,
                          boundary_out: float = 1e-4) -> AutomorphismReport:
    """Sampled checks for a candidate automorphism of a quasi-balanced domain.

    This is the slot for automorphisms given by external formulas: interior
    points must stay inside, points with margin below ``boundary_in`` must
    land at margin below ``boundary_out`` and, when ``involution`` is set,
    ``f(f(z)) = z``.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    interior = d.sample(samples, rng)
    near = domains.boundary_sample(d, samples, rng, 1e-9)
    near = near[d._margin(near) < boundary_in]
    inside_margin = d._margin(np.asarray(f(interior)))
    near_margin = d._margin(np.asarray(f(near)))
    residual = 0.0
    if involution:
        residual = float(np.max(np.abs(np.asarray(f(np.asarray(f(interior)))) - interior)))
    report = AutomorphismReport(int(np.count_nonzero(inside_margin <= 0)),
                                int(np.count_nonzero(np.abs(near_margin) >= boundary_out)),
                                residual, samples, float(np.min(inside_margin)),
                                float(np.max(np.abs(near_margin), initial=0.0)))
    LOGGER.debug("%s", report)
    return report


def fix_points_sample(f: Callable, d: domains.DomainId, samples: int, seed: int, tol: float = 1e-8,
                      iterations: int = 50, dedup: float = 1e-6) -> np.ndarray:
    """Sampled fixed points of a self-map of a domain.

    Uniform samples are refined by ``x <- (x + f(x)) / 2``; points that end
    inside the domain with ``|f(x) - x| < tol`` are kept and deduplicated at
    distance ``dedup``.

    :raises ~cartanquot.exceptions.InvalidAutomorphismException: ``f`` sends a sample outside ``d``
    :returns: array of shape ``(K, dim)``, possibly empty
    """
    rng = np.random.default_rng(seed)
    points = d.sample(samples, rng)
    if np.any(d._margin(np.asarray(f(points))) <= 0):
        raise InvalidAutomorphismException("map does not send {!r} into itself".format(d))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for _ in range(iterations):
            moved = np.asarray(f(points))
            if np.all(np.max(np.abs(moved - points), axis=1) < tol):
                break
            points = (points + moved) / 2
            points = points[np.all(np.isfinite(points), axis=1)]
        moved = np.asarray(f(points))
    good = np.all(np.isfinite(moved), axis=1) & (np.max(np.abs(moved - points), axis=1) < tol)
    points = points[good]
    points = points[d._margin(points) > 0]
    dropped = samples - points.shape[0]
    if dropped:
        LOGGER.warning("fix_points_sample dropped %d of %d trajectories", dropped, samples)
    kept = np.zeros((0, d.dim), dtype=complex)
    for point in points:
        if kept.shape[0] == 0 or np.min(np.max(np.abs(kept - point), axis=1)) >= dedup:
            kept = np.vstack([kept, point[np.newaxis, :]])
    return kept
