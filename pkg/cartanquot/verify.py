"""Verification suite: every module invariant as a seeded, reportable check.

The manifest (:func:`manifest`) is the machine readable map from suite
entries to module invariants. Entries run independently, each with its own
seed derived from the run seed and the entry name, so the report is the same
whatever the execution order or the number of worker threads.
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

from typing import Any, Callable, Dict, Iterable, List, Optional
import concurrent.futures
import itertools
import logging
import sys

import numpy as np

from . import automorphisms, bergman, biholomorphisms, domains, proper_maps, reflections
from ._util import polydisc_uniform
from .exceptions import CartanQuotException, ConfigurationException
from .run_config import RunConfig

try:
    from progressbar import Bar, Percentage, AdaptiveETA, ProgressBar
except ImportError:
    pass

__all__ = ['CheckOutcome', 'CheckResult', 'SuiteEntry', 'SuiteReport', 'SUITE', 'manifest', 'select',
           'run_entry', 'run_suite', 'random_polynomials', 'shilov_ratio']

LOGGER = logging.getLogger(__name__)


class CheckOutcome(object):
    """What a check function returns: residual, tolerance and optional verdict override."""

    def __init__(self, residual: float, tolerance: float, passed: Optional[bool] = None,
                 details: Optional[Dict[str, Any]] = None):
        self.residual = float(residual)
        self.tolerance = float(tolerance)
        self.passed = bool(self.residual <= self.tolerance if passed is None else passed)
        self.details = details or {}


class CheckResult(object):
    """One line of a suite report."""

    def __init__(self, name: str, module: str, passed: bool, residual: Optional[float], tolerance: float,
                 samples: int, details: Optional[Dict[str, Any]] = None, error: Optional[str] = None):
        self.name = name
        self.module = module
        self.passed = passed
        self.residual = residual
        self.tolerance = tolerance
        self.samples = samples
        self.details = details or {}
        self.error = error

    def to_json(self) -> Dict[str, Any]:
        json = {"name": self.name, "module": self.module, "passed": self.passed, "residual": self.residual,
                "tolerance": self.tolerance, "samples": self.samples, "details": self.details}
        if self.error is not None:
            json["error"] = self.error
        return json

    def __str__(self) -> str:
        return "{} {}: residual {} tolerance {}".format("PASS" if self.passed else "FAIL", self.name,
                                                       self.residual, self.tolerance)


class SuiteEntry(object):
    """A named check tied to one invariant of one module."""

    def __init__(self, name: str, invariant: str, check: Callable[[int, np.random.Generator], CheckOutcome],
                 samples: int, minimum: int = 1, slow: bool = False):
        self.name = name
        self.module = name.split(".")[0]
        self.invariant = invariant
        self.check = check
        self.samples = samples
        self.minimum = minimum
        self.slow = slow

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "module": self.module, "invariant": self.invariant,
                "samples": self.samples, "slow": self.slow}


class SuiteReport(object):
    def __init__(self, config: RunConfig, results: List[CheckResult]):
        self.config = config
        self.results = results

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def to_json(self) -> Dict[str, Any]:
        return {"command": "verify-suite", "config": self.config.to_json(), "passed": self.passed,
                "checks": [result.to_json() for result in self.results]}


def _disagreements(first: np.ndarray, second: np.ndarray) -> int:
    return int(np.count_nonzero((first > 0) != (second > 0)))


def _lie_points(rng: np.random.Generator, count: int, n: int, radius: float = 1.0) -> np.ndarray:
    return polydisc_uniform(rng, count, [radius] * n)


# domains

def _check_eq1_equivalence(samples, rng):
    bad = 0
    for n in (1, 2, 3, 4, 6):
        points = _lie_points(rng, samples, n, 1.0 / np.sqrt(n) + 0.3)
        bad += _disagreements(domains.lie_margin(points), domains.lie_eq1_margin(points))
    return CheckOutcome(bad, 0)


def _check_quotient_consistency(samples, rng):
    bad = 0
    for n in (2, 3, 5):
        points = _lie_points(rng, samples, n)
        plus = domains.quotient_lift(points)
        minus = plus.copy()
        minus[:, 0] = -minus[:, 0]
        bad += _disagreements(domains.lie_margin(plus), domains.lie_margin(minus))
        bad += _disagreements(domains.QuotientL(n)._margin(points), domains.lie_margin(minus))
    return CheckOutcome(bad, 0)


def _check_quotient_intrinsic(samples, rng):
    bad = 0
    for n in (2, 3, 4, 8):
        points = _lie_points(rng, samples, n)
        bad += _disagreements(domains.QuotientL(n)._margin(points), domains.quotient_intrinsic_margin(points))
    return CheckOutcome(bad, 0)


def _bimap_check(tag: str):
    def check(samples, rng):
        bih = biholomorphisms.BihId(tag)
        n = biholomorphisms.source_domain(bih).dim
        points = _lie_points(rng, samples, n, 0.9)
        source, target = biholomorphisms.transported_margins(bih, points)
        return CheckOutcome(_disagreements(source, target), 0, details={"inside": int(np.count_nonzero(source > 0))})
    return check


def _check_cartan1_2x2(samples, rng):
    mats = polydisc_uniform(rng, samples, [0.8] * 4).reshape(-1, 2, 2)
    direct = domains.cartan1_2x2_margin(mats)
    singular = domains.CartanI(2, 2).margin(mats)
    return CheckOutcome(_disagreements(direct, singular), 0)


def _check_minkowski_homogeneity(samples, rng):
    worst = 0.0
    tol = 1e-10
    for domain in (domains.QuotientL(3), domains.QuotientL(5), domains.Ellipsoid(3), domains.Tetrablock()):
        points = domain.sample(samples, rng)
        lam = np.sqrt(rng.random(samples)) * np.exp(2j * np.pi * rng.random(samples))
        lam[0] = 0.5
        scaled = points * lam[:, np.newaxis] ** domain.weights[np.newaxis, :]
        lhs = domains.minkowski(domain, scaled, tol)
        rhs = np.abs(lam) * domains.minkowski(domain, points, tol)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return CheckOutcome(worst, 2 * tol)


def random_polynomials(rng: np.random.Generator, n: int, count: int, degree: int = 3):
    """Exponents ``(M, n)`` and complex coefficients ``(M, count)`` of random polynomials."""
    exponents = np.array([powers for powers in itertools.product(range(degree + 1), repeat=n)
                          if sum(powers) <= degree])
    coefficients = rng.standard_normal((len(exponents), count)) + 1j * rng.standard_normal((len(exponents), count))
    return exponents, coefficients


def _evaluate(points: np.ndarray, exponents: np.ndarray, coefficients: np.ndarray) -> np.ndarray:
    monomials = np.prod(points[:, np.newaxis, :] ** exponents[np.newaxis, :, :], axis=2)
    return monomials @ coefficients


def shilov_ratio(d: domains.DomainId, polynomials: int, samples: int, rng: np.random.Generator) -> float:
    """Smallest ratio ``max over Shilov samples / max over domain samples`` across random polynomials."""
    exponents, coefficients = random_polynomials(rng, d.dim, polynomials)
    shilov = domains.shilov_sample(d, samples, int(rng.integers(0, 2 ** 63)))
    uniform = d.sample(samples, rng)
    top_shilov = np.max(np.abs(_evaluate(shilov, exponents, coefficients)), axis=0)
    top_uniform = np.max(np.abs(_evaluate(uniform, exponents, coefficients)), axis=0)
    return float(np.min(top_shilov / top_uniform))


def _check_shilov(samples, rng):
    ratios = {}
    for domain in (domains.LieBall(2), domains.LieBall(3), domains.LieBall(4),
                   domains.QuotientL(2), domains.QuotientL(3), domains.QuotientL(4)):
        ratios[str(domain)] = shilov_ratio(domain, 100, samples, rng)
    return CheckOutcome(max(0.0, 1 - min(ratios.values())), 1e-2, details=ratios)


def _check_truncation(samples, rng):
    bad = 0
    points = domains.LieBall(6).sample(samples, rng)
    for m in range(1, 6):
        bad += int(np.count_nonzero(domains.lie_margin(points[:, :m]) <= 0))
    quotient = domains.QuotientL(5).sample(samples, rng)
    bad += int(np.count_nonzero(domains.QuotientL(2)._margin(quotient[:, :2]) <= 0))
    return CheckOutcome(bad, 0)


# proper maps

def _check_fiber_consistency(samples, rng):
    worst = 0.0
    for m in proper_maps.catalog():
        points = m.sample_source(samples, rng)
        targets = m._eval(points)
        first, second = m._fiber_pair(targets)
        error = np.maximum(np.linalg.norm(m._eval(first) - targets, axis=1),
                           np.linalg.norm(m._eval(second) - targets, axis=1))
        member = np.minimum(np.linalg.norm(first - points, axis=1), np.linalg.norm(second - points, axis=1))
        worst = max(worst, float(np.max(error)), float(np.max(member)))
    return CheckOutcome(worst, 1e-10)


def _check_deck_identities(samples, rng):
    worst = 0.0
    for m in proper_maps.catalog():
        points = m.sample_source(samples, rng)
        image = m._deck(points)
        worst = max(worst, float(np.max(np.abs(m._deck(image) - points))),
                    float(np.max(np.abs(m._eval(image) - m._eval(points)))))
    return CheckOutcome(worst, 1e-12)


def _check_galois(samples, rng):
    worst = 0.0
    for m in proper_maps.catalog():
        points = m.sample_source(samples, rng)
        points = points[m._locus_margin(points) > 1e-6]
        first, second = m._fiber_pair(m._eval(points))
        image = m._deck(points)
        straight = np.maximum(np.linalg.norm(first - points, axis=1), np.linalg.norm(second - image, axis=1))
        crossed = np.maximum(np.linalg.norm(first - image, axis=1), np.linalg.norm(second - points, axis=1))
        worst = max(worst, float(np.max(np.minimum(straight, crossed))))
    return CheckOutcome(worst, 1e-10)


def _check_jacobian_lock(samples, rng):
    worst = 0.0
    for m in proper_maps.catalog():
        points = m.sample_source(samples, rng)
        numeric = proper_maps.finite_difference_jacobian(m, points)
        exact = m._jacobian(points)
        scale = np.maximum(np.max(np.abs(exact), axis=(1, 2)), 1.0)
        worst = max(worst, float(np.max(np.max(np.abs(numeric - exact), axis=(1, 2)) / scale)))
        if m.source_dim == m.target_dim:
            closed = m._jacobian_det(points)
            relative = np.abs(np.linalg.det(numeric) - closed) / np.maximum(np.abs(closed), 1e-3)
            worst = max(worst, float(np.max(relative)))
    return CheckOutcome(worst, 1e-5)


def _check_fix_locus(samples, rng):
    bad = 0
    for m in proper_maps.catalog():
        points = np.concatenate([m.sample_source(samples, rng), proper_maps.locus_samples(m, samples // 10, rng)])
        fixed = np.max(np.abs(m._deck(points) - points), axis=1) < 1e-9
        locus = m._locus_margin(points) < 1e-9
        bad += int(np.count_nonzero(fixed != locus))
    return CheckOutcome(bad, 0)


def _check_image_membership(samples, rng):
    bad = 0
    maps = [proper_maps.LambdaN(2), proper_maps.LambdaN(3), proper_maps.LambdaN(6), proper_maps.BidiscSym(1),
            proper_maps.BidiscSym(np.exp(1.1j)), proper_maps.TetrablockPhi(), proper_maps.FMapPhi4(),
            proper_maps.BallEllipsoid(3), proper_maps.DiscSquare()]
    for m in maps:
        images = m._eval(m.sample_source(samples, rng))
        bad += int(np.count_nonzero(m.target_domain()._margin(images) <= 0))
    return CheckOutcome(bad, 0)


def _check_annulus_square(samples, rng):
    bad = 0
    for r in (0.3, 0.5, 0.9):
        m = proper_maps.AnnulusSquare(r)
        bad += int(np.count_nonzero(m.target_domain()._margin(m._eval(m.sample_source(samples, rng))) <= 0))
        targets = m.target_domain().sample(samples, rng)
        first, _ = m._fiber_pair(targets)
        bad += int(np.count_nonzero(m.source_margin(first) <= 0))
    return CheckOutcome(bad, 0)


def _check_multiplicity(samples, rng):
    counts = {}
    for m in proper_maps.catalog():
        counts[str(m)] = proper_maps.multiplicity_probe(m, samples, int(rng.integers(0, 2 ** 63)))
    return CheckOutcome(max(abs(count - 2) for count in counts.values()), 0, details=counts)


# reflections

def _random_reflection(rng: np.random.Generator, n: int) -> np.ndarray:
    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = u + 0.5 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return np.eye(n) - 2 * np.outer(u, w.conj()) / (w.conj() @ u)


def _check_conjugation_stability(samples, rng):
    failures = 0
    for _ in range(samples):
        n = int(rng.integers(2, 6))
        reflection = _random_reflection(rng, n)
        p = np.eye(n) + 0.3 * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        tol = 1e-10 * np.linalg.cond(p) ** 2 * np.linalg.cond(reflection) ** 2
        if not reflections.is_reflection(reflection, tol):
            failures += 1
        if not reflections.is_reflection(reflections.conjugate(reflection, p), tol):
            failures += 1
        if reflections.is_reflection(-np.eye(n), 1e-10):
            failures += 1
    return CheckOutcome(failures, 0)


def _check_basic_map_invariance(samples, rng):
    worst = 0.0
    for n in (2, 3, 4):
        sigma = _random_reflection(rng, n)
        theta = reflections.basic_map_from_reflection(sigma, reflections.frame_for_reflection(sigma))
        points = polydisc_uniform(rng, samples, [1.0] * n)
        scale = max(1.0, np.linalg.norm(theta.frame, 2) ** 2)
        worst = max(worst, float(np.max(np.abs(theta(points @ sigma.T) - theta(points)))) / scale)
    return CheckOutcome(worst, 1e-12)


def _check_nonex(samples, rng):
    worst = 0.0
    for angle in 2 * np.pi * rng.random(8):
        omega = np.exp(1j * angle)
        worst = max(worst, reflections.intertwine_residual(proper_maps.BidiscSym(1), proper_maps.BidiscSym(omega),
                                                           reflections.p_omega(omega), samples,
                                                           int(rng.integers(0, 2 ** 63))))
    return CheckOutcome(worst, 1e-14)


# biholomorphisms

def _check_membership_transport(samples, rng):
    bad = {}
    for tag in biholomorphisms.BIH_TAGS:
        bih = biholomorphisms.BihId(tag)
        points = polydisc_uniform(rng, samples, biholomorphisms.source_domain(bih).bounding_box())
        source, target = biholomorphisms.transported_margins(bih, points)
        bad[tag] = _disagreements(source, target)
    return CheckOutcome(sum(bad.values()), 0, details=bad)


def _check_commuting_squares(samples, rng):
    residuals = {str(n): biholomorphisms.commuting_square_residual(n, samples=samples,
                                                                   seed=int(rng.integers(0, 2 ** 63)))
                 for n in (2, 3, 4)}
    return CheckOutcome(max(residuals.values()), 1e-12, details=residuals)


def _check_deck_transport(samples, rng):
    residuals = {str(n): biholomorphisms.deck_transport_residual(n, samples=samples,
                                                                 seed=int(rng.integers(0, 2 ** 63)))
                 for n in (2, 3, 4)}
    return CheckOutcome(max(residuals.values()), 1e-10, details=residuals)


def _check_round_trip(samples, rng):
    worst = 0.0
    for tag in biholomorphisms.BIH_TAGS:
        bih = biholomorphisms.BihId(tag)
        source = biholomorphisms.source_domain(bih)
        points = source.sample(samples, rng)
        back = biholomorphisms.bih_inverse(bih, biholomorphisms.bih_eval(bih, points))
        worst = max(worst, float(np.max(np.abs(back - points))))
    return CheckOutcome(worst, 1e-12)


# bergman

def _lie_pairs(rng: np.random.Generator, samples: int, n: int):
    lie = domains.LieBall(n)
    return lie.sample(samples, rng), lie.sample(samples, rng)


def _difference_scale(z: np.ndarray, w: np.ndarray, n: int) -> np.ndarray:
    """Size of the terms of the difference formula, the natural unit of its rounding error."""
    flipped = z.copy()
    flipped[:, 0] = -flipped[:, 0]
    terms = np.abs(bergman.k_lie(z, w, n)) + np.abs(bergman.k_lie(flipped, w, n))
    return terms / np.abs(4 * z[:, 0] * np.conj(w[:, 0]))


def _check_form_equivalence(samples, rng):
    worst = 0.0
    for n in range(2, 9):
        z, w = _lie_pairs(rng, samples, n)
        lam = proper_maps.LambdaN(n)
        closed = bergman.k_quotient_closed(lam._eval(z), lam._eval(w), n).value
        difference = bergman.k_quotient_diff(z, w, n)
        worst = max(worst, float(np.max(np.abs(difference - closed) / _difference_scale(z, w, n))))
    return CheckOutcome(worst, 1e-10)


def _check_hermitian(samples, rng):
    worst = 0.0
    for n in range(2, 9):
        quotient = domains.QuotientL(n)
        p, q = quotient.sample(samples, rng), quotient.sample(samples, rng)
        forward = bergman.k_quotient_closed(p, q, n).value
        backward = bergman.k_quotient_closed(q, p, n).value
        worst = max(worst, float(np.max(np.abs(forward - np.conj(backward)) / np.maximum(np.abs(forward), 1.0))))
        z, w = _lie_pairs(rng, samples, n)
        lie = bergman.k_lie(z, w, n)
        error = np.abs(lie - np.conj(bergman.k_lie(w, z, n))) / np.maximum(np.abs(lie), 1.0)
        worst = max(worst, float(np.max(error)))
    return CheckOutcome(worst, 1e-12)


def _check_first_slot(samples, rng):
    worst = 0.0
    for n in range(2, 9):
        q = domains.QuotientL(n).sample(samples, rng)
        value = bergman.k_quotient_closed(np.zeros(n), q, n).value
        worst = max(worst, float(np.max(np.abs(value - n))))
    return CheckOutcome(worst, 1e-12)


def _check_witness_zero(samples, rng):
    values = {}
    for n in range(3, 9):
        for r in (0.7, 0.8, 0.9):
            if abs(bergman.lqk_z0(n)) < r:
                values["n={} r={}".format(n, r)] = bergman.lqk_witness(n, r).relative_value
    return CheckOutcome(max(values.values()), 1e-9, details=values)


def _check_branch_independence(samples, rng):
    worst = 0.0
    for n in range(2, 9):
        z, w = _lie_pairs(rng, samples, n)
        flipped = z.copy()
        flipped[:, 0] = -flipped[:, 0]
        value = bergman.k_quotient_diff(z, w, n)
        error = np.abs(bergman.k_quotient_diff(flipped, w, n) - value) / _difference_scale(z, w, n)
        worst = max(worst, float(np.max(error)))
    return CheckOutcome(worst, 1e-10)


def _check_lqk_evidence(samples, rng):
    minimum, _ = bergman.lqk_scan(2, samples, int(rng.integers(0, 2 ** 63)))
    witness = bergman.lqk_witness(3, 0.8)
    lifted = (proper_maps.LambdaN(3)._eval(witness.zhat[np.newaxis, :])[0],
              proper_maps.LambdaN(3)._eval(witness.what[np.newaxis, :])[0])
    near, _ = bergman.lqk_scan(3, max(samples // 100, 1000), int(rng.integers(0, 2 ** 63)), center=lifted,
                              radius=1e-10)
    return CheckOutcome(minimum, 1e-6, passed=minimum > 1e-6 and near < 1e-6,
                        details={"minAbsN2": minimum, "minAbsNearWitnessN3": near})


def _check_volume_identity(samples, rng):
    scores = {}
    for n in (2, 3):
        residual, stderr = bergman.volume_identity_estimate(n, samples, int(rng.integers(0, 2 ** 63)))
        scores[str(n)] = {"residual": residual, "stderr": stderr}
    worst = max(value["residual"] / value["stderr"] for value in scores.values())
    return CheckOutcome(worst, 3.0, details=scores)


# automorphisms

def _random_omega(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.random()))


def _check_rho_composition(samples, rng):
    worst = 0.0
    for n in (2, 3, 5):
        points = domains.QuotientL(n).sample(samples, rng)
        omega, other = _random_omega(rng), _random_omega(rng)
        composed = automorphisms.rho_omega(omega, automorphisms.rho_omega(other, points))
        worst = max(worst, float(np.max(np.abs(composed - automorphisms.rho_omega(omega * other, points)))))
        inverse = automorphisms.rho_omega(omega, automorphisms.rho_omega(np.conj(omega), points))
        worst = max(worst, float(np.max(np.abs(inverse - points))))
    return CheckOutcome(worst, 1e-14)


def _check_rho_membership(samples, rng):
    bad = 0
    for n in (2, 3, 5):
        domain = domains.QuotientL(n)
        points = _lie_points(rng, samples, n)
        bad += _disagreements(domain._margin(points), domain._margin(automorphisms.rho_omega(_random_omega(rng),
                                                                                            points)))
    return CheckOutcome(bad, 0)


def _check_rho_minkowski(samples, rng):
    domain = domains.QuotientL(3)
    points = domain.sample(samples, rng)
    image = automorphisms.rho_omega(_random_omega(rng), points)
    worst = float(np.max(np.abs(domains.minkowski(domain, image, 1e-10) - domains.minkowski(domain, points, 1e-10))))
    return CheckOutcome(worst, 2e-10)


def _check_extension(samples, rng):
    branch = restriction = 0.0
    failures = 0
    for trial in range(100):
        n = 2 + trial % 4
        base = automorphisms.LieLinearAut(_random_omega(rng), automorphisms.random_special_orthogonal(n - 1, rng))
        extended = automorphisms.extend_linear(base)
        quotient = domains.QuotientL(n)
        points = quotient.sample(samples, rng)
        image, residual = automorphisms.induced_quotient_aut(extended, points)
        branch = max(branch, float(np.max(residual)))
        failures += int(np.count_nonzero(quotient._margin(image) <= 0))
        lie_points = domains.LieBall(n - 1).sample(samples, rng)
        embedded = np.hstack([np.zeros((samples, 1), dtype=complex), lie_points])
        restricted, _ = automorphisms.induced_quotient_aut(extended, embedded)
        restriction = max(restriction, float(np.max(np.abs(restricted[:, 1:] - base(lie_points)))),
                          float(np.max(np.abs(restricted[:, 0]))))
    worst = max(branch, restriction)
    return CheckOutcome(worst, 1e-12, passed=worst <= 1e-12 and failures == 0,
                        details={"branchResidual": branch, "restrictionResidual": restriction,
                                 "membershipFailures": failures})


def _sigma_commuting_automorphisms(rng: np.random.Generator, n: int) -> List[Callable]:
    rotation = automorphisms.random_special_orthogonal(n - 1, rng)
    return [automorphisms.LieLinearAut(1, np.eye(n)),
            automorphisms.LieLinearAut(_random_omega(rng), np.eye(n)),
            automorphisms.extend_linear(automorphisms.LieLinearAut(_random_omega(rng), rotation)),
            proper_maps.deck(proper_maps.LambdaN(n))[1]]


def _check_well_definedness(samples, rng):
    worst = 0.0
    for n in (2, 3, 4, 6):
        points = domains.QuotientL(n).sample(samples, rng)
        for candidate in _sigma_commuting_automorphisms(rng, n):
            worst = max(worst, float(np.max(automorphisms.induced_quotient_aut(candidate, points)[1])))
    return CheckOutcome(worst, 1e-12)


def _check_membership_preservation(samples, rng):
    failures = 0
    for n in (2, 3, 4):
        lie = domains.LieBall(n)
        quotient = domains.QuotientL(n)
        for candidate in _sigma_commuting_automorphisms(rng, n):
            failures += int(not automorphisms.validate_automorphism(candidate, lie, samples, rng).passed)
            induced = automorphisms.induced_quotient_map(candidate)
            failures += int(not automorphisms.validate_automorphism(induced, quotient, samples, rng).passed)
        omega = _random_omega(rng)
        rho = automorphisms.validate_automorphism(lambda w: automorphisms.rho_omega(omega, w), quotient, samples, rng)
        failures += int(not rho.passed)
    return CheckOutcome(failures, 0)


def _check_block_extension(samples, rng):
    worst = 0.0
    for n in (1, 2, 3, 4, 5):
        g = automorphisms.random_lie_form_element(n, rng)
        extension = automorphisms.block_extend(g[:n, :n], g[:n, n:], g[n:, :n], g[n:, n:])
        worst = max(worst, automorphisms.lie_form_residual(g, n),
                    automorphisms.lie_form_residual(extension.assemble(), n + 1))
        inner = np.block([list(extension.inner_blocks()[:2]), list(extension.inner_blocks()[2:])])
        worst = max(worst, float(np.max(np.abs(inner - g))))
    return CheckOutcome(worst, 1e-10)


def _check_fixed_points(samples, rng):
    lie = domains.LieBall(3)
    flip = proper_maps.deck(proper_maps.LambdaN(3))[1]
    on_locus = automorphisms.fix_points_sample(flip, lie, samples, int(rng.integers(0, 2 ** 63)))
    annulus = domains.Annulus(0.5)
    empty = automorphisms.fix_points_sample(lambda z: -np.asarray(z), annulus, samples,
                                            int(rng.integers(0, 2 ** 63)))
    joukowski = proper_maps.deck(proper_maps.Joukowski(0.5, 1))[1]
    two = automorphisms.fix_points_sample(joukowski, annulus, samples, int(rng.integers(0, 2 ** 63)))
    locus_error = float(np.max(np.abs(on_locus[:, 0]), initial=0.0))
    joukowski_error = float(np.max(np.min(np.abs(two - np.array([[1.0, -1.0]])), axis=1), initial=0.0))
    passed = (on_locus.shape[0] > 0 and locus_error < 1e-8 and empty.shape[0] == 0
              and 1 <= two.shape[0] <= 2 and joukowski_error < 1e-6)
    return CheckOutcome(max(locus_error, joukowski_error), 1e-6, passed=passed,
                        details={"sigmaFixed": on_locus.shape[0], "minusIdentityFixed": empty.shape[0],
                                 "joukowskiFixed": two.shape[0]})


SUITE: List[SuiteEntry] = [
    SuiteEntry("domains.eq1_equivalence", "Lie ball: the square root form and the inequality form classify alike",
               _check_eq1_equivalence, 10 ** 5),
    SuiteEntry("domains.quotient_consistency", "quotient membership is branch independent and matches the lift",
               _check_quotient_consistency, 10 ** 5),
    SuiteEntry("domains.quotient_intrinsic", "intrinsic quotient inequalities match the lifting test",
               _check_quotient_intrinsic, 10 ** 5),
    SuiteEntry("domains.bimap_L2", "z in L_2 iff (z1 + i z2, -z1 + i z2) in the bidisc", _bimap_check("L2toBidisc"),
               10 ** 5),
    SuiteEntry("domains.bimap_L3", "z in L_3 iff its symmetric matrix is in CartanIII(2)", _bimap_check("L3toR3"),
               10 ** 5),
    SuiteEntry("domains.bimap_L4", "z in L_4 iff its matrix is in CartanI(2, 2)", _bimap_check("L4toR1"), 10 ** 5),
    SuiteEntry("domains.cartan1_2x2", "2x2 scalar inequalities agree with the singular value test",
               _check_cartan1_2x2, 10 ** 5),
    SuiteEntry("domains.minkowski_homogeneity", "M(delta_lambda w) = |lambda| M(w)", _check_minkowski_homogeneity,
               200, 10),
    SuiteEntry("domains.shilov_maximum_principle", "polynomials peak on the Shilov boundary", _check_shilov,
               10 ** 4, 100),
    SuiteEntry("domains.truncation", "leading coordinates of L_k points lie in L_m", _check_truncation, 10 ** 4),
    SuiteEntry("proper_maps.fiber_consistency", "every fiber point maps to the target and contains the source",
               _check_fiber_consistency, 10 ** 4),
    SuiteEntry("proper_maps.deck_identities", "g o g = id and eval o g = eval", _check_deck_identities, 10 ** 4),
    SuiteEntry("proper_maps.galois", "{id, g} is transitive on regular fibers", _check_galois, 10 ** 4),
    SuiteEntry("proper_maps.jacobian_lock", "closed-form jacobian matches central differences",
               _check_jacobian_lock, 10 ** 3),
    SuiteEntry("proper_maps.fix_locus", "Fix(g) equals the locus set", _check_fix_locus, 10 ** 4, 10),
    SuiteEntry("proper_maps.image_membership", "images land in the target domains", _check_image_membership,
               10 ** 4),
    SuiteEntry("proper_maps.annulus_square", "z**2 maps A(r, 1/r) onto A(r**2, 1/r**2)", _check_annulus_square,
               10 ** 4),
    SuiteEntry("proper_maps.multiplicity", "every catalogued map is 2-proper", _check_multiplicity, 10 ** 3, 100),
    SuiteEntry("reflections.conjugation_stability", "conjugates of reflections are reflections",
               _check_conjugation_stability, 200),
    SuiteEntry("reflections.basic_map_invariance", "theta o sigma = theta", _check_basic_map_invariance, 10 ** 4),
    SuiteEntry("reflections.nonex_intertwining", "pi_{2,omega} o P_omega = pi_{2,1}", _check_nonex, 10 ** 3),
    SuiteEntry("biholomorphisms.membership_transport", "p in source iff its image is in target",
               _check_membership_transport, 10 ** 5),
    SuiteEntry("biholomorphisms.commuting_squares", "b o Lambda_n = phi o a o P_n", _check_commuting_squares,
               10 ** 4),
    SuiteEntry("biholomorphisms.deck_transport", "a o P_n maps Lambda_n fibers onto phi fibers",
               _check_deck_transport, 10 ** 4),
    SuiteEntry("biholomorphisms.round_trip", "inverse o forward = id", _check_round_trip, 10 ** 4),
    SuiteEntry("bergman.form_equivalence", "difference form equals binomial closed form", _check_form_equivalence,
               10 ** 4),
    SuiteEntry("bergman.hermitian_symmetry", "K(p, q) = conj(K(q, p))", _check_hermitian, 10 ** 4),
    SuiteEntry("bergman.first_slot_constancy", "K(0, q) = n", _check_first_slot, 10 ** 3),
    SuiteEntry("bergman.witness_zero", "the explicit witness is a kernel zero", _check_witness_zero, 1),
    SuiteEntry("bergman.branch_independence", "difference form is invariant under z -> sigma z",
               _check_branch_independence, 10 ** 4),
    SuiteEntry("bergman.lqk_sampled_evidence", "no small kernel value in n = 2, one near the n = 3 witness",
               _check_lqk_evidence, 10 ** 5, 10 ** 3),
    SuiteEntry("bergman.volume_identity", "Vol(L_n) = n Vol(quotient) within 3 standard errors",
               _check_volume_identity, 10 ** 7, 10 ** 4, slow=True),
    SuiteEntry("automorphisms.rho_composition", "rho_omega o rho_omega' = rho_(omega omega')",
               _check_rho_composition, 10 ** 4),
    SuiteEntry("automorphisms.rho_membership", "rho_omega preserves quotient membership", _check_rho_membership,
               10 ** 4),
    SuiteEntry("automorphisms.rho_minkowski", "M(rho_omega w) = M(w)", _check_rho_minkowski, 10 ** 3, 10),
    SuiteEntry("automorphisms.extension_round_trip", "extended linear automorphisms induce well defined quotient "
               "automorphisms restricting to the original map", _check_extension, 10 ** 3, 10),
    SuiteEntry("automorphisms.well_definedness", "sigma commuting automorphisms preserve fibers",
               _check_well_definedness, 10 ** 4),
    SuiteEntry("automorphisms.membership_preservation", "automorphisms keep interior and boundary points",
               _check_membership_preservation, 10 ** 4, 100),
    SuiteEntry("automorphisms.block_extension", "block extension preserves the SO(n, 2) form",
               _check_block_extension, 1),
    SuiteEntry("automorphisms.fixed_points", "fixed point sampling finds the locus, nothing, or two points",
               _check_fixed_points, 10 ** 3, 100),
]


def manifest() -> List[Dict[str, Any]]:
    return [entry.to_json() for entry in SUITE]


def select(names: Optional[Iterable[str]] = None, include_slow: bool = False) -> List[SuiteEntry]:
    """Suite entries in manifest order.

    :raises ~cartanquot.exceptions.ConfigurationException: unknown entry name
    """
    if names:
        names = list(names)
        known = {entry.name for entry in SUITE}
        unknown = [name for name in names if name not in known]
        if unknown:
            raise ConfigurationException("unknown suite entries: {}".format(", ".join(unknown)))
        return [entry for entry in SUITE if entry.name in names]
    return [entry for entry in SUITE if include_slow or not entry.slow]


def run_entry(entry: SuiteEntry, config: RunConfig) -> CheckResult:
    samples = config.samples_or(entry.samples, entry.minimum)
    rng = config.rng(entry.name)
    try:
        outcome = entry.check(samples, rng)
    except CartanQuotException as error:
        LOGGER.warning("suite entry %s raised %s", entry.name, error)
        return CheckResult(entry.name, entry.module, False, None, 0.0, samples, error=str(error))
    LOGGER.debug("suite entry %s: residual %.3g tolerance %.3g", entry.name, outcome.residual, outcome.tolerance)
    return CheckResult(entry.name, entry.module, outcome.passed, outcome.residual, outcome.tolerance, samples,
                       outcome.details)


def run_suite(config: RunConfig, names: Optional[Iterable[str]] = None, include_slow: bool = False,
              live_progress: bool = False) -> SuiteReport:
    """Run suite entries, in parallel when ``config.jobs > 1``; results keep manifest order."""
    entries = select(names, include_slow)
    live_progress = live_progress and sys.stderr.isatty()
    if live_progress:
        try:
            widgets = [Percentage(), ' ', Bar(), ' ', AdaptiveETA()]
            progressbar = ProgressBar(widgets=widgets, max_value=len(entries), fd=sys.stderr)
        except Exception:  # pylint: disable=W0703
            live_progress = False

    results: List[CheckResult] = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=config.jobs) as executor:
        for done, result in enumerate(executor.map(lambda entry: run_entry(entry, config), entries), 1):
            results.append(result)
            if live_progress:
                progressbar.update(done)
    if live_progress:
        progressbar.finish()
    return SuiteReport(config, results)
