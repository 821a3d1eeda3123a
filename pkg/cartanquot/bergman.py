"""Bergman kernels of the Lie ball and of its quotient.

The Lie ball kernel is normalised by ``K(0, 0) = 1``. The quotient kernel is
available in two forms: the difference of Lie ball kernels over the fiber,
and the binomial closed form in quotient coordinates

    K(p, q) = sum_{k odd <= n} C(n, k) X^(n-k) (A^2)^((k-1)/2) / (X^2 - A^2)^n

with ``X = 1 + (p1 + sum_{j>=2} pj^2) conj(q1 + sum_{j>=2} qj^2) - 2 sum_{j>=2} pj conj(qj)``
and ``A^2 = 4 p1 conj(q1)``.
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

from math import comb
from typing import Any, Dict, Optional, Tuple
import logging

import numpy as np

from . import domains
from ._util import as_batch, complex_to_json, polydisc_uniform, to_jsonable, unbatch
from .exceptions import InvalidPointException, PoleException, UnsupportedDomainException

__all__ = ['MAX_BINOMIAL_N', 'POLE_GUARD', 'KernelValue', 'LqkWitness', 'k_lie', 'k_lie_sigma',
           'k_quotient_diff', 'k_quotient_closed', 'lqk_z0', 'lqk_witness', 'lqk_scan',
           'volume_identity_estimate', 'volume_identity_residual']

LOGGER = logging.getLogger(__name__)

MAX_BINOMIAL_N = 64
POLE_GUARD = 1e-30


class KernelValue(object):
    """Kernel value with the intermediates ``X_n`` and ``A^2``.

    Attributes are scalars for a single pair and arrays for a batch.
    """

    def __init__(self, value, xn, asq):
        self.value = value
        self.xn = xn
        self.asq = asq

    def to_json(self) -> Dict[str, Any]:
        return {"value": to_jsonable(self.value), "Xn": to_jsonable(self.xn), "Asq": to_jsonable(self.asq)}

    def __repr__(self) -> str:
        return "bergman.KernelValue(value: {}, Xn: {}, Asq: {})".format(self.value, self.xn, self.asq)


class LqkWitness(object):
    """Explicit zero of the quotient kernel: ``K(Lambda(zhat), Lambda(what)) = 0``."""

    def __init__(self, n: int, z0: complex, r: float, zhat: np.ndarray, what: np.ndarray,
                 kernel_value: complex, lie_value: complex):
        self.n = n
        self.z0 = z0
        self.r = r
        self.zhat = zhat
        self.what = what
        self.kernel_value = kernel_value
        self.lie_value = lie_value

    @property
    def relative_value(self) -> float:
        """``|K_quotient| / |K_lie(zhat, what)|``."""
        return abs(self.kernel_value) / abs(self.lie_value)

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "z0": complex_to_json(self.z0), "r": self.r, "zhat": to_jsonable(self.zhat),
                "what": to_jsonable(self.what), "kernelValue": complex_to_json(self.kernel_value),
                "lieValue": complex_to_json(self.lie_value), "relativeValue": self.relative_value}

    def __repr__(self) -> str:
        return "bergman.LqkWitness(n: {}, z0: {}, r: {}, kernel_value: {})".format(self.n, self.z0, self.r,
                                                                                self.kernel_value)


def _pair(z, w, n: int) -> Tuple[np.ndarray, np.ndarray, bool]:
    if n < 1:
        raise UnsupportedDomainException("n must be at least 1")
    first, single_first = as_batch(z, n, "z")
    second, single_second = as_batch(w, n, "w")
    if first.shape[0] != second.shape[0] and first.shape[0] != 1 and second.shape[0] != 1:
        raise InvalidPointException("batches of different sizes: {} and {}".format(first.shape[0], second.shape[0]))
    return first, second, single_first and single_second


def _lie_base(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    return (1 + np.sum(z * z, axis=1) * np.conj(np.sum(w * w, axis=1))
            - 2 * np.sum(z * np.conj(w), axis=1))


def _sigma(z: np.ndarray) -> np.ndarray:
    flipped = np.array(z, dtype=complex, copy=True)
    flipped[:, 0] = -flipped[:, 0]
    return flipped


def k_lie(z, w, n: int):
    """``K(z, w) = (1 + (z.z) conj(w.w) - 2 <z, w>)^(-n)``.

    :raises ~cartanquot.exceptions.PoleException: the base vanishes
    """
    first, second, single = _pair(z, w, n)
    base = _lie_base(first, second)
    if np.any(base == 0):
        raise PoleException("Lie ball kernel base vanishes")
    return unbatch(base ** (-n), single)


def k_lie_sigma(z, w, n: int):
    """``K(sigma z, w)`` with ``sigma`` flipping the first coordinate."""
    first, second, single = _pair(z, w, n)
    return unbatch(k_lie(_sigma(first), second, n), single)


def k_quotient_diff(z, w, n: int):
    """Quotient kernel at ``(Lambda(z), Lambda(w))`` by the difference formula.

    ``(K(z, w) - K(sigma z, w)) / (4 z1 conj(w1))``.

    :raises ~cartanquot.exceptions.PoleException: ``z1 conj(w1) = 0``, use :func:`k_quotient_closed`
    """
    first, second, single = _pair(z, w, n)
    denominator = 4 * first[:, 0] * np.conj(second[:, 0])
    if np.any(denominator == 0):
        raise PoleException("z1 conj(w1) = 0, the difference formula is singular")
    numerator = k_lie(first, second, n) - k_lie(_sigma(first), second, n)
    return unbatch(numerator / denominator, single)


def _closed_form(p: np.ndarray, q: np.ndarray, n: int):
    p_dot = p[:, 0] + np.sum(p[:, 1:] ** 2, axis=1)
    q_dot = q[:, 0] + np.sum(q[:, 1:] ** 2, axis=1)
    xn = 1 + p_dot * np.conj(q_dot) - 2 * np.sum(p[:, 1:] * np.conj(q[:, 1:]), axis=1)
    asq = 4 * p[:, 0] * np.conj(q[:, 0])
    denominator = xn * xn - asq
    if np.any(np.abs(denominator) < POLE_GUARD):
        raise PoleException("X_n^2 - A^2 vanishes, kernel pole")
    numerator = np.zeros_like(xn)
    for k in range(1, n + 1, 2):
        numerator = numerator + float(comb(n, k)) * xn ** (n - k) * asq ** ((k - 1) // 2)
    return numerator / denominator ** n, xn, asq


def k_quotient_closed(p, q, n: int) -> KernelValue:
    """Quotient kernel by the binomial closed form, in quotient coordinates.

    Only even powers of ``A`` appear, so no square root branch is involved.

    :raises ~cartanquot.exceptions.UnsupportedDomainException: ``n`` above 64
    :raises ~cartanquot.exceptions.PoleException: ``|X_n^2 - A^2| < 1e-30``
    :rtype: :class:`~cartanquot.bergman.KernelValue`
    """
    if n > MAX_BINOMIAL_N:
        raise UnsupportedDomainException("binomial closed form limited to n <= {}".format(MAX_BINOMIAL_N))
    if n < 2:
        raise UnsupportedDomainException("the quotient domain needs n >= 2")
    first, second, single = _pair(p, q, n)
    value, xn, asq = _closed_form(first, second, n)
    if single:
        return KernelValue(complex(value[0]), complex(xn[0]), complex(asq[0]))
    return KernelValue(value, xn, asq)


def lqk_z0(n: int) -> complex:
    """``(omega - 1) / (omega + 1)`` with ``omega = exp(i pi / n)``, equal to ``i tan(pi / 2n)``."""
    omega = np.exp(1j * np.pi / n)
    return complex((omega - 1) / (omega + 1))


def lqk_witness(n: int, r: float) -> LqkWitness:
    """Zero of the quotient kernel for ``n >= 3``.

    ``zhat = (z0 / r, 0, ..., 0)`` and ``what = (r, 0, ..., 0)`` lie in the Lie
    ball whenever ``|z0| < r < 1``, and the quotient kernel vanishes at their
    images because ``((1 + z0) / (1 - z0))^(2n) = 1``.

    :raises ~cartanquot.exceptions.UnsupportedDomainException: ``n < 3`` (``|z0| = 1`` for n = 2)
    :raises ~cartanquot.exceptions.InvalidPointException: ``r`` outside ``(|z0|, 1)``
    """
    if n < 2 or n > MAX_BINOMIAL_N:
        raise UnsupportedDomainException("witness needs 3 <= n <= {}, got {}".format(MAX_BINOMIAL_N, n))
    z0 = lqk_z0(n)
    if abs(z0) >= 1 - 1e-12:
        raise UnsupportedDomainException("|z0| = {:.6g} is not inside the disc for n = {}".format(abs(z0), n))
    if not abs(z0) < r < 1:
        raise InvalidPointException("r must lie in (|z0|, 1) = ({:.6g}, 1), got {}".format(abs(z0), r))
    zhat = np.zeros(n, dtype=complex)
    zhat[0] = z0 / r
    what = np.zeros(n, dtype=complex)
    what[0] = r
    lie = domains.LieBall(n)
    if lie.margin(zhat) <= 0 or lie.margin(what) <= 0:
        raise InvalidPointException("witness points leave the Lie ball")
    lifted_z = zhat.copy()
    lifted_z[0] = zhat[0] ** 2
    lifted_w = what.copy()
    lifted_w[0] = what[0] ** 2
    value = k_quotient_closed(lifted_z, lifted_w, n).value
    return LqkWitness(n, z0, r, zhat, what, value, complex(k_lie(zhat, what, n)))


def lqk_scan(n: int, samples: int, seed: int, center: Optional[Tuple[Any, Any]] = None,
             radius: float = 1e-8) -> Tuple[float, Tuple[np.ndarray, np.ndarray]]:
    """Smallest ``|K|`` over random pairs of the quotient domain.

    Pairs are uniform in the quotient domain, or, with ``center = (p, q)``,
    uniform in polydiscs of the given radius around ``p`` and ``q`` (pairs
    leaving the domain are dropped).

    :returns: ``(min_abs, (p, q))``
    """
    if samples < 10 ** 3:
        raise ValueError("lqk_scan needs at least 10**3 samples, got {}".format(samples))
    rng = np.random.default_rng(seed)
    domain = domains.QuotientL(n)
    if center is None:
        first = domain.sample(samples, rng)
        second = domain.sample(samples, rng)
    else:
        p, _ = as_batch(center[0], n, "center")
        q, _ = as_batch(center[1], n, "center")
        first = p + polydisc_uniform(rng, samples, [radius] * n)
        second = q + polydisc_uniform(rng, samples, [radius] * n)
        keep = (domain._margin(first) > 0) & (domain._margin(second) > 0)
        first, second = first[keep], second[keep]
    if first.shape[0] == 0:
        raise InvalidPointException("no sampled pair lies in the quotient domain")
    modulus = np.abs(_closed_form(first, second, n)[0])
    index = int(np.argmin(modulus))
    LOGGER.debug("lqk_scan n=%d: min |K| = %.3g over %d pairs", n, modulus[index], modulus.size)
    return float(modulus[index]), (first[index], second[index])


def volume_identity_estimate(n: int, samples: int, seed: int) -> Tuple[float, float]:
    """``|n Vol(quotient) - Vol(L_n)| / Vol(L_n)`` from two Monte-Carlo estimates, with its standard error.

    The implemented Lie kernel has ``K(0, 0) = 1`` and the quotient kernel
    ``K(0, .) = n``, so the volume of a quasi-balanced domain being
    ``1 / K(0, .)`` (in the normalisation of ``L_n``) gives
    ``Vol(L_n) = n Vol(quotient)``.

    :returns: ``(residual, stderr)`` where ``stderr`` is the combined standard error of the residual
    """
    if samples < 10 ** 4:
        raise ValueError("volume_identity_estimate needs at least 10**4 samples, got {}".format(samples))
    lie_seed, quotient_seed = np.random.SeedSequence(seed).generate_state(2)
    lie, lie_err = domains.mc_volume(domains.LieBall(n), samples, int(lie_seed))
    quotient, quotient_err = domains.mc_volume(domains.QuotientL(n), samples, int(quotient_seed))
    residual = float(abs(n * quotient - lie) / lie)
    stderr = float(np.sqrt((n * quotient_err) ** 2 + lie_err ** 2)) / lie
    LOGGER.debug("volume identity n=%d: Vol(L)=%.6g, Vol(quotient)=%.6g", n, lie, quotient)
    return residual, stderr


def volume_identity_residual(n: int, samples: int, seed: int) -> float:
    """Relative residual of ``Vol(L_n) = n Vol(quotient)`` at acceptance sample counts.

    :raises ValueError: fewer than ``10**6`` samples
    """
    if samples < 10 ** 6:
        raise ValueError("volume_identity_residual needs at least 10**6 samples, got {}".format(samples))
    return volume_identity_estimate(n, samples, seed)[0]
