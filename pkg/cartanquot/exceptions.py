"""Exceptions."""


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


__all__ = ['CartanQuotException',
           'CartanQuotGenericException',
           'InvalidPointException',
           'UnsupportedDomainException',
           'UnsupportedMapException',
           'OutOfImageException',
           'PoleException',
           'NotAReflectionException',
           'FrameConditionException',
           'FiberNotPreservedException',
           'InvalidAutomorphismException',
           'InconsistentMultiplicityException',
           'ConfigurationException']


class CartanQuotException(Exception):
    """cartanquot Exception"""


class CartanQuotGenericException(CartanQuotException):
    """General computation exception"""
    def __init__(self, msg):
        super(CartanQuotGenericException, self).__init__("Error: {0}".format(msg))


class InvalidPointException(CartanQuotException, ValueError):
    """Point has the wrong shape or non finite coordinates."""


class UnsupportedDomainException(CartanQuotException, ValueError):
    """Domain tag or parameters not supported by the operation."""


class UnsupportedMapException(CartanQuotException, ValueError):
    """Map tag or parameters not supported by the operation."""


class OutOfImageException(CartanQuotException, ValueError):
    """Fiber target lies outside the image of the map."""
    def __init__(self, msg, margin=None):
        super(OutOfImageException, self).__init__(msg)
        self.margin = margin


class PoleException(CartanQuotException, ValueError):
    """Evaluation at a pole of a rational formula."""


class NotAReflectionException(CartanQuotException, ValueError):
    """Linear map is not an order 2 reflection."""


class FrameConditionException(CartanQuotException, ValueError):
    """Frame matrix does not straighten the reflection."""


class FiberNotPreservedException(CartanQuotException):
    """Map does not preserve the fibers of the quotient map."""
    def __init__(self, msg, residual=None):
        super(FiberNotPreservedException, self).__init__(msg)
        self.residual = residual


class InvalidAutomorphismException(CartanQuotException, ValueError):
    """Automorphism data violates its invariants."""


class InconsistentMultiplicityException(CartanQuotException):
    """Fiber cardinality is not constant over regular targets."""
    def __init__(self, msg, counts=None):
        super(InconsistentMultiplicityException, self).__init__(msg)
        self.counts = counts


class ConfigurationException(CartanQuotException, ValueError):
    """Malformed configuration or JSON input."""
