"""Run configuration shared by the command line subcommands."""

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

from typing import Any, Dict, Optional, Union
import configparser as config
import os
import warnings

import numpy as np

from ._util import derive_seed
from .exceptions import ConfigurationException

__all__ = ['RunConfig', 'DEFAULT_SEED', 'DEFAULT_TOL', 'DEFAULT_FORMAT', 'OUTPUT_FORMATS', 'ENV_PREFIX']

DEFAULT_SEED = 20230101
DEFAULT_TOL = 1e-12
DEFAULT_FORMAT = "json"
DEFAULT_JOBS = 1
OUTPUT_FORMATS = ("json", "csv", "text")
ENV_PREFIX = "CARTANQUOT_"


class RunConfig(object):
    """Seed, tolerance, sample count and output format of a run.

    Two runs with equal configurations produce identical report bytes.
    """

    def __init__(self, fileconf: Union[str, Dict[str, Any], None] = None, seed: Optional[int] = None,
                 tol: Optional[float] = None, samples: Optional[int] = None, output_format: Optional[str] = None,
                 jobs: Optional[int] = None):
        """Create a run configuration from a config file, explicit arguments or environment variables.

        Available environment variables are ``CARTANQUOT_SEED``, ``CARTANQUOT_TOL``,
        ``CARTANQUOT_SAMPLES``, ``CARTANQUOT_FORMAT`` and ``CARTANQUOT_JOBS``. They
        fill the values left unset by the file or the arguments; documented
        defaults fill the rest.

        :param fileconf: path to a configuration file or a corresponding dict
        :type fileconf: str or dict
        :param int seed: (optional) 64-bit nonnegative seed. Default to 20230101.
        :param float tol: (optional) boundary tolerance on margins. Default to 1e-12.
        :param int samples: (optional) sample count overriding the per command defaults.
        :param str output_format: (optional) one of json, csv, text. Default to json.
        :param int jobs: (optional) worker threads for the verification suite. Default to 1.

        Configuration sample:

        .. code-block:: ini

           [run]
           seed=7
           tol=1e-12
           samples=10000
           format=json
           jobs=4

        :raises ~cartanquot.exceptions.ConfigurationException: unreadable file or invalid value
        """
        values: Dict[str, Any] = {}
        if fileconf is not None:
            if isinstance(fileconf, dict):
                warnings.warn("Dict config should be replaced by constructor explicit arguments.")
                values = {key: fileconf.get(key) for key in ("seed", "tol", "samples", "format", "jobs")}
            else:
                cfg = config.ConfigParser()
                try:
                    with open(fileconf, "r", encoding="utf-8") as cfg_file:
                        cfg.read_string(cfg_file.read())
                except (OSError, config.Error) as error:
                    raise ConfigurationException("cannot read configuration {}: {}".format(fileconf, error)) from error
                for key in ("seed", "tol", "samples", "format", "jobs"):
                    if cfg.has_option("run", key):
                        values[key] = cfg.get("run", key)
        explicit = {"seed": seed, "tol": tol, "samples": samples, "format": output_format, "jobs": jobs}
        for key, value in explicit.items():
            if value is not None:
                values[key] = value

        for key in ("seed", "tol", "samples", "format", "jobs"):
            if values.get(key) is None and os.getenv(ENV_PREFIX + key.upper()) is not None:
                values[key] = os.getenv(ENV_PREFIX + key.upper())

        self._seed = self._parse_seed(values.get("seed", None))
        self._tol = self._parse_tol(values.get("tol", None))
        self._samples = self._parse_positive("samples", values.get("samples", None), None)
        self._output_format = self._parse_format(values.get("format", None))
        self._jobs = self._parse_positive("jobs", values.get("jobs", None), DEFAULT_JOBS)

    @staticmethod
    def _parse_seed(value) -> int:
        if value is None:
            return DEFAULT_SEED
        try:
            seed = int(value)
        except (TypeError, ValueError) as error:
            raise ConfigurationException("seed must be an integer, got {!r}".format(value)) from error
        if not 0 <= seed < 2 ** 64:
            raise ConfigurationException("seed must be a 64-bit nonnegative integer, got {}".format(seed))
        return seed

    @staticmethod
    def _parse_tol(value) -> float:
        if value is None:
            return DEFAULT_TOL
        try:
            tol = float(value)
        except (TypeError, ValueError) as error:
            raise ConfigurationException("tol must be a number, got {!r}".format(value)) from error
        if not tol >= 0 or tol == float("inf"):
            raise ConfigurationException("tol must be finite and nonnegative, got {}".format(tol))
        return tol

    @staticmethod
    def _parse_positive(name: str, value, default: Optional[int]) -> Optional[int]:
        if value is None:
            return default
        try:
            number = int(value)
        except (TypeError, ValueError) as error:
            raise ConfigurationException("{} must be an integer, got {!r}".format(name, value)) from error
        if number < 1:
            raise ConfigurationException("{} must be positive, got {}".format(name, number))
        return number

    @staticmethod
    def _parse_format(value) -> str:
        if value is None:
            return DEFAULT_FORMAT
        if value not in OUTPUT_FORMATS:
            raise ConfigurationException("format must be one of {}, got {!r}".format(", ".join(OUTPUT_FORMATS), value))
        return value

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def tol(self) -> float:
        return self._tol

    @property
    def samples(self) -> Optional[int]:
        return self._samples

    @property
    def output_format(self) -> str:
        return self._output_format

    @property
    def jobs(self) -> int:
        return self._jobs

    def samples_or(self, default: int, minimum: int = 1) -> int:
        """Configured sample count, or ``default``, never below ``minimum``."""
        return max(self._samples if self._samples is not None else default, minimum)

    def seed_for(self, stream: str) -> int:
        """Deterministic seed of a named stream (a subcommand or a suite entry)."""
        return derive_seed(self._seed, stream)

    def rng(self, stream: str) -> np.random.Generator:
        return np.random.default_rng(self.seed_for(stream))

    @classmethod
    def from_json(cls, json: Dict[str, Any]):
        """Create the run configuration from json.

        :param dict json: Dictionary representing the configuration
        :returns: The created :class:`~cartanquot.run_config.RunConfig`
        """
        return RunConfig(seed=json.get("seed"), tol=json.get("tol"), samples=json.get("samples"),
                         output_format=json.get("format"), jobs=json.get("jobs"))

    def to_json(self) -> Dict[str, Any]:
        """Get a dict ready to be json packed.

        :return: the json elements of the class.
        :rtype: `dict`
        """
        return {
            "seed": self._seed,
            "tol": self._tol,
            "samples": self._samples,
            "format": self._output_format,
            "jobs": self._jobs
        }

    def __eq__(self, other):
        if other is None or not isinstance(other, RunConfig):
            return False
        return self.to_json() == other.to_json()

    def __str__(self) -> str:
        return "run config: seed {}, tol {}, samples {}, format {}, jobs {}.".format(
            self._seed, self._tol, self._samples, self._output_format, self._jobs)

    def __repr__(self) -> str:
        return "run_config.RunConfig(seed: {}, tol: {}, samples: {}, format: {}, jobs: {})".format(
            self._seed, self._tol, self._samples, self._output_format, self._jobs)
