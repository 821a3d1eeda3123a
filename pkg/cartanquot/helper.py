import logging
import sys
from typing import TextIO


DETAILED_LOG_FORMAT = ("%(asctime)s|%(process)d(%(processName)s):%(thread)d|%(name)s:%(filename)s:"
                       "%(lineno)s|%(funcName)s|%(levelname)s|%(message)s")

DEFAULT_LOG_FORMAT = "%(levelname)s|%(name)s|%(message)s"


class Log():
    """Helper to create the package logger used by the command line harness.
    """

    @staticmethod
    def get_logger_for_stream(stream: TextIO = None, log_format: str = DEFAULT_LOG_FORMAT,
                              level: int = logging.INFO):
        """Create the ``cartanquot`` logger writing to a stream.

        Every library module logs through a child of this logger, so a single
        handler here collects the debug traces of the samplers and solvers.
        Reports never go through the logger: they are written on stdout by
        :mod:`cartanquot.cli`, which is why the default stream is stderr.

        :param TextIO stream:
          (optional) the stream used to write the logs.
          Default is sys.stderr.
        :param str log_format:
          (optional) a custom format used for the logs.
          Default is "%(levelname)s|%(name)s|%(message)s"
          For more detailed log, DETAILED_LOG_FORMAT can be used.
        :param int level:
          (optional) logging level. Default is ``logging.INFO``.

        :rtype: logging.Logger
        :returns: The created logger.
        """

        formatter = logging.Formatter(log_format)
        handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
        handler.setFormatter(formatter)

        logger = logging.getLogger("cartanquot")
        for previous in list(logger.handlers):
            logger.removeHandler(previous)
        logger.addHandler(handler)
        logger.setLevel(level)
        return logger
