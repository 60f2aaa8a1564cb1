# -*- coding: utf-8 -*-
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Union

import colorlog
import numpy as np
from mpi4py import MPI

from ._globals import DEFAULT_MAX_N, MAX_N_ENV


def get_max_n(max_n: Optional[int] = None) -> int:
    """
    Resolve the vertex-count limit of the brute-force oracle.

    Parameters
    ----------
    max_n : int, optional
        An explicit limit. Takes precedence over the environment.

    Returns
    -------
    int
        The explicit limit if given, else the value of ``MDTOOL_MAX_N`` if set, else ``DEFAULT_MAX_N``.

    Raises
    ------
    ValueError
        If the resolved limit is not a positive integer.
    """
    if max_n is None:
        raw = os.environ.get(MAX_N_ENV)
        if raw is None or raw.strip() == "":
            return DEFAULT_MAX_N
        try:
            max_n = int(raw)
        except ValueError:
            raise ValueError(f"{MAX_N_ENV} must be an integer, got {raw!r}.")
    if max_n < 1:
        raise ValueError(f"Oracle size limit must be positive, got {max_n}.")
    return max_n


class WordStream:
    """
    Portable stream of raw 64-bit words.

    Uses numpy's ``PCG64`` bit generator seeded through a ``SeedSequence`` built from the entropy words. Only raw
    words are consumed, so a given seed yields the same stream on every platform and numpy version.

    Attributes
    ----------
    bit_generator : numpy.random.PCG64
        The underlying bit generator.
    """

    def __init__(self, *entropy: int) -> None:
        """
        Initialize the stream.

        Parameters
        ----------
        entropy : int
            Non-negative integers the stream is seeded with, e.g., a search seed and an instance index.
        """
        self.bit_generator = np.random.PCG64(np.random.SeedSequence(list(entropy)))

    def word(self) -> int:
        """Return the next 64-bit word as a Python integer."""
        return int(self.bit_generator.random_raw())

    def uniform(self) -> float:
        """Return a float in [0, 1) built from the top 53 bits of the next word."""
        return (self.word() >> 11) * (1.0 / (1 << 53))

    def bernoulli(self, probability: float) -> bool:
        """Return True with the given probability."""
        return self.uniform() < probability

    def integer(self, low: int, high: int) -> int:
        """Return an integer in the closed range [low, high]."""
        return low + self.word() % (high - low + 1)



def set_logger_config(
    level: int = logging.INFO,
    log_file: Optional[Union[str, Path]] = None,
    log_to_stderr: bool = True,
    log_rank: bool = False,
    colors: bool = True,
) -> None:
    """
    Set up the logger. Should only need to be done once.

    Log records go to stderr so that stdout only carries command payloads.

    Parameters
    ----------
    level : int
        The default level for logging. Default is ``logging.INFO``.
    log_file : str | Path, optional
        The file to save the log to.
    log_to_stderr : bool
        A flag indicating if the log should be printed on stderr. Default is True.
    log_rank : bool
        A flag for prepending the MPI rank to the logging message. Default is False.
    colors : bool
        A flag for using colored logs. Default is True.
    """
    rank = f"{MPI.COMM_WORLD.Get_rank()}:" if log_rank else ""
    # Get base logger for mdtool.
    base_logger = logging.getLogger("mdtool")
    simple_formatter = logging.Formatter(
        f"{rank}[%(asctime)s][%(name)s][%(levelname)s] - %(message)s"
    )
    std_handler = logging.StreamHandler(stream=sys.stderr)
    if colors:
        formatter = colorlog.ColoredFormatter(
            fmt=f"{rank}[%(cyan)s%(asctime)s%(reset)s][%(blue)s%(name)s%(reset)s]"
            f"[%(log_color)s%(levelname)s%(reset)s] - %(message)s",
            datefmt=None,
            reset=True,
            log_colors={
                "DEBUG": "cyan",
                "INFO": "green",
                "WARNING": "yellow",
                "ERROR": "red",
                "CRITICAL": "red,bg_white",
            },
            secondary_log_colors={},
        )
        std_handler.setFormatter(formatter)
    else:
        std_handler.setFormatter(simple_formatter)

    # Re-configuring replaces earlier handlers instead of stacking them.
    for handler in list(base_logger.handlers):
        base_logger.removeHandler(handler)
    if log_to_stderr:
        base_logger.addHandler(std_handler)
    if log_file is not None:
        file_handler = logging.FileHandler(filename=log_file)
        file_handler.setFormatter(simple_formatter)
        base_logger.addHandler(file_handler)
    base_logger.setLevel(level)
