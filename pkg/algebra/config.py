#!filepath: algebra/config.py
import logging
import os
import pathlib
from dataclasses import dataclass, field
from typing import List

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_MODULAR_PRIMES = [2305843009213693951, 1000000007, 998244353]


@dataclass
class AlgebraSettings:
    """
    Settings for the exact arithmetic kernels, loaded from the .env file.
    """
    laurent_precision: int = 16
    modular_primes: List[int] = field(default_factory=lambda: list(DEFAULT_MODULAR_PRIMES))

    def __post_init__(self):
        self.dotenv_path = pathlib.Path(__file__).parent.parent / '.env'
        load_dotenv(dotenv_path=self.dotenv_path, encoding='utf-8', verbose=False)

        self.laurent_precision = int(os.getenv("CIRC_LAURENT_PRECISION", self.laurent_precision))
        primes_str = os.getenv("CIRC_MODULAR_PRIMES")
        if primes_str is not None:
            try:
                self.modular_primes = [int(p) for p in primes_str.split(",") if p.strip()]
            except ValueError:
                logger.warning("Could not parse CIRC_MODULAR_PRIMES from .env, using default primes.")
                self.modular_primes = list(DEFAULT_MODULAR_PRIMES)
        if self.laurent_precision < 1:
            logger.warning(f"CIRC_LAURENT_PRECISION={self.laurent_precision} is not positive, using 16.")
            self.laurent_precision = 16
