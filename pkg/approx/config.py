#!filepath: approx/config.py
import logging
import os
import pathlib
from dataclasses import dataclass

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


@dataclass
class ApproxSettings:
    """
    Settings for convergence witnesses and coefficient clouds, loaded from the .env file.
    """
    witness_kmax: int = 10
    cloud_size: int = 64

    def __post_init__(self):
        self.dotenv_path = pathlib.Path(__file__).parent.parent / '.env'
        load_dotenv(dotenv_path=self.dotenv_path, encoding='utf-8', verbose=False)

        self.witness_kmax = int(os.getenv("CIRC_WITNESS_KMAX", self.witness_kmax))
        self.cloud_size = int(os.getenv("CIRC_CLOUD_SIZE", self.cloud_size))
        if self.witness_kmax < 1:
            logger.warning(f"CIRC_WITNESS_KMAX={self.witness_kmax} is not positive, using 10.")
            self.witness_kmax = 10
