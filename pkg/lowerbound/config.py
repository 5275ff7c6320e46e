#!filepath: lowerbound/config.py
import logging
import os
import pathlib
from dataclasses import dataclass

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


@dataclass
class LowerBoundSettings:
    """
    Ceiling, retry and trial budgets of rank certificates and audits, loaded from the .env file.
    """
    ceiling_n: int = 7
    rank_retries: int = 3
    audit_trials: int = 10
    audit_y_points: int = 4
    max_power: int = 4

    def __post_init__(self):
        self.dotenv_path = pathlib.Path(__file__).parent.parent / '.env'
        load_dotenv(dotenv_path=self.dotenv_path, encoding='utf-8', verbose=False)

        self.ceiling_n = int(os.getenv("CIRC_CEILING_N", self.ceiling_n))
        self.rank_retries = int(os.getenv("CIRC_RANK_RETRIES", self.rank_retries))
        self.audit_trials = int(os.getenv("CIRC_AUDIT_TRIALS", self.audit_trials))
        if self.ceiling_n > 7:
            logger.warning(f"CIRC_CEILING_N={self.ceiling_n}: exact ranks of 2^n x 2^n matrices get slow past n=7")
