#!filepath: semantics/config.py
import logging
import os
import pathlib
from dataclasses import dataclass

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


@dataclass
class SemanticsSettings:
    """
    Settings for evaluation, fingerprinting and consistency checks, loaded from the .env file.
    """
    sample_bound: int = 65536
    fingerprint_points: int = 10
    fingerprint_floor: int = 4
    resample_retries: int = 16
    consistency_trials: int = 8
    expand_budget: int = 200000
    workers: int = 1

    def __post_init__(self):
        self.dotenv_path = pathlib.Path(__file__).parent.parent / '.env'
        load_dotenv(dotenv_path=self.dotenv_path, encoding='utf-8', verbose=False)

        self.sample_bound = int(os.getenv("CIRC_SAMPLE_BOUND", self.sample_bound))
        self.fingerprint_points = int(os.getenv("CIRC_FINGERPRINT_POINTS", self.fingerprint_points))
        self.fingerprint_floor = int(os.getenv("CIRC_FINGERPRINT_FLOOR", self.fingerprint_floor))
        self.resample_retries = int(os.getenv("CIRC_RESAMPLE_RETRIES", self.resample_retries))
        self.consistency_trials = int(os.getenv("CIRC_CONSISTENCY_TRIALS", self.consistency_trials))
        self.expand_budget = int(os.getenv("CIRC_EXPAND_BUDGET", self.expand_budget))
        self.workers = max(1, int(os.getenv("CIRC_WORKERS", self.workers)))
        if self.fingerprint_floor > self.fingerprint_points:
            logger.warning(f"CIRC_FINGERPRINT_FLOOR={self.fingerprint_floor} exceeds the point count, lowering it.")
            self.fingerprint_floor = self.fingerprint_points
