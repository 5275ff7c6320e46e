#!filepath: family/config.py
import logging
import os
import pathlib
from dataclasses import dataclass

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


@dataclass
class FamilySettings:
    """
    Ceilings and retry budgets of the elimination family generators, loaded from the .env file.
    """
    f_ceiling: int = 10
    jet_ceiling: int = 7
    identification_retries: int = 3

    def __post_init__(self):
        self.dotenv_path = pathlib.Path(__file__).parent.parent / '.env'
        load_dotenv(dotenv_path=self.dotenv_path, encoding='utf-8', verbose=False)

        self.f_ceiling = int(os.getenv("CIRC_F_CEILING", self.f_ceiling))
        self.jet_ceiling = int(os.getenv("CIRC_JET_CEILING", self.jet_ceiling))
        self.identification_retries = int(os.getenv("CIRC_IDENTIFICATION_RETRIES", self.identification_retries))
