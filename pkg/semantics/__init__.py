#!filepath: semantics/__init__.py
from .config import SemanticsSettings
from .consistency import ConsistencyResult, Verdict, consistency_check
from .errors import (BudgetExceeded, DivisionByZero, DivisionByZeroFunction, FingerprintExhausted,
                     FingerprintMismatch, SemanticsError)
from .evaluate import EvalTrace, eval_partial, eval_point, run_circuit, run_partial
from .fingerprint import Fingerprint, equal_results, fingerprint, fingerprints_agree, node_value_table
from .sampling import SplitRandom, random_integers
from .symbolic import SymbolicExpansion, expand_symbolic, variable_names
