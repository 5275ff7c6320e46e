#!filepath: transforms/__init__.py
from .broadcast import broadcast
from .errors import InconsistentBroadcast, InconsistentJoin, RewriteChangedResults, TransformError
from .gc import garbage_collect, reachable
from .join import JoinSpec, join
from .reduce import ReductionReport, hash_cons, reduce, reduce_circuit
from .restrict import RestrictionResult, check_membership, restrict
