#!filepath: lowerbound/__init__.py
from .audit import CHARTS, AuditReport, AuditVerdict, audit_candidate, chart_arity, chart_map
from .certificate import RankCertificate, jet_matrix, prime_points, random_points, rank_certificate
from .config import LowerBoundSettings
from .errors import JetInconsistency, LowerBoundError, RankDeficiencyError
from .evaluators import XI_FORMS, naive_evaluator, root_weights, xi_evaluator
