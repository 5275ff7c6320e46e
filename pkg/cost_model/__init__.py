#!filepath: cost_model/__init__.py
from .report import CostReport, ParameterAudit, cost, essential_parameters, parameter_audit
