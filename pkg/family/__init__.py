#!filepath: family/__init__.py
from .builders import (boolean_encoding, build_beta_n, build_G, build_H, build_H_at, emit_h, h_at_point, h_poly,
                       h_value, multilinear_monomial, roots)
from .config import FamilySettings
from .eliminant import (F_coeff_T_jet, F_coeff_T_jet_symbolic, SymbolicJet, eval_F, identity_sides,
                        verify_elimination_identity)
from .errors import CeilingExceeded, FamilyError, IdentificationFailure
from .formula import FormulaReport, GrowthReport, UniversalSize, build_formula, formula_growth, universal_size
from .identification import (IdentificationReport, Xi, find_identification_points, identification_points,
                             point_count, span_matrix, theta, verify_identification, xi_domain)
from .instance import EliminationInstance, build_instance
