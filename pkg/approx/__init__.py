#!filepath: approx/__init__.py
from .cloud import CoefficientCloud, MembershipReport, cloud_membership, sample_cloud
from .config import ApproxSettings
from .errors import (ApproxError, EmptyCloud, InstanceViolation, NonParameterDivision, NotHolomorphic,
                     WitnessExhausted)
from .evaluate import ApproxResult, approx_eval, eval_in_x, represents
from .instance import ApproxInstance, load_germ, parse_germ, parse_germ_data
from .witness import WitnessRow, WitnessTable, convergence_witness, deviation
from .catalog import (constant_germ, epsilon_germ, linear_tail_circuit, linear_tail_germ, pole_circuit, shifted_germ,
                      square_limit_circuit)
