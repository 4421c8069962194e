"""Exact formal normal forms for 2-D germs tangent to the identity that fix {z1 = 0} pointwise."""
from .gaussq import GaussQ
from .jets import HomPair, JetMap, jet_compose, jet_invert
from .germ import germ_decompose
from .linear import LinearChange, LinearClass, LinearLabel, classify_linear, linear_normalize
from .operator import op_apply_definition, op_matrix, solve_stage
from .resonance import in_E, sigma, tau, witness_scan
from .pipeline import Case, NormalFormReport, NormalizeOptions, normalize, verify_conjugacy

__version__ = "0.1.0"
