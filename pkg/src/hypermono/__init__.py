"""Exact certificates and limit-set pictures for degree-six symplectic
hypergeometric monodromy groups."""

from .certify import (
    Certificate,
    VerificationReport,
    search_witness,
    transvection_analyze,
    verify_certificate,
)
from .exactmath import ExactMatrix, ExactVector, IntPoly
from .hypergeo import HyperCase, ParameterMultiset, build_case, companion, parameters_to_polynomial
from .registry import builtin_case, builtin_certificate
from .words import Word, evaluate, invert, parse_and_reduce

__version__ = "0.1.0"
