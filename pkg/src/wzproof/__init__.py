"""Automatic WZ proofs of non-terminating hypergeometric summation identities."""

from .algebra import Polynomial, RationalFunction, parse_poly, parse_rational
from .conditions import ConvergenceCondition
from .hyperterm import HyperTerm, TheoremSpec, gamma_product
from .oracle import PrecisionConfig, check_theorem_numeric
from .prover import ProofTranscript, Verdict, extend_domain, prove, replay
from .telescope import gosper, verify_certificate, wz_pair, zeilberger

__version__ = "0.1.0"

__all__ = [
    "ConvergenceCondition",
    "HyperTerm",
    "Polynomial",
    "PrecisionConfig",
    "ProofTranscript",
    "RationalFunction",
    "TheoremSpec",
    "Verdict",
    "check_theorem_numeric",
    "extend_domain",
    "gamma_product",
    "gosper",
    "parse_poly",
    "parse_rational",
    "prove",
    "replay",
    "verify_certificate",
    "wz_pair",
    "zeilberger",
]
