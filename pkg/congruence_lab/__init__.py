"""
Congruence Lab

Exact and modular engines for Eulerian, Euler, tangent, Genocchi and Bernoulli
numbers, with a registry of congruences and identities verified prime by prime.
"""

from .arith import (
    PrimeRange,
    Residue,
    binomial_mod,
    fermat_quotient,
    mod_inverse,
    primes_in,
    represent_a2_plus_4b2,
    sqrt_mod_prime,
)
from .cache import ResidueCache
from .config import SuiteConfig, build_config
from .congruences import (
    CheckRegistry,
    CheckResult,
    evaluate_check,
    run_suite,
)
from .errors import CongruenceLabError
from .identities import IdentityRegistry, verify_identity
from .oracles import oracle_pair
from .report import Report
from .sequences import SequenceEngine
from .series import PowerSeries

__version__ = "0.1.0"
__author__ = "Congruence Lab contributors"

__all__ = [
    "CheckRegistry",
    "CheckResult",
    "CongruenceLabError",
    "IdentityRegistry",
    "PowerSeries",
    "PrimeRange",
    "Report",
    "Residue",
    "ResidueCache",
    "SequenceEngine",
    "SuiteConfig",
    "binomial_mod",
    "build_config",
    "evaluate_check",
    "fermat_quotient",
    "mod_inverse",
    "oracle_pair",
    "primes_in",
    "represent_a2_plus_4b2",
    "run_suite",
    "sqrt_mod_prime",
    "verify_identity",
]
