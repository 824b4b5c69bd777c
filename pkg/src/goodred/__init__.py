"""Good reduction of rational maps of P^1 over Q, decided with exact integer arithmetic."""

from .forms import IntBinaryForm, ModPForm, resultant
from .maps import Moebius, ProjPointQ, RationalMap, compose, conjugate, iterate_map, new_map
from .parse import ParseError, parse_map
from .reduction import (
    cgr_bad_primes,
    cgr_test,
    inseparable_primes,
    separability_test,
    sgr_bad_primes,
    sgr_test,
    theorem1_verify,
)

__version__ = "0.1.0"

__all__ = [
    "IntBinaryForm",
    "ModPForm",
    "Moebius",
    "ParseError",
    "ProjPointQ",
    "RationalMap",
    "cgr_bad_primes",
    "cgr_test",
    "compose",
    "conjugate",
    "inseparable_primes",
    "iterate_map",
    "new_map",
    "parse_map",
    "resultant",
    "separability_test",
    "sgr_bad_primes",
    "sgr_test",
    "theorem1_verify",
]
