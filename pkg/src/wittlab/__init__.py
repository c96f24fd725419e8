"""Big Witt vectors, additive Gamma-cycles and cubical homology over exact rings."""

from .errors import (
    InvariantError,
    NonUFDError,
    PreconditionError,
    SchemaError,
    WittLabError,
)
from .rings import ZZ, Integers, IntegersModN, PolynomialRing, PrimeField, Ring, parse_ring
from .truncation import TruncationSet, full
from .witt import WittVector, ghost, teichmuller
from .cycles import GammaCycle, GammaCycleClass, tau, wedge

__version__ = "0.1.0"

__all__ = [
    "WittLabError",
    "SchemaError",
    "PreconditionError",
    "NonUFDError",
    "InvariantError",
    "Ring",
    "ZZ",
    "Integers",
    "IntegersModN",
    "PrimeField",
    "PolynomialRing",
    "parse_ring",
    "TruncationSet",
    "full",
    "WittVector",
    "ghost",
    "teichmuller",
    "GammaCycle",
    "GammaCycleClass",
    "tau",
    "wedge",
    "__version__",
]
