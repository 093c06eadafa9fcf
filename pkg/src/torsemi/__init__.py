"""Affine monoids, their saturations and canonical decompositions, and finite
commutative semirings arising as quotients of monoid semirings."""

from ._accel import backend, set_backend, using_backend
from .congruence import CongruencePresentation, quotient
from .monoid import (
    AffineMonoid,
    CanonicalDecomposition,
    SaturatedMonoid,
    canonical_decomposition,
    kmin,
    normalize,
    saturate,
)
from .outcome import Undecided
from .polynomial import SparsePoly, parse_poly, shift_into
from .qsubring import PrimeSet, QSubringDescriptor, canonical_form
from .semiring import FiniteSemiring, check_diagram, check_theorem_5, grothendieck, profile, validate

__all__ = [
    "AffineMonoid",
    "CanonicalDecomposition",
    "CongruencePresentation",
    "FiniteSemiring",
    "PrimeSet",
    "QSubringDescriptor",
    "SaturatedMonoid",
    "SparsePoly",
    "Undecided",
    "backend",
    "canonical_decomposition",
    "canonical_form",
    "check_diagram",
    "check_theorem_5",
    "grothendieck",
    "kmin",
    "normalize",
    "parse_poly",
    "profile",
    "quotient",
    "saturate",
    "set_backend",
    "shift_into",
    "using_backend",
    "validate",
]

__version__ = "0.1.0"
