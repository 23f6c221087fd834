"""GRS-based McEliece/Niederreiter cryptosystem with a dense secret transformation."""

from .gf import GF, Field, FieldSpec, FieldError, field_make
from .grs import DecodeFailure, GrsCode, grs_from_generator, grs_make, random_grs

__all__ = [
    "GF",
    "Field",
    "FieldSpec",
    "FieldError",
    "field_make",
    "DecodeFailure",
    "GrsCode",
    "grs_make",
    "grs_from_generator",
    "random_grs",
]
