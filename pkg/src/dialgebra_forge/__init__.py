"""Exact computer algebra for totally compatible dialgebras.

Free dialgebra arithmetic, finite structure-constant algebras, the derived
tridendriform / Lie / PostLie structures, and an identity checker driven by
a small multilinear-identity language.
"""

from .algebras import (
    FiniteAlgebra,
    LinearOperator,
    StructureAlgebra,
    read_algebra,
    write_algebra,
)
from .derive import (
    LieDialgebra,
    PostLieAlgebra,
    TridendriformAlgebra,
    commutator_lie,
    postlie_of,
    postlie_of_tridendriform,
    tridendriform_of,
)
from .dsl import parse_identity, pretty_print, validate_multilinear
from .errors import ForgeError
from .freealg import Alphabet, BasisWord, FreeElement, eval_hom, parse_element, rb_p, truncate
from .kernel import BACKEND
from .verify import CheckReport, check_identity, check_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Alphabet",
    "BasisWord",
    "CheckReport",
    "FiniteAlgebra",
    "ForgeError",
    "FreeElement",
    "LieDialgebra",
    "LinearOperator",
    "PostLieAlgebra",
    "StructureAlgebra",
    "TridendriformAlgebra",
    "check_identity",
    "check_suite",
    "commutator_lie",
    "eval_hom",
    "parse_element",
    "parse_identity",
    "postlie_of",
    "postlie_of_tridendriform",
    "pretty_print",
    "rb_p",
    "read_algebra",
    "tridendriform_of",
    "truncate",
    "validate_multilinear",
    "write_algebra",
]
