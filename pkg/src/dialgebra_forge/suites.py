"""Built-in identity suites, kept as source text and parsed on load.

Each suite lists ``(identity id, source)`` pairs and a default binding of
its symbols to the products and operators of the algebra under test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .dsl import IdentityDecl, parse_identity
from .errors import SuiteError

_ASSOC_L = "binary l; vars x y z; (x l y) l z = x l (y l z)"
_ASSOC_R = "binary r; vars x y z; (x r y) r z = x r (y r z)"
_DI = {"l": "left", "r": "right"}


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    identities: tuple[tuple[str, str], ...]
    binding: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    description: str = ""


def _lieg():
    out = []
    pairs = ((1, 2), (2, 1))
    for (i1, i2), (j1, j2), (k1, k2) in itertools.product(pairs, repeat=3):
        src = (
            "binary b1 b2; vars x y z; "
            f"(x b{i1} y) b{i2} z + (z b{j1} x) b{j2} y + (y b{k1} z) b{k2} x = 0"
        )
        out.append((f"lieg_{i1}{i2}_{j1}{j2}_{k1}{k2}", src))
    return tuple(out)


def _lie_pair(b):
    return (
        (f"{b}_antisymmetry", f"binary {b}; vars x y; x {b} y + y {b} x = 0"),
        (f"{b}_jacobi", f"binary {b}; vars x y z; (x {b} y) {b} z + (z {b} x) {b} y + (y {b} z) {b} x = 0"),
    )


SUITES = {
    s.name: s
    for s in (
        SuiteSpec("assoc_left", (("assoc_left", _ASSOC_L),), _DI, description="associativity of the left product"),
        SuiteSpec("assoc_right", (("assoc_right", _ASSOC_R),), _DI, description="associativity of the right product"),
        SuiteSpec(
            "tcda",
            (
                ("assoc_left", _ASSOC_L),
                ("assoc_right", _ASSOC_R),
                ("mixed_1", "binary l r; vars x y z; (x l y) r z = x l (y r z)"),
                ("mixed_2", "binary l r; vars x y z; x l (y r z) = (x r y) l z"),
                ("mixed_3", "binary l r; vars x y z; (x r y) l z = x r (y l z)"),
            ),
            _DI,
            description="totally compatible dialgebra axioms",
        ),
        SuiteSpec(
            "compatible_dialgebra",
            (
                ("assoc_left", _ASSOC_L),
                ("assoc_right", _ASSOC_R),
                ("compatibility", "binary l r; vars x y z; (x r y) l z + (x l y) r z = x l (y r z) + x r (y l z)"),
            ),
            _DI,
            description="compatible dialgebra axioms",
        ),
        SuiteSpec(
            "tridendriform",
            tuple(
                (f"tri_{n}", "binary prec succ dot star; vars x y z; " + eq)
                for n, eq in enumerate(
                    (
                        "(x prec y) prec z = x prec (y star z)",
                        "(x succ y) prec z = x succ (y prec z)",
                        "(x star y) succ z = x succ (y succ z)",
                        "(x succ y) dot z = x succ (y dot z)",
                        "(x prec y) dot z = x dot (y succ z)",
                        "(x dot y) prec z = x dot (y prec z)",
                        "(x dot y) dot z = x dot (y dot z)",
                    ),
                    start=1,
                )
            ),
            {"star": {"prec": 1, "succ": 1, "dot": 1}},
            description="the seven tridendriform axioms, star = prec + succ + dot",
        ),
        SuiteSpec(
            "rb_weight",
            (
                (
                    "rota_baxter",
                    "binary m; unary P; params lam; vars x y; "
                    "P(x) m P(y) = P(x m P(y)) + P(P(x) m y) + lam P(x m y)",
                ),
            ),
            {"m": "left"},
            {"lam": Fraction(1)},
            description="Rota-Baxter operator of weight lam on the left product",
        ),
        SuiteSpec(
            "rb_tcda",
            (
                (
                    "rota_baxter",
                    "binary l r; unary P; vars x y; P(x) l P(y) = P(x l P(y)) + P(P(x) l y) + P(x r y)",
                ),
            ),
            _DI,
            description="Rota-Baxter operator on a dialgebra",
        ),
        SuiteSpec(
            "restricted_rda",
            (
                ("rda_1", "binary l r; unary P; vars x y z; (P(x) l y) r z = P(x) l (y r z)"),
                ("rda_2", "binary l r; unary P; vars x y z; (x l P(y)) r z = x r (P(y) l z)"),
                ("rda_3", "binary l r; unary P; vars x y z; (x r y) l P(z) = x r (y l P(z))"),
            ),
            _DI,
            description="mixed conditions of a restricted Rota-Baxter dialgebra",
        ),
        SuiteSpec(
            "td_operator",
            (
                (
                    "td",
                    "binary m; unary P; vars x y; "
                    "P(x) m P(y) = P(x m P(y)) + P(P(x) m y) - P((x m P(1)) m y)",
                ),
            ),
            {"m": "left"},
            description="TD operator on a unital algebra",
        ),
        SuiteSpec(
            "semi_hom",
            (
                ("shom_1", "binary m; unary f; vars x y; f(x m y) = x m f(y)"),
                ("shom_2", "binary m; unary f; vars x y; x m f(y) = f(x) m y"),
            ),
            {"m": "left"},
            description="semi-homomorphism f of the left product",
        ),
        SuiteSpec("lie", _lie_pair("b1") + _lie_pair("b2"), description="antisymmetry and Jacobi for both brackets"),
        SuiteSpec(
            "compatible_lie",
            (
                (
                    "lie_com",
                    "binary b1 b2; vars x y z; "
                    "(x b1 y) b2 z + (z b1 x) b2 y + (y b1 z) b2 x + (x b2 y) b1 z + (z b2 x) b1 y + (y b2 z) b1 x = 0",
                ),
            ),
            description="compatibility of two Lie brackets",
        ),
        SuiteSpec(
            "tcl",
            (
                ("tcl_1", "binary b1 b2; vars x y z; (x b1 y) b2 z = (x b2 y) b1 z"),
                ("tcl_2", "binary b1 b2; vars x y z; (x b1 y) b2 z + (z b1 x) b2 y + (y b1 z) b2 x = 0"),
            ),
            description="totally compatible Lie dialgebra conditions",
        ),
        SuiteSpec("lieg", _lieg(), description="mixed Jacobi sums for all eight bracket index patterns"),
        SuiteSpec(
            "lcom3",
            (("lcom3", "binary b1 b2; vars x y z; (x b1 y) b2 z + (z b2 x) b1 y + (y b1 z) b2 x = 0"),),
        ),
        SuiteSpec(
            "rbcl",
            (
                (
                    "rbcl",
                    "binary b1 b2; unary P; vars x y; P(x) b1 P(y) = P(P(x) b1 y) + P(x b1 P(y)) + P(x b2 y)",
                ),
            ),
            description="Rota-Baxter operator on a Lie dialgebra",
        ),
        SuiteSpec(
            "postlie",
            (
                ("polie_1", "binary br; vars x y; x br y = -(y br x)"),
                ("polie_2", "binary br; vars x y z; (x br y) br z + (z br x) br y + (y br z) br x = 0"),
                (
                    "polie_3",
                    "binary circ br; vars x y z; "
                    "x circ (y circ z) - y circ (x circ z) + (y circ x) circ z - (x circ y) circ z + (y br x) circ z = 0",
                ),
                ("polie_4", "binary circ br; vars x y z; z circ (x br y) - (z circ x) br y - x br (z circ y) = 0"),
            ),
            {"br": "bracket"},
            description="PostLie algebra axioms",
        ),
    )
}


@lru_cache(maxsize=None)
def load_suite(name) -> tuple[tuple[str, IdentityDecl], ...]:
    """Parse the sources of a built-in suite."""
    try:
        spec = SUITES[name]
    except KeyError:
        raise SuiteError(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}") from None
    return tuple((ident, parse_identity(src)) for ident, src in spec.identities)


def suite_names():
    return sorted(SUITES)
