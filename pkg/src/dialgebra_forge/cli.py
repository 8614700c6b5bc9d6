"""``dialgebra-forge`` command line.

Exit status: 0 success or PASS, 1 FAIL, 2 any error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import algebras as alg
from .derive import commutator_lie, postlie_of, postlie_of_tridendriform, tridendriform_of
from .dsl import parse_identity
from .errors import ForgeError
from .freealg import LEFT, RIGHT, Alphabet, elem_prod, eval_hom, infer_alphabet, parse_element, rb_p, truncate
from .rational import parse_rational
from .suites import SUITES, suite_names
from .verify import EXHAUSTIVE, SAMPLE, check_identity, check_suite

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _alphabet(args, *texts):
    if getattr(args, "alphabet", None):
        return Alphabet.parse(args.alphabet)
    return infer_alphabet(*texts)


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise ForgeError(f"cannot write {out}: {exc.strerror}") from None


def _load(path):
    try:
        return alg.load_algebra(path)
    except OSError as exc:
        raise ForgeError(f"cannot read {path}: {exc.strerror}") from None


def _require_structure(A):
    if not isinstance(A, alg.StructureAlgebra):
        raise ForgeError(f"expected a dialgebra ADF, got kind {A.KIND}")
    return A


def _binding_value(text):
    """``name``, ``id``, a rational, or ``name:coef,name:coef``."""
    if ":" in text:
        out = {}
        for part in text.split(","):
            name, _, coef = part.partition(":")
            out[name.strip()] = parse_rational(coef.strip())
        return out
    try:
        return parse_rational(text)
    except ValueError:
        return text


def _bindings(pairs):
    out = {}
    for item in pairs or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ForgeError(f"binding {item!r} is not of the form symbol=value")
        out[name.strip()] = _binding_value(value.strip())
    return out


# ---------------------------------------------------------------- subcommands


def cmd_mul(args):
    a = _alphabet(args, args.a, args.b)
    x, y = parse_element(args.a, a), parse_element(args.b, a)
    print(elem_prod(x, y, args.op))
    return EXIT_OK


def cmd_p(args):
    a = _alphabet(args, args.elem)
    print(rb_p(parse_element(args.elem, a)))
    return EXIT_OK


def cmd_gen(args):
    if args.degree < 1:
        raise ForgeError("degree must be >= 1")
    A = truncate(Alphabet.parse(args.alphabet), args.degree, args.sign)
    text = alg.write_algebra(A)
    _emit(text, args.out)
    if args.out not in (None, "-"):
        print(f"dim {A.dim}")
    return EXIT_OK


def cmd_verify(args):
    A = _load(args.path)
    binding = _bindings(args.bind)
    binding.update({k: v for k, v in _bindings(args.param).items()})
    kw = dict(mode=args.mode, samples=args.samples, seed=args.seed, cap=args.cap, jobs=args.jobs)
    if args.identity:
        try:
            src = Path(args.identity).read_bytes() if args.identity != "-" else sys.stdin.buffer.read()
        except OSError as exc:
            raise ForgeError(f"cannot read {args.identity}: {exc.strerror}") from None
        name = Path(args.identity).stem if args.identity != "-" else "identity"
        d = parse_identity(src)
        report = check_identity(A, d, binding, ident_id=name, **kw)
        report = replace(report, suite=name)
    else:
        report = check_suite(A, args.suite, binding=binding, **kw)
    sys.stdout.write(report.text())
    return EXIT_OK if report.passed else EXIT_FAIL


_DERIVATIONS = {
    "tridendriform": lambda A: tridendriform_of(_require_structure(A)),
    "lie": lambda A: commutator_lie(_require_structure(A)),
    "postlie": lambda A: postlie_of(commutator_lie(_require_structure(A))),
    "postlie-via-tri": lambda A: postlie_of_tridendriform(tridendriform_of(_require_structure(A))),
}


def cmd_derive(args):
    A = _load(args.path)
    _emit(alg.write_algebra(_DERIVATIONS[args.to](A)), args.out)
    return EXIT_OK


def cmd_eval(args):
    target = _require_structure(_load(args.target))
    x = parse_element(args.elem, _alphabet(args, args.elem))
    assignment = {}
    for item in args.assign or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise ForgeError(f"assignment {item!r} is not of the form generator=vector")
        assignment[name.strip()] = target.parse_vector(value)
    print(target.format_vector(eval_hom(x, target, assignment)))
    return EXIT_OK


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def cmd_construct(args):
    kind = args.kind
    if kind not in ("quotient", "field") and not args.inputs:
        raise ForgeError(f"{kind} needs an input file")
    if kind == "quotient":
        A = alg.polynomial_quotient(args.n)
    elif kind == "field":
        A = alg.field_algebra()
    elif kind == "central-weight":
        base = _require_structure(_load(args.inputs[0]))
        w = base.parse_vector(args.w)
        if not alg.is_central(base, w):
            _warn("w is not central; the result need not be totally compatible")
        A = alg.from_central_weight(base, w)
        if args.rb:
            e = base.basis_vector
            A = A.with_operator(
                "P", alg.LinearOperator.from_function(base.dim, lambda j: alg.vec_scale(-1, base.apply(LEFT, w, e(j))))
            )
    elif kind == "td":
        base = _require_structure(_load(args.inputs[0]))
        P = base.operator(args.op) if args.c is None else alg.LinearOperator.identity(base.dim, args.c)
        A = alg.from_td_operator(base, P)
    elif kind == "semihoms":
        base = _require_structure(_load(args.inputs[0]))
        f, g = base.operator(args.f), base.operator(args.g)
        if not alg.commutes(f, g):
            _warn("f and g do not commute")
        for name in (args.f, args.g):
            if not check_suite(base, "semi_hom", binding={"f": name}).passed:
                _warn(f"{name} is not a semi-homomorphism")
        A = alg.from_commuting_semihoms(base, f, g)
    elif kind == "semidirect":
        base = _require_structure(_load(args.inputs[0]))
        A = alg.semidirect_double(base)
        if base.has_operator("P"):
            A = A.with_operator("P", alg.hat_p(base))
    elif kind == "matrix":
        A = alg.matrix_algebra(_require_structure(_load(args.inputs[0])), args.n)
    elif kind == "tensor":
        if len(args.inputs) != 2:
            raise ForgeError("tensor needs two input files")
        A = alg.tensor_product(*(_require_structure(_load(p)) for p in args.inputs))
    elif kind == "scale":
        A = alg.scale(_require_structure(_load(args.inputs[0])), args.r, args.s)
    elif kind == "mutate":
        base = _load(args.inputs[0])
        try:
            i, j, k = (int(t) - 1 for t in args.at.split(","))
        except ValueError:
            raise ForgeError("--at expects three 1-based indices i,j,k") from None
        for idx in (i, j, k):
            if not 0 <= idx < base.dim:
                raise ForgeError(f"index {idx + 1} out of range for dimension {base.dim}")
        A = alg.mutate(base, args.where, i, j, k, args.value)
    else:  # pragma: no cover - argparse restricts choices
        raise ForgeError(f"unknown construction {kind!r}")
    _emit(alg.write_algebra(A), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _fraction(text):
    try:
        return parse_rational(text)
    except ForgeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    p = _Parser(prog="dialgebra-forge", description="Exact computations with totally compatible dialgebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("mul", help="product of two free-dialgebra elements")
    s.add_argument("--op", choices=(LEFT, RIGHT), required=True)
    s.add_argument("--alphabet")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(fn=cmd_mul)

    s = sub.add_parser("p", help="apply the canonical Rota-Baxter operator")
    s.add_argument("--alphabet")
    s.add_argument("elem")
    s.set_defaults(fn=cmd_p)

    s = sub.add_parser("gen", help="export a degree truncation of the free dialgebra")
    s.add_argument("--alphabet", required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--sign", type=_fraction, default=Fraction(1))
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("verify", help="check a suite or identity on an ADF algebra")
    s.add_argument("path")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--suite", choices=suite_names())
    g.add_argument("--identity", help="file holding one identity declaration")
    s.add_argument("--mode", choices=(EXHAUSTIVE, SAMPLE), default=EXHAUSTIVE)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cap", type=int, default=10)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--bind", action="append", metavar="SYMBOL=VALUE")
    s.add_argument("--param", action="append", metavar="NAME=RATIONAL")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("derive", help="derived tridendriform, Lie or PostLie structure")
    s.add_argument("path")
    s.add_argument("--to", choices=sorted(_DERIVATIONS), required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_derive)

    s = sub.add_parser("eval", help="evaluate the homomorphism extending a generator assignment")
    s.add_argument("elem")
    s.add_argument("--target", required=True)
    s.add_argument("--alphabet")
    s.add_argument("--assign", action="append", metavar="GEN=VECTOR")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("construct", help="build an algebra from standard constructions")
    s.add_argument(
        "kind",
        choices=(
            "quotient",
            "field",
            "central-weight",
            "td",
            "semihoms",
            "semidirect",
            "matrix",
            "tensor",
            "scale",
            "mutate",
        ),
    )
    s.add_argument("inputs", nargs="*")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--w", help="weight vector in the input basis")
    s.add_argument("--rb", action="store_true", help="add P(x) = -x·w")
    s.add_argument("--c", type=_fraction, help="TD operator c·id")
    s.add_argument("--op", default="P")
    s.add_argument("--f", default="f")
    s.add_argument("--g", default="g")
    s.add_argument("--r", type=_fraction, default=Fraction(1))
    s.add_argument("--s", type=_fraction, default=Fraction(1))
    s.add_argument("--where", default="left")
    s.add_argument("--at", default="1,1,1")
    s.add_argument("--value", type=_fraction, default=Fraction(1))
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_construct)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify" and args.suite and args.suite not in SUITES:
            raise ForgeError(f"unknown suite {args.suite}")
        return args.fn(args)
    except (ForgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except RecursionError:
        print("error: input nested too deeply", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
