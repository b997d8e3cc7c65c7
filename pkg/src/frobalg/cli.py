"""
Command line front end.

Exit codes: 0 when the property holds or the computation succeeds, 1 when a
checked property fails (a JSON report still goes to standard output), 2 for
unreadable input or bad usage (diagnostics on standard error).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import cstar, diagram, endo, frobenius, groupoid, spectral
from . import serialize as io
from .errors import (DegenerateSplit, DiagramSyntaxError, FrobalgError, InvalidAlgebra,
                     InvalidInvolution, NonpositiveScale, NotCommutative, NotCStar,
                     NotFrobenius, NotNormal, NotPermutation, ShapeMismatch,
                     SignatureMismatch, TypeMismatch, UnknownGenerator)
from .involution import InvolutionMonoid
from .linalg import Tolerance

SCHEMAS = """\
JSON layouts (complex numbers are [re, im] pairs):
  Morphism       {"dom": [{"dim": k, "dual": false}, ...], "cod": [...],
                  "data": [[[re, im], ...], ...]}   rows = codomain index
  Monoid         {"dim": n, "m": n x n^2 matrix, "u": length-n vector,
                  "object": optional wire word}
  InvolutionMonoid  Monoid plus "s": n x n matrix
  StarAlgebra    {"dim": n, "mult": c[i][j][k], "unit": [...], "star": {"S": n x n}}
  Env            {"name": Morphism, ...} or a Monoid (names m, u and s)
  Groupoid       {"objects": [...], "morphisms": [{"id", "src", "tgt"}],
                  "compose": [[g, h, g o h]], "inverses": [[g, g^-1]]}
  Rep            {"dims": {obj: n}, "maps": {id: matrix}}
  Structure      {"monoids": {obj: Monoid}}
"""

PROPERTY_FAILURES = (NotCStar, NotCommutative, NotFrobenius, NotNormal, NotPermutation,
                     DegenerateSplit, InvalidAlgebra, InvalidInvolution)
INPUT_ERRORS = (io.SchemaError, ShapeMismatch, NonpositiveScale, DiagramSyntaxError,
                TypeMismatch, UnknownGenerator, SignatureMismatch, json.JSONDecodeError,
                OSError, KeyError, ValueError)


class UsageError(Exception):
    pass


def _load(path):
    try:
        return io.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from e


def _tol(args) -> Tolerance:
    return Tolerance(args.atol, args.rtol)


def _involution_monoid(doc, tol) -> InvolutionMonoid:
    return io.decode_involution_monoid(doc, default=frobenius.right_involution)


# --- commands: each returns (exit code, payload) ---------------------------

def cmd_check(args):
    M = io.decode_monoid(_load(args.monoid))
    rep = frobenius.classify(M, _tol(args))
    return (0 if rep.dagger_frobenius else 1), rep.to_dict()


def cmd_spectrum(args):
    M = io.decode_monoid(_load(args.monoid))
    return 0, io.encode_spectrum(spectral.spectrum(M, _tol(args), args.seed))


def cmd_diagonalize(args):
    f = io.decode_morphism(_load(args.matrix))
    M, phi = spectral.internal_diagonalize(f, _tol(args))
    return 0, {"monoid": io.encode_monoid(M), "phi": io.encode_morphism(phi)}


def cmd_gram(args):
    A = io.decode_star_algebra(_load(args.algebra))
    g = cstar.regular_trace_gram(A, _tol(args))
    return (0 if g.positive_definite else 1), {
        "G": io.encode_array(g.G), "eigenvalues": [float(x) for x in g.eigenvalues],
        "positive_definite": g.positive_definite}


def cmd_realize(args):
    A = io.decode_star_algebra(_load(args.algebra))
    return 0, io.encode_involution_monoid(cstar.realize(A, _tol(args)))


def cmd_decompose(args):
    IM = _involution_monoid(_load(args.monoid), _tol(args))
    W = cstar.wedderburn(IM, seed=args.seed, tol=_tol(args))
    return 0, {"idempotents": [io.encode_array(p.vector()) for p in W.idempotents],
               "block_dims": list(W.block_dims)}


def cmd_embed(args):
    M = io.decode_monoid(_load(args.monoid))
    frobenius.require_frobenius(M, _tol(args))
    return 0, io.encode_morphism(endo.embed(M))


def cmd_norm(args):
    IM = _involution_monoid(_load(args.monoid), _tol(args))
    alpha = io.decode_state(_load(args.state))
    return 0, {"norm": endo.cstar_norm(IM, alpha, _tol(args))}


def cmd_eval(args):
    env = io.decode_env(_load(args.env)) if args.env else {}
    return 0, io.encode_morphism(diagram.evaluate(args.expr, env))


def cmd_prove(args):
    env = io.decode_env(_load(args.env)) if args.env else {}
    rep = diagram.check_equal(args.lhs, args.rhs, env, _tol(args))
    return (0 if rep.passed else 1), rep.to_dict()


def cmd_free(args):
    if args.size < 0:
        raise UsageError("--size must be nonnegative")
    return 0, io.encode_monoid(spectral.free(args.size))


def cmd_gset(args):
    G = io.decode_groupoid(_load(args.groupoid))
    R = io.decode_rep(_load(args.rep), G)
    C = io.decode_structure(_load(args.cs))
    tol = _tol(args)
    rep = groupoid.validate_rep(G, R, tol)
    if not rep.ok:
        return 1, {"error": "invalid representation", **rep.to_dict()}
    cs = groupoid.check_classical_structure(G, R, C, tol)
    if not cs.ok:
        return 1, {"error": "not an equivariant classical structure", **cs.to_dict()}
    return 0, io.encode_gset(groupoid.extract_gset(G, R, C, tol, args.seed))


def cmd_rescale(args):
    M = io.decode_monoid(_load(args.monoid))
    return 0, io.encode_monoid(cstar.rescale(M, args.alpha))


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--atol", type=float, default=1e-9, help="absolute tolerance (default 1e-9)")
    common.add_argument("--rtol", type=float, default=1e-9, help="relative tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized splitting (default 0)")
    common.add_argument("--out", help="write JSON here instead of standard output")

    p = argparse.ArgumentParser(prog="frobalg", description="Dagger-Frobenius algebra toolkit.",
                                epilog=SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, epilog=SCHEMAS,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "classify a monoid; exit 0 iff dagger-Frobenius").add_argument("monoid")
    add("spectrum", cmd_spectrum, "copyable points of a commutative monoid").add_argument("monoid")
    add("diagonalize", cmd_diagonalize, "internally diagonalize a normal matrix").add_argument(
        "--matrix", required=True)
    add("gram", cmd_gram, "regular trace form of a *-algebra").add_argument("algebra")
    add("realize", cmd_realize, "special unitary involution monoid of a C*-algebra").add_argument("algebra")
    add("decompose", cmd_decompose, "central idempotents and block sizes").add_argument("monoid")
    add("embed", cmd_embed, "right-action embedding into End(A)").add_argument("monoid")
    sp = add("norm", cmd_norm, "C*-norm of a state")
    sp.add_argument("monoid")
    sp.add_argument("--state", required=True)
    sp = add("eval", cmd_eval, "evaluate a diagram expression")
    sp.add_argument("--env")
    sp.add_argument("--expr", required=True)
    sp = add("prove", cmd_prove, "compare two diagram expressions; exit 0 iff equal")
    sp.add_argument("--env")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    add("free", cmd_free, "copying monoid on a finite set").add_argument("--size", type=int, required=True)
    sp = add("gset", cmd_gset, "extract the G-set of an equivariant classical structure")
    sp.add_argument("rep")
    sp.add_argument("cs")
    sp.add_argument("--groupoid", required=True)
    sp = add("rescale", cmd_rescale, "rescale the inner product by alpha")
    sp.add_argument("monoid")
    sp.add_argument("--alpha", type=float, required=True)
    return p


def _emit(payload, args, stdout):
    text = io.dumps(payload) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        code, payload = args.func(args)
    except PROPERTY_FAILURES as e:
        report = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, NotCStar):
            report["eigenvalue"] = e.eigenvalue
        _emit(report, args, stdout)
        stderr.write(f"{type(e).__name__}: {e}\n")
        return 1
    except (UsageError, FrobalgError, *INPUT_ERRORS) as e:
        stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 2
    _emit(payload, args, stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
