"""Command-line front end: one JSON document on stdout, logs on stderr.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import galois, reducible, support, trinomial
from .numeric import TrackingError

log = logging.getLogger("rootmonodromy")

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _positive(kind):
    def conv(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"expected a positive value, got {text}")
        return v
    return conv


def _seed(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def read_support(arg: str) -> support.SupportSet:
    """A path to a JSON file, or the JSON array itself."""
    try:
        text = Path(arg).read_text() if Path(arg).is_file() else arg
    except OSError:             # inline JSON longer than a file name
        text = arg
    try:
        return support.SupportSet.from_json(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"cannot read support {arg!r}: {exc}") from None


def _fraction(f) -> str:
    return f"{f.numerator}/{f.denominator}"


def cmd_invariants(a):
    s = support.normalize(read_support(a.support))
    out = support.invariants(s).as_dict()
    out["support"] = [list(p) for p in s.points]
    return out


def cmd_predict(a):
    pred = galois.predict(read_support(a.support))
    out = pred.as_dict()
    out["braid"] = ", ".join(out["braid_generators"])
    return out


def cmd_trinomial(a):
    res = trinomial.to_type1(read_support(a.support))
    if isinstance(res, trinomial.Type2):
        return {"type": 2, "support": [list(p) for p in res.points]}
    T, tr = res
    data = trinomial.coamoeba(T)
    pred = trinomial.predicted_monodromy(T, data.base_arg)
    out = {
        "type": 1, "m": T.m, "n": T.n, "a": T.a, "b": T.b, "d": tr.d, "t_inverted": tr.t_inverted,
        "delta": T.delta, "rho": T.rho,
        "vertices": [[_fraction(th), _fraction(nu)] for th, nu in data.singular_vertices],
        "base_arg": _fraction(data.base_arg),
        "loops": {f"l{j}": str(w) for j, w in pred.items()},
        "fiber_histogram": {str(k): v for k, v in trinomial.fiber_data(T, data.base_arg).items()},
    }
    if a.verify:
        cert = galois.certify_trinomial(T, eps=a.eps, outer=a.outer, tol=a.tol)
        out["certificate"] = cert.as_dict()
    return out


def cmd_verify(a):
    s = support.normalize(read_support(a.support))
    if len(s) == 3 and s.k == 1 and not support.is_collinear(s.points):
        res = trinomial.to_type1(s)
        if not isinstance(res, trinomial.Type2) and res[1].d == 1 and not res[1].t_inverted:
            log.info("trinomial support: tracking the railway loops")
            cert = galois.certify_trinomial(res[0], eps=a.eps, outer=a.outer, tol=a.tol)
            out = cert.as_dict()
            out["words"] = [str(w) for w in cert.tracked_words]
            out["loops"] = len(cert.tracked_words)
            out["match"] = cert.ok
            return out
    rep = galois.verify(s, seed=a.seed, tol=a.tol)
    return rep.as_dict()


def cmd_reducible(a):
    A1, A2 = read_support(a.a1), read_support(a.a2)
    P = reducible.normalize_pair(A1.points, A2.points)
    if isinstance(P, reducible.TwoLines):
        pred = reducible.predicted_galois_twolines(A1.points, A2.points, bound=a.enumerate_bound)
        out = pred.as_dict()
        out["case"] = "two lines"
        if a.verify:
            G = reducible.numeric_group_twolines(A1.points, A2.points, seed=a.seed, tol=a.tol)
            out.update({"numeric_order": G.order(), "verified": G == pred.group})
        return out
    pred = reducible.predicted_galois_reducible(P)
    out = pred.as_dict()
    out["case"] = "one line"
    if P.N <= a.enumerate_bound:
        try:
            K, _ = reducible.kernel_bruteforce(P, bound=a.enumerate_bound)
            out["kernel_matches_enumeration"] = K == pred.kernel
        except ValueError as exc:
            log.info("kernel enumeration skipped: %s", exc)
    if a.verify:
        rep = reducible.numeric_check_reducible(P, seed=a.seed, tol=a.tol, prediction=pred)
        out.update({"numeric_order": rep.numeric_order, "verified": rep.verdict})
        out.update(rep.extra)
    return out


def cmd_specialize(a):
    s = support.normalize(read_support(a.support))
    w, s2 = support.monomial_specialization(s)
    inv = support.invariants(s2)
    return {"weights": list(w), "support": [list(p) for p in s2.points], "invariants": inv.as_dict()}


COMMANDS = {
    "invariants": cmd_invariants,
    "predict": cmd_predict,
    "trinomial": cmd_trinomial,
    "verify": cmd_verify,
    "reducible": cmd_reducible,
    "specialize": cmd_specialize,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rootmonodromy", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    numeric = _Parser(add_help=False)
    numeric.add_argument("--seed", type=_seed, default=0)
    numeric.add_argument("--eps", type=_positive(float), default=1e-2, help="inner radius, as a multiple of rho")
    numeric.add_argument("--outer", type=_positive(float), default=1e2, help="outer radius, as a multiple of rho")
    numeric.add_argument("--tol", type=_positive(float), default=1e-10)
    for verb in ("invariants", "predict", "specialize"):
        sp = sub.add_parser(verb)
        sp.add_argument("--support", required=True)
    sp = sub.add_parser("trinomial", parents=[numeric])
    sp.add_argument("--support", required=True)
    sp.add_argument("--verify", action="store_true")
    sp = sub.add_parser("verify", parents=[numeric])
    sp.add_argument("--support", required=True)
    sp = sub.add_parser("reducible", parents=[numeric])
    sp.add_argument("--a1", required=True)
    sp.add_argument("--a2", required=True)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--enumerate-bound", type=_positive(int), default=10)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s", force=True)
    if args.verb in ("trinomial", "verify", "reducible") and not args.eps < 1 < args.outer:
        log.error("need --eps < 1 < --outer")
        return EXIT_INVALID
    try:
        out = COMMANDS[args.verb](args)
    except (ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    except (TrackingError, np.linalg.LinAlgError, ArithmeticError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    json.dump(out, sys.stdout, default=str)
    sys.stdout.write("\n")
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
