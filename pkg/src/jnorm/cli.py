"""Command-line front end.

Exit status: 0 on success, 2 on bad input, 3 when a mathematical check fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from math import isqrt
from pathlib import Path

from . import bounds
from .core import EVector, Sequence, e_norm_sq, e_norm_sq_bruteforce, james_norm_sq, l2_norm_sq
from .dispersal import TwoSet, decompose_dispersed, validate_decomposition
from .errors import JNormError
from .experiments import KINDS, dichotomy_sweep, emit_csv, emit_svg
from .linalg import det_oracle
from .rational import fmt, parse_vector

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 2, 3


class InputError(Exception):
    pass


def _load(raw: str):
    """Parse an inline JSON argument, or the file it names when prefixed with '@'."""
    if raw.startswith("@"):
        try:
            raw = Path(raw[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {raw[1:]}: {exc.strerror}") from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg} at position {exc.pos}") from None


def _evector(raw) -> EVector:
    doc = _load(raw)
    if isinstance(doc, dict):
        doc = doc.get("e")
    try:
        return EVector(parse_vector(doc))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad e vector: {exc}") from None


def _sequence(raw) -> Sequence:
    doc = _load(raw)
    if isinstance(doc, dict):
        doc = doc.get("x")
    try:
        return Sequence(parse_vector(doc))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad sequence: {exc}") from None


def _sqrt_exact(q: Fraction) -> Fraction | None:
    p, r = isqrt(q.numerator), isqrt(q.denominator)
    return Fraction(p, r) if p * p == q.numerator and r * r == q.denominator else None


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


def cmd_norm(args) -> int:
    e, x = _evector(args.e), _sequence(args.x)
    _emit({"e_norm_sq": fmt(e_norm_sq(e, x)), "l2_sq": fmt(l2_norm_sq(x)),
           "james_sq": fmt(james_norm_sq(x))})
    return EXIT_OK


def cmd_classify(args) -> int:
    e = _evector(args.e)
    result = bounds.classify(e, samples=args.samples, seed=args.seed)
    _emit(result.to_json())
    return EXIT_OK if result.upper.ok and result.lower.ok else EXIT_CHECK


def cmd_decompose(args) -> int:
    doc = _load(args.omega)
    try:
        omega = TwoSet.from_flat(doc)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad 2-set: {exc}") from None
    dec = decompose_dispersed(omega, args.d)
    ok = validate_decomposition(omega, dec)
    _emit({"dispersal": dec.dispersal, "bound": dec.bound, "m": dec.m, "valid": ok,
           "classes": [list(c.flat()) for c in dec.classes]})
    return EXIT_OK if ok else EXIT_CHECK


def cmd_constant(args) -> int:
    e = _evector(args.e)
    cert = bounds.lemma_certificate(args.lemma, e)
    root = _sqrt_exact(cert.constant_sq)
    _emit({"lemma": cert.lemma_id, "constant": None if root is None else fmt(root),
           "constant_sq": fmt(cert.constant_sq), "regime": cert.regime,
           "inequality": cert.to_json()["inequality"]})
    return EXIT_OK


def cmd_bounds(args) -> int:
    e = _evector(args.e)
    rng = random.Random(args.seed)
    passed: dict[str, int] = {}
    for _ in range(args.samples):
        x = bounds.random_sequence(rng, args.max_support)
        for key, ok in bounds.regime_checks(e, x).items():
            passed[key] = passed.get(key, 0) + int(ok)
    regime = bounds.JAMES if e.sum_zero else bounds.HILBERT
    _emit({"regime": regime, "samples": args.samples, "passed": passed})
    return EXIT_OK if all(v == args.samples for v in passed.values()) else EXIT_CHECK


def cmd_sweep(args) -> int:
    e = _evector(args.e)
    rows = dichotomy_sweep(e, args.kind, args.nmax, seed=args.seed)
    data = emit_csv(rows)
    if args.csv == "-":
        sys.stdout.write(data.decode("utf-8"))
    else:
        Path(args.csv).write_bytes(data)
    if args.svg:
        Path(args.svg).write_bytes(emit_svg(rows, title=f"e = ({', '.join(fmt(c) for c in e.coords)}), {args.kind}"))
    if args.csv != "-":
        _emit({"rows": len(rows), "csv": args.csv, "svg": args.svg})
    return EXIT_OK


def _selftest_lines(seed: int):
    rng = random.Random(seed)

    def rat():
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))

    bad = 0
    for _ in range(300):
        d = rng.randint(1, 3)
        e = EVector((Fraction(rng.choice([-2, -1, 1, 2])),) + tuple(rat() for _ in range(d - 1)))
        x = Sequence(tuple(rat() for _ in range(rng.randint(0, 9 // d))))
        bad += e_norm_sq(e, x) != e_norm_sq_bruteforce(e, x)
    yield "oracle equivalence (300 cases)", bad == 0

    bad = 0
    for _ in range(100):
        e = EVector(tuple(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
                          for _ in range(rng.randint(1, 6))))
        bad += det_oracle(bounds.insertion_matrix(e)) != bounds.det_closed_form(e)
    yield "insertion-matrix determinant (100 cases)", bad == 0

    bad = 0
    for _ in range(500):
        k = rng.randint(1, 20)
        flat = sorted(rng.sample(range(1, 200), 2 * k))
        omega = TwoSet.from_flat(flat)
        d = rng.randint(1, 8)
        bad += not validate_decomposition(omega, decompose_dispersed(omega, d))
    yield "dispersed decomposition (500 cases)", bad == 0

    for e in ([1], [2], [1, 2, 3], [1, -1], [2, -1, -1], [1, 1, -2]):
        c = bounds.classify(e, samples=20, seed=seed)
        expected = bounds.JAMES if sum(e) == 0 else bounds.HILBERT
        yield f"classify {e} -> {c.verdict}", c.verdict == expected and c.upper.ok and c.lower.ok


def cmd_selftest(args) -> int:
    ok_all = True
    for label, ok in _selftest_lines(args.seed):
        ok_all &= bool(ok)
        print(f"[{'PASS' if ok else 'FAIL'}] {label}")
    return EXIT_OK if ok_all else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jnorm", description="Exact e-variation norms and J(e) certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("norm", help="squared e-norm, l2 norm and James norm of x")
    s.add_argument("--e", required=True)
    s.add_argument("--x", required=True)
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("classify", help="Hilbert/James verdict with sampled certificates")
    s.add_argument("--e", required=True)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("decompose", help="split a 2-set into d-dispersed classes")
    s.add_argument("--omega", required=True, help="flat even-length index array")
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("constant", help="embedding constant of one lemma")
    s.add_argument("--lemma", type=int, choices=(7, 9, 10, 11, 12, 13), required=True)
    s.add_argument("--e", required=True)
    s.set_defaults(func=cmd_constant)

    s = sub.add_parser("bounds", help="run the regime's inequality checks on random sequences")
    s.add_argument("--e", required=True)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-support", type=int, default=8)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("sweep", help="ratio sweep over a sequence family")
    s.add_argument("--e", required=True)
    s.add_argument("--kind", choices=KINDS, default="plateau")
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--csv", required=True, help="output path, or - for stdout")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("selftest", help="reduced oracle and invariant suite")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, JNormError) as exc:
        print(f"jnorm: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
