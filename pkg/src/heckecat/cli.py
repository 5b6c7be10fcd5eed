"""Command-line interface: define, kl, subgroup, bs, verify.

Exit codes: 0 success, 1 failed check or cache mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from .dyer import build_subgroup, compute_sprime, enumerate_subgroup, induced_matrix
from .errors import (
    CacheMismatch, CapExceeded, HeckeCatError, InvalidSystem, SpecFileError, VerificationFailure,
)
from .groupspec import PRESETS, GroupSpec, load_spec, parse_spec, preset
from .hecke import CanonicalCache, HeckeAlgebra
from .soergel import decompose_bs, sweep_normalize
from .verify import SUITES, Verifier

log = logging.getLogger("heckecat")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad arguments or input files; exit code 2."""


def write_atomic(path: str | None, text: str) -> None:
    """Write text to path via a temporary file and rename, or to stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _load_group(args) -> GroupSpec:
    if not args.group:
        raise InputError("--group is required")
    return load_spec(args.group)


def _load_cache(path: str | None, spec: GroupSpec) -> CanonicalCache:
    fp = spec.fingerprint()
    if path is None or not Path(path).exists():
        return CanonicalCache(fp)
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheMismatch(f"cannot read cache {path}: {exc}") from exc
    cache = CanonicalCache.from_json(data, fp)
    if cache.fingerprint is None:
        cache.fingerprint = fp
    return cache


def _algebra(spec: GroupSpec, cache: CanonicalCache) -> HeckeAlgebra:
    alg = HeckeAlgebra(spec.system(), cache)
    cache.validate(alg)
    return alg


# commands

def cmd_define(args) -> int:
    if args.group:
        spec = load_spec(args.group)
    else:
        if args.weights is None:
            raise InputError("define needs --weights (and --preset or --matrix)")
        weights = [int(x) for x in args.weights.replace(",", " ").split()]
        gens = args.generators.split() if args.generators else None
        if args.preset:
            spec = preset(args.preset, weights, gens)
            if args.name:
                spec = GroupSpec(args.name, spec.matrix, spec.weights, spec.generators)
        elif args.matrix:
            try:
                matrix = json.loads(args.matrix)
            except json.JSONDecodeError as exc:
                raise InputError(f"--matrix is not JSON: {exc}") from exc
            payload = {"name": args.name or "custom", "rank": len(matrix),
                       "coxeter_matrix": matrix, "weights": weights}
            if gens:
                payload["generators"] = gens
            spec = parse_spec(json.dumps(payload), "--matrix")
        else:
            raise InputError("define needs --preset or --matrix")
    write_atomic(args.out, spec.dumps())
    return EXIT_OK


def cmd_kl(args) -> int:
    spec = _load_group(args)
    cache = _load_cache(args.cache, spec)
    alg = _algebra(spec, cache)
    elements = alg.system.enumerate_elements(args.max_length, args.cap)
    for w in elements:
        alg.canonical(w)
    log.info("computed %d canonical basis elements", len(elements))
    if args.format == "csv":
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["w", "y", "poly"])
        for w in elements:
            for y in alg.canonical(w).support():
                out.writerow([" ".join(str(s + 1) for s in w.word),
                              " ".join(str(s + 1) for s in y.word),
                              str(alg.canonical(w).coeff(y))])
        text = buf.getvalue()
    else:
        text = dump_json(cache.to_json(elements))
    write_atomic(args.out, text)
    if args.cache:
        write_atomic(args.cache, dump_json(cache.to_json()))
    return EXIT_OK


def cmd_subgroup(args) -> int:
    spec = _load_group(args)
    sysm = spec.system()
    try:
        sub = build_subgroup(sysm, args.cap)
    except CapExceeded:
        # W' infinite or larger than the cap: report S' and the matrix
        sub = compute_sprime(sysm, args.cap)
        induced_matrix(sysm, sub)
        try:
            enumerate_subgroup(sysm, sub, args.max_length, args.cap)
            sub.elements_complete = sub.elements_complete and all(x for row in sub.matrix for x in row)
        except CapExceeded:
            sub.elements = []
    report = {"group": spec.name, **sub.to_json()}
    if report["order"] is None:
        report["order"] = "cap-exceeded"
    write_atomic(args.out, dump_json(report))
    return EXIT_OK


def cmd_bs(args) -> int:
    spec = _load_group(args)
    try:
        expr = spec.parse_word(args.expr if isinstance(args.expr, str) else " ".join(args.expr))
    except SpecFileError as exc:
        raise InputError(str(exc)) from exc
    cache = _load_cache(args.cache, spec)
    alg = _algebra(spec, cache)
    rep = decompose_bs(alg, expr)
    out = rep.to_json()
    try:
        sub = compute_sprime(alg.system, args.cap)
        nf = sweep_normalize(alg, sub, expr)
        out["sweep"] = {"factors": [i + 1 for i in nf.factors], "tail": nf.to_json()["tail"]}
    except CapExceeded:
        out["sweep"] = None
    if args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["x", "poly"])
        for x, p in rep.multiplicities.items():
            wr.writerow([" ".join(str(s + 1) for s in x.word), str(p)])
        text = buf.getvalue()
    else:
        text = dump_json(out)
    write_atomic(args.out, text)
    if args.cache:
        write_atomic(args.cache, dump_json(cache.to_json()))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    spec = _load_group(args)
    cache = _load_cache(args.cache, spec)
    cache.validate(HeckeAlgebra(spec.system(), cache))
    verifier = Verifier(spec, max_length=args.max_length, cap=args.cap, seed=args.seed,
                        samples=args.samples, cache=cache)
    report = verifier.run(args.suite)
    for c in report.checks:
        line = f"{c.status.upper():11s} {c.id} ({c.instances} instances)"
        if c.counterexample and c.status in ("fail", "info"):
            line += f": {c.counterexample}"
        print(line, file=sys.stderr)
    write_atomic(args.out, dump_json(report.to_json(with_timing=not args.no_timing)))
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heckecat",
                                description="Hecke algebras with weights in {0, 1} and their reflection subgroups.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=False):
        sp.add_argument("--group", help="group spec file (JSON)")
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--max-length", type=int, default=12)
        sp.add_argument("--cap", type=int, default=2000, help="element cap for enumerations")
        sp.add_argument("--seed", type=int, default=0)
        if fmt:
            sp.add_argument("--format", choices=("json", "csv"), default="json")

    d = sub.add_parser("define", help="write a validated group spec file")
    d.add_argument("--group", help="existing spec file to validate and normalize")
    d.add_argument("--preset", choices=sorted(PRESETS))
    d.add_argument("--matrix", help="Coxeter matrix as JSON, 0 for infinity")
    d.add_argument("--weights", help="weights, e.g. '0 1'")
    d.add_argument("--generators", help="generator names, e.g. 's t'")
    d.add_argument("--name")
    d.add_argument("--out")
    d.set_defaults(func=cmd_define)

    k = sub.add_parser("kl", help="canonical basis table up to --max-length")
    common(k, fmt=True)
    k.add_argument("--cache", help="cache file to read and update")
    k.set_defaults(func=cmd_kl)

    s = sub.add_parser("subgroup", help="S', palindromes, induced matrix and order of W'")
    common(s)
    s.set_defaults(func=cmd_subgroup)

    b = sub.add_parser("bs", help="decompose the character of a word")
    common(b, fmt=True)
    b.add_argument("--cache")
    b.add_argument("expr", nargs="*", help="generator names or 1-based indices")
    b.set_defaults(func=cmd_bs)

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--samples", type=int, default=500, help="random samples per algebraic check")
    v.add_argument("--cache")
    v.add_argument("--no-timing", action="store_true", help="omit the duration, for byte-stable reports")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CacheMismatch as exc:
        print(f"error: CacheMismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, SpecFileError, InvalidSystem, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (VerificationFailure, AssertionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except HeckeCatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
