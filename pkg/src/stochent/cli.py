"""Command-line interface.

Exit codes: 0 success (conjecture findings included), 1 a theorem suite
reported violations, 2 usage or parse error, 3 validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import classical as cl
from . import quantum as qu
from . import structure as st
from .errors import ConvergenceError, ShapeError, ValidationError
from .fileio import (
    FormatError,
    decode_matrix,
    decode_vector,
    dumps,
    encode_matrix,
    read_channel,
    read_json,
    read_matrix,
    write_json,
)
from .rng import make_rng
from .verifier import SUITES, THEOREM_SUITES, fuzz_conjecture, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    pass


def format_value(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.12f}"


def _default_seed() -> int:
    raw = os.environ.get("STOCHENT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"STOCHENT_SEED must be an integer, got {raw!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _read_vector(path) -> np.ndarray:
    return decode_vector(read_json(path), str(path))


def _weights(args):
    return None if args.weights is None else _read_vector(args.weights)


# --------------------------------------------------------------------------
# entropy / rel-entropy
# --------------------------------------------------------------------------


def cmd_entropy(args) -> int:
    if args.kind == "shannon":
        value = cl.shannon_entropy(_read_vector(args.file))
    elif args.kind == "weighted":
        value = cl.weighted_entropy(read_matrix(args.file), _weights(args))
    elif args.kind == "von-neumann":
        value = qu.von_neumann_entropy(read_matrix(args.file))
    else:
        value = qu.map_entropy(read_channel(args.file))
    print(format_value(value))
    return EXIT_OK


def cmd_rel_entropy(args) -> int:
    if args.kind == "vector":
        value = cl.relative_entropy_vec(_read_vector(args.first), _read_vector(args.second))
    elif args.kind == "stochastic":
        value = cl.relative_entropy_stoch(read_matrix(args.first), read_matrix(args.second), _weights(args))
    elif args.kind == "quantum":
        value = qu.quantum_relative_entropy(read_matrix(args.first), read_matrix(args.second))
    else:
        value = qu.channel_relative_entropy(read_channel(args.first), read_channel(args.second))
    print(format_value(value))
    return EXIT_OK


# --------------------------------------------------------------------------
# check / fuzz
# --------------------------------------------------------------------------


def _emit_reports(reports, out, include_timing: bool) -> tuple[int, int]:
    theorem_violations = sum(len(r.violations) for r in reports if r.theorem)
    findings = sum(len(r.violations) for r in reports if not r.theorem)
    doc = {"suites": [r.to_dict(include_timing) for r in reports],
           "theorem_violations": theorem_violations,
           "conjecture_findings": findings}
    for r in reports:
        if r.theorem:
            status = "PASS" if r.ok else "FAIL"
        else:
            status = f"{len(r.violations)} findings"
        print(f"{r.suite_name}: {status} ({r.checks_evaluated} checks, max gap {r.max_gap_observed})")
    if out:
        write_json(out, doc)
    return theorem_violations, findings


def cmd_check(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if args.suite == "all":
        names = list(SUITES)
    elif args.suite in SUITES:
        names = [args.suite]
    else:
        raise UsageError(f"unknown suite {args.suite!r}; choose 'all' or one of: {', '.join(SUITES)}")
    reports = [run_suite(name, args.trials, args.dims, seed) for name in names]
    theorem_violations, _ = _emit_reports(reports, args.out, args.timing)
    return EXIT_VIOLATION if theorem_violations else EXIT_OK


def cmd_fuzz(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    report = fuzz_conjecture(args.trials, args.dims, args.kraus_counts, seed)
    _emit_reports([report], args.out, args.timing)
    return EXIT_OK


# --------------------------------------------------------------------------
# construct
# --------------------------------------------------------------------------


def _get(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise ValidationError(f"{where}: expected an object")
    if key not in doc:
        raise ValidationError(f"{where}.{key}: missing field")
    return doc[key]


def _matrix_field(doc, key, where):
    try:
        return decode_matrix(_get(doc, key, where), f"{where}.{key}")
    except FormatError as exc:
        raise ValidationError(str(exc)) from None


def _vector_field(doc, key, where):
    try:
        return decode_vector(_get(doc, key, where), f"{where}.{key}")
    except FormatError as exc:
        raise ValidationError(str(exc)) from None


def _perm_field(doc, key, where):
    value = _get(doc, key, where)
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ValidationError(f"{where}.{key}: expected a list of integers (0-based permutation)")
    return np.array(value, dtype=int)


def _number_field(doc, key, where):
    value = _get(doc, key, where)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}.{key}: expected a number")
    return float(value)


def _blocks(spec) -> list:
    blocks = _get(spec, "blocks", "spec")
    if not isinstance(blocks, list) or not blocks:
        raise ValidationError("spec.blocks: expected a non-empty list")
    return blocks


def parse_theorem1_spec(spec) -> st.Theorem1Spec:
    out = []
    for k, b in enumerate(_blocks(spec)):
        w = f"spec.blocks[{k}]"
        out.append(st.Theorem1Block(
            mu=_number_field(b, "mu", w), nu=_number_field(b, "nu", w),
            p=_vector_field(b, "p", w), q=_vector_field(b, "q", w), r=_vector_field(b, "r", w),
            perm=_perm_field(b, "perm", w), t=_matrix_field(b, "T", w)))
    return st.Theorem1Spec(out)


def parse_theorem2_spec(spec) -> st.Theorem2Spec:
    out = []
    for k, b in enumerate(_blocks(spec)):
        w = f"spec.blocks[{k}]"
        out.append(st.Theorem2Block(
            r=_vector_field(b, "r", w), perm=_perm_field(b, "perm", w), t=_matrix_field(b, "T", w),
            left=_matrix_field(b, "L", w), right=_matrix_field(b, "R", w),
            mu=_vector_field(b, "mu", w), nu=_vector_field(b, "nu", w)))
    return st.Theorem2Spec(out)


def parse_strong_spec(spec) -> list[st.StrongAdditivityBlock]:
    out = []
    for k, b in enumerate(_blocks(spec)):
        w = f"spec.blocks[{k}]"
        out.append(st.StrongAdditivityBlock(
            xl=_matrix_field(b, "XL", w), yl=_matrix_field(b, "YL", w),
            yr=_matrix_field(b, "YR", w), zr=_matrix_field(b, "ZR", w),
            pi_l=_perm_field(b, "pi_l", w), pi_r=_perm_field(b, "pi_r", w)))
    return out


def _random_spec(which: str, dim: int, seed: int) -> dict:
    """A random spec document of the requested kind with total dimension ``dim``."""
    rng = make_rng(seed)
    shapes = st.random_block_shapes(dim, rng)
    if which == "thm1":
        spec = st.random_theorem1_spec(rng, shapes)
        return {"blocks": [{"mu": b.mu, "nu": b.nu, "p": b.p.tolist(), "q": b.q.tolist(), "r": b.r.tolist(),
                            "perm": b.perm.tolist(), "T": encode_matrix(b.t)} for b in spec.blocks]}
    if which == "thm2":
        spec = st.random_theorem2_spec(rng, shapes)
        return {"blocks": [{"r": b.r.tolist(), "perm": b.perm.tolist(), "T": encode_matrix(b.t),
                            "L": encode_matrix(b.left), "R": encode_matrix(b.right),
                            "mu": b.mu.tolist(), "nu": b.nu.tolist()} for b in spec.blocks]}
    if which == "additivity":
        divisors = [d for d in range(1, dim + 1) if dim % d == 0]
        m = int(divisors[rng.integers(len(divisors))])
        n = dim // m
        return {"xl": encode_matrix(st.random_stochastic(m, rng)), "pi_l": rng.permutation(m).tolist(),
                "yr": encode_matrix(st.random_stochastic(n, rng)), "pi_r": rng.permutation(n).tolist()}
    blocks = st.random_strong_additivity_blocks(rng, shapes)
    return {"blocks": [{"XL": encode_matrix(b.xl), "YL": encode_matrix(b.yl), "YR": encode_matrix(b.yr),
                        "ZR": encode_matrix(b.zr), "pi_l": b.pi_l.tolist(), "pi_r": b.pi_r.tolist()}
                       for b in blocks]}


def construct(which: str, spec) -> tuple[dict[str, np.ndarray], dict]:
    """Build the saturating instance for ``spec``; return output matrices and a verification record."""
    if which == "thm1":
        t, p, q = st.construct_theorem1(parse_theorem1_spec(spec))
        lhs, rhs = st.theorem1_sides(t, p, q)
        outputs = {"T": t, "p": p, "q": q}
        statement = "H(Tp||Tq) = H(p||q)"
    elif which == "thm2":
        t, a, b = st.construct_theorem2(parse_theorem2_spec(spec))
        p = _vector_field(spec, "p", "spec") if isinstance(spec, dict) and "p" in spec else None
        lhs, rhs = st.theorem2_sides(t, a, b, p)
        outputs = {"T": t, "A": a, "B": b}
        statement = "H_p(TA||TB) = H_p(A||B)"
    elif which == "additivity":
        x, y = st.construct_additivity(
            _matrix_field(spec, "xl", "spec"), _perm_field(spec, "pi_l", "spec"),
            _matrix_field(spec, "yr", "spec"), _perm_field(spec, "pi_r", "spec"))
        lhs, rhs = st.additivity_sides(x, y)
        outputs = {"X": x, "Y": y}
        statement = "H(XY) = H(X) + H(Y)"
    else:
        x, y, z = st.construct_strong_additivity(parse_strong_spec(spec))
        lhs, rhs = st.strong_additivity_sides(x, y, z)
        outputs = {"X": x, "Y": y, "Z": z}
        statement = "H(XYZ) + H(Y) = H(XY) + H(YZ)"
    gap = abs(lhs - rhs) if math.isfinite(lhs) and math.isfinite(rhs) else (0.0 if lhs == rhs else math.inf)
    record = {"which": which, "statement": statement,
              "lhs": lhs if math.isfinite(lhs) else "inf",
              "rhs": rhs if math.isfinite(rhs) else "inf",
              "gap": gap if math.isfinite(gap) else "inf"}
    return outputs, record


def cmd_construct(args) -> int:
    if args.spec is not None:
        spec = read_json(args.spec)
    else:
        seed = _default_seed() if args.seed is None else args.seed
        spec = _random_spec(args.which, args.dim, seed)
    outputs, record = construct(args.which, spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.spec is None:
        write_json(out / "spec.json", spec)
    for name, mat in outputs.items():
        write_json(out / f"{name}.json", encode_matrix(mat))
    write_json(out / "verification.json", record)
    print(dumps(record), end="")
    return EXIT_OK


# --------------------------------------------------------------------------
# birkhoff / kraus-matrix
# --------------------------------------------------------------------------


def cmd_birkhoff(args) -> int:
    dec = st.birkhoff_decompose(np.real_if_close(read_matrix(args.file)))
    print(json.dumps([[w, list(p)] for w, p in dec.terms]))
    return EXIT_OK


def cmd_kraus_matrix(args) -> int:
    b = qu.kraus_matrix(read_channel(args.file))
    if args.out:
        write_json(args.out, encode_matrix(b))
    else:
        print(dumps(encode_matrix(b)), end="")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stochent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="entropy of a vector, stochastic matrix, density matrix or channel")
    p.add_argument("--kind", required=True, choices=["shannon", "weighted", "von-neumann", "map"])
    p.add_argument("--weights", help="probability vector for --kind weighted (default uniform)")
    p.add_argument("file")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("rel-entropy", help="relative entropy of two inputs of the same kind")
    p.add_argument("--kind", required=True, choices=["vector", "stochastic", "quantum", "channel"])
    p.add_argument("--weights", help="probability vector for --kind stochastic (default uniform)")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_rel_entropy)

    for name, func, help_text in (("check", cmd_check, "run theorem suites"),
                                  ("fuzz", cmd_fuzz, "fuzz the Kraus-matrix conjecture")):
        p = sub.add_parser(name, help=help_text)
        if name == "check":
            p.add_argument("--suite", default="all", help="suite name or 'all'")
        else:
            p.add_argument("--kraus-counts", type=_int_list, default=None,
                           help="comma-separated Kraus counts to sample from (default 1..N^2)")
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--dims", type=_int_list, default=[2, 3, 4])
        p.add_argument("--seed", type=int, default=None, help="default: $STOCHENT_SEED or 0")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--timing", action="store_true", help="include elapsed times in the report")
        p.set_defaults(func=func)

    p = sub.add_parser("construct", help="build a saturating instance and verify it")
    p.add_argument("--which", required=True, choices=["thm1", "thm2", "additivity", "strong"])
    p.add_argument("--spec", help="spec JSON; without it a random spec is drawn")
    p.add_argument("--dim", type=int, default=4, help="total dimension of a random spec")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("birkhoff", help="Birkhoff decomposition of a bistochastic matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_birkhoff)

    p = sub.add_parser("kraus-matrix", help="Kraus matrix B(Φ) of a channel")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_kraus_matrix)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, UsageError) as exc:
        print(f"stochent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ShapeError, ConvergenceError) as exc:
        print(f"stochent: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
