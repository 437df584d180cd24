"""Command-line front end.

Subcommands:
  compute <config.json>        evaluate one job, JSON report on stdout
  verify <dims...> [--json]    run the identity catalog per dimension
  trace --dim n [words...]     exact trace/supertrace of a generator word
  moments --dim n --alpha ...  exact sphere moment of a monomial

Exit codes: 0 success; 1 a final-theorem row failed in verify; 2 parse or
validation error; 3 dimension/case inconsistency in a compute job.
SPECTRAL_TORSION_SEED fixes the randomized-trial seed for verify.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .clifford import Multivector, grading, mv_mul, supertrace, trace
from .forms import OneForm, ThreeForm
from .moments import moment, vol_numeric
from .scalars import DIM_F, PI, SymScalar, TR_F_PHI, rational, vol_sphere
from .symbols import CASE_NAMES, Grading, TorsionGrading, TorsionVector, VectorGrading
from .torsion import ManifoldSpec, UnsupportedDimension, spectral_torsion
from .verify import DEFAULT_SEED, FINAL_IDS, verify_suite

EXIT_OK = 0
EXIT_FINAL_MISMATCH = 1
EXIT_PARSE = 2
EXIT_INCONSISTENT = 3


class ConfigError(Exception):
    """Malformed configuration (exit 2)."""


class ConsistencyError(Exception):
    """Dimension/case inconsistency (exit 3)."""


def _seed_from_env() -> int:
    raw = os.environ.get("SPECTRAL_TORSION_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"SPECTRAL_TORSION_SEED must be an integer: {raw!r}") from exc


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------


def _parse_rational_field(value, where: str):
    if not isinstance(value, str):
        raise ConfigError(f"{where}: rationals must be strings, got {value!r}")
    try:
        return rational(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ConfigError(f"{where}: bad rational {value!r} ({exc})") from exc


def _parse_oneform(config: dict, key: str, n: int, required: bool,
                   case_field: bool = True) -> OneForm | None:
    if key not in config or config[key] is None:
        if required and case_field:
            raise ConsistencyError(f"case requires field {key!r}")
        if required:
            raise ConfigError(f"missing required field {key!r}")
        return None
    items = config[key]
    if not isinstance(items, list):
        raise ConfigError(f"{key}: expected an array of rational strings")
    comps = [_parse_rational_field(s, f"{key}[{i}]") for i, s in enumerate(items)]
    if len(comps) != n:
        raise ConsistencyError(f"{key} has {len(comps)} components, dimension is {n}")
    return OneForm(comps)


def _parse_threeform(config: dict, key: str, n: int, required: bool) -> ThreeForm | None:
    if key not in config or config[key] is None:
        if required:
            raise ConsistencyError(f"case requires field {key!r}")
        return None
    items = config[key]
    if not isinstance(items, list):
        raise ConfigError(f"{key}: expected an array of [a, b, c, rational] records")
    comps = {}
    for record in items:
        if not isinstance(record, list) or len(record) != 4:
            raise ConfigError(f"{key}: bad record {record!r}")
        a, b, c, value = record
        if not all(isinstance(x, int) for x in (a, b, c)):
            raise ConfigError(f"{key}: indices must be integers in {record!r}")
        coeff = _parse_rational_field(value, f"{key}{(a, b, c)}")
        if not 1 <= a < b < c <= n:
            raise ConsistencyError(
                f"{key}: triple {(a, b, c)} not strictly increasing within 1..{n}")
        comps[(a, b, c)] = comps.get((a, b, c), rational(0)) + coeff
    return ThreeForm(n, comps)


def _build_case(config: dict, n: int):
    name = config.get("case")
    if not isinstance(name, str) or name not in CASE_NAMES:
        raise ConfigError(f"case must be one of {sorted(CASE_NAMES)}, got {name!r}")
    if name == "torsion_vector":
        t = _parse_threeform(config, "T", n, required=True)
        y = _parse_oneform(config, "Y", n, required=False) or OneForm.zero(n)
        return TorsionVector(t, y)
    if name == "grading":
        return Grading()
    if name == "vector_grading":
        return VectorGrading(_parse_oneform(config, "X", n, required=True))
    return TorsionGrading(_parse_threeform(config, "T", n, required=True))


def default_numeric_env(n: int) -> dict:
    """pi and sphere volumes from the Gamma closed form; unit twist bundle."""
    env = {PI: math.pi, TR_F_PHI: 1.0, DIM_F: 1.0}
    for k in range(1, n):
        env[vol_sphere(k)] = vol_numeric(k)
    return env


def _scalar_block(s: SymScalar) -> dict:
    return {"canonical": str(s), "terms": s.to_terms()}


def run_compute(config: dict, seed: int) -> dict:
    if not isinstance(config, dict):
        raise ConfigError("configuration must be a JSON object")
    n = config.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ConfigError(f"dimension must be an integer, got {n!r}")
    if n % 2 != 0 or not 4 <= n <= 16:
        raise ConsistencyError(f"dimension must be even with 4 <= n <= 16, got {n}")
    for key in ("with_boundary", "numeric_eval"):
        if key in config and not isinstance(config[key], bool):
            raise ConfigError(f"{key} must be a boolean")
    case = _build_case(config, n)
    u = _parse_oneform(config, "u", n, required=True, case_field=False)
    v = _parse_oneform(config, "v", n, required=True, case_field=False)
    w = _parse_oneform(config, "w", n, required=True, case_field=False)
    spec = ManifoldSpec(n, with_boundary=bool(config.get("with_boundary", False)))
    report = spectral_torsion(case, u, v, w, spec, with_identities=True, seed=seed)

    numeric = None
    if config.get("numeric_eval", False):
        value = report.total.evaluate(default_numeric_env(n))
        numeric = {"re": value.real, "im": value.imag}

    return {
        "dimension": n,
        "case": config["case"],
        "with_boundary": spec.with_boundary,
        "interior": _scalar_block(report.interior_density),
        "boundary": _scalar_block(report.boundary_density),
        "total": _scalar_block(report.total),
        "theorem": _scalar_block(report.theorem_value),
        "matches": report.matches_theorem,
        "identities": [
            {
                "id": row.id,
                "description": row.description,
                "computed": str(row.computed),
                "reference": str(row.reference),
                "matches": row.matches,
            }
            for row in report.identity_comparisons
        ],
        "numeric": numeric,
    }


def render_output(payload: dict) -> str:
    """Canonical JSON rendering: UTF-8, two-space indent, insertion order."""
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def _cmd_compute(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as handle:
            raw = handle.read()
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        config = json.loads(raw)
    except json.JSONDecodeError as exc:
        print(f"error: {args.config}:{exc.lineno}:{exc.colno}: {exc.msg}",
              file=sys.stderr)
        return EXIT_PARSE
    try:
        payload = run_compute(config, seed=_seed_from_env())
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConsistencyError, UnsupportedDimension) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    sys.stdout.write(render_output(payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def run_verify(dims: list[int], seed: int) -> dict:
    results = []
    for n in dims:
        rows = verify_suite(ManifoldSpec(n), seed=seed)
        results.append({
            "dimension": n,
            "rows": [
                {
                    "id": row.id,
                    "description": row.description,
                    "computed": str(row.computed),
                    "reference": str(row.reference),
                    "matches": row.matches,
                    "final": row.id in FINAL_IDS,
                }
                for row in rows
            ],
        })
    all_final_match = all(
        row["matches"]
        for result in results for row in result["rows"] if row["final"]
    )
    return {"dimensions": dims, "all_final_match": all_final_match,
            "results": results}


def _cmd_verify(args) -> int:
    dims = []
    for raw in args.dims:
        try:
            n = int(raw)
        except ValueError:
            print(f"error: bad dimension {raw!r}", file=sys.stderr)
            return EXIT_PARSE
        if n % 2 != 0 or not 4 <= n <= 16:
            print(f"error: dimension must be even with 4 <= n <= 16, got {n}",
                  file=sys.stderr)
            return EXIT_PARSE
        dims.append(n)
    try:
        payload = run_verify(dims, seed=_seed_from_env())
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.json:
        sys.stdout.write(render_output(payload))
    else:
        for result in payload["results"]:
            print(f"dimension {result['dimension']}")
            width = max(len(r["id"]) for r in result["rows"])
            for row in result["rows"]:
                status = "match   " if row["matches"] else "MISMATCH"
                mark = " [final]" if row["final"] else ""
                print(f"  {row['id']:<{width}}  {status}  computed: {row['computed']}")
                print(f"  {'':<{width}}            reference: {row['reference']}{mark}")
        verdict = "all final rows match" if payload["all_final_match"] \
            else "FINAL ROW MISMATCH"
        print(verdict)
    return EXIT_OK if payload["all_final_match"] else EXIT_FINAL_MISMATCH


# ---------------------------------------------------------------------------
# trace / moments
# ---------------------------------------------------------------------------


def _cmd_trace(args) -> int:
    n = args.dim
    if n % 2 != 0 or not 2 <= n <= 16:
        print(f"error: --dim must be even with 2 <= n <= 16, got {n}",
              file=sys.stderr)
        return EXIT_PARSE
    word = Multivector.identity(n)
    for token in args.word:
        if token == "gamma":
            factor = grading(n)
        elif token.startswith("e"):
            try:
                index = int(token[1:])
            except ValueError:
                print(f"error: bad generator {token!r}", file=sys.stderr)
                return EXIT_PARSE
            if not 1 <= index <= n:
                print(f"error: generator {token!r} outside 1..{n}", file=sys.stderr)
                return EXIT_PARSE
            factor = Multivector.generator(n, index)
        else:
            print(f"error: bad token {token!r} (expected e<k> or gamma)",
                  file=sys.stderr)
            return EXIT_PARSE
        word = mv_mul(word, factor)
    print(f"word = {word}")
    print(f"trace = {trace(word)}")
    print(f"supertrace = {supertrace(word)}")
    return EXIT_OK


def _cmd_moments(args) -> int:
    n = args.dim
    if n < 2:
        print(f"error: --dim must be >= 2, got {n}", file=sys.stderr)
        return EXIT_PARSE
    parts = args.alpha.split(",")
    try:
        alpha = tuple(int(p) for p in parts)
    except ValueError:
        print(f"error: bad exponent list {args.alpha!r}", file=sys.stderr)
        return EXIT_PARSE
    if len(alpha) != n or any(a < 0 for a in alpha):
        print(f"error: need {n} non-negative exponents, got {args.alpha!r}",
              file=sys.stderr)
        return EXIT_PARSE
    print(str(moment(n, alpha)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-torsion",
        description="Exact spectral-torsion densities and identity verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="evaluate a job configuration")
    p_compute.add_argument("config", help="path to the JSON job configuration")
    p_compute.set_defaults(func=_cmd_compute)

    p_verify = sub.add_parser("verify", help="run the identity catalog")
    p_verify.add_argument("dims", nargs="+", help="even dimensions, e.g. 4 6")
    p_verify.add_argument("--json", action="store_true",
                          help="machine-readable output")
    p_verify.set_defaults(func=_cmd_verify)

    p_trace = sub.add_parser("trace", help="trace/supertrace of a generator word")
    p_trace.add_argument("--dim", type=int, required=True)
    p_trace.add_argument("word", nargs="*",
                         help="generator tokens e1..en and gamma; empty = identity")
    p_trace.set_defaults(func=_cmd_trace)

    p_moments = sub.add_parser("moments", help="exact sphere moment of a monomial")
    p_moments.add_argument("--dim", type=int, required=True)
    p_moments.add_argument("--alpha", required=True,
                           help="comma-separated exponents, one per variable")
    p_moments.set_defaults(func=_cmd_moments)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches the parse-error code
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
