"""Command-line surface: curve inspection, point tables, certified pair
generation, and stream verification of certificates.

Exit codes: 0 success, 1 verification found failures, 2 usage/validation
error, 3 generation budget exhausted (partial output already emitted).

Certificates travel as JSON-lines, one object per line.  Rationals serialize
as "num/den" strings ("n" when the denominator is 1), valuations as integers
with INFINITY spelled "inf", and absent profile entries as null.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Optional

from .birational_maps import from_jacobian, tangent_point_image, to_jacobian
from .curve_model import (
    AngleOutOfRange,
    CurveConfig,
    ECPoint,
    EqualRatio,
    HolmPoint,
    INFINITY,
    NotCoprime,
    NotReduced,
    NotSquarefree,
    discriminant,
    ec_contains,
    holm_contains,
    j_invariant,
    make_angle,
    make_config,
    nine_points,
    tangent_point_p0,
)
from .exact_arith import format_rational, format_valuation, parse_rational, parse_valuation
from .pair_generator import (
    PairCertificate,
    ThetaTriangle,
    iter_pairs,
    verify_certificate,
)
from .valuation_filter import FilterReport

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_CONFIG_ERRORS = (AngleOutOfRange, NotReduced, EqualRatio, NotCoprime, NotSquarefree)


def _parse_cos(text: str) -> tuple[int, int]:
    # raw s/r, not reduced here: make_angle owns the NotReduced diagnostic
    try:
        if "/" in text:
            s_str, _, r_str = text.partition("/")
            return int(s_str), int(r_str)
        return int(text), 1
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--cos expects an exact fraction like 1/2 or 0/1, got {text!r}"
        )


def _build_config(args: argparse.Namespace) -> CurveConfig:
    s, r = args.cos
    return make_config(args.k, args.l, make_angle(s, r))


def _ec_json(q: Any) -> Any:
    if q is INFINITY:
        return "infinity"
    return {"X": format_rational(q.X), "Y": format_rational(q.Y)}


def _holm_json(p: HolmPoint) -> dict[str, str]:
    return {"x": format_rational(p.x), "y": format_rational(p.y)}


def _triangle_json(t: ThetaTriangle) -> dict[str, str]:
    return {
        "a": format_rational(t.side_a),
        "b": format_rational(t.side_b),
        "c": format_rational(t.side_c),
        "normalized_area": format_rational(t.normalized_area),
    }


def _filter_json(rep: FilterReport) -> dict[str, Any]:
    return {
        "positive": rep.positive,
        "parity_ok": rep.parity_ok,
        "gcd_ok": rep.gcd_ok,
        "per_prime": {
            str(p): [format_valuation(vx), format_valuation(vy)]
            for p, (vx, vy) in sorted(rep.per_prime.items())
        },
        "u_profile": {str(p): m for p, m in sorted(rep.u_profile.items())},
    }


def certificate_to_json(cert: PairCertificate) -> dict[str, Any]:
    cfg = cert.config
    return {
        "config": {"k": cfg.k, "l": cfg.l, "s": cfg.angle.s, "r": cfg.angle.r},
        "multiplier": cert.multiplier,
        "sign": cert.sign,
        "ec_point": _ec_json(cert.ec_point),
        "holm_point": _holm_json(cert.holm_point),
        "A_x": format_rational(cert.A_x),
        "A_y": format_rational(cert.A_y),
        "N_x": cert.N_x,
        "N_y": cert.N_y,
        "triangle_x": _triangle_json(cert.triangle_x),
        "triangle_y": _triangle_json(cert.triangle_y),
        "filter": _filter_json(cert.filter),
    }


def _triangle_from_json(d: dict[str, str], beta: Fraction) -> ThetaTriangle:
    return ThetaTriangle(
        side_a=parse_rational(d["a"]),
        side_b=parse_rational(d["b"]),
        side_c=parse_rational(d["c"]),
        cos_theta=beta,
        normalized_area=parse_rational(d["normalized_area"]),
    )


def _filter_from_json(d: dict[str, Any]) -> FilterReport:
    return FilterReport(
        positive=bool(d["positive"]),
        parity_ok=bool(d["parity_ok"]),
        gcd_ok=bool(d["gcd_ok"]),
        per_prime={
            int(p): (parse_valuation(vx), parse_valuation(vy))
            for p, (vx, vy) in d["per_prime"].items()
        },
        u_profile={
            int(p): (None if m is None else int(m)) for p, m in d["u_profile"].items()
        },
    )


def certificate_from_json(d: dict[str, Any]) -> PairCertificate:
    """Strict reconstruction; raises on any malformed or missing field."""
    c = d["config"]
    cfg = make_config(int(c["k"]), int(c["l"]), make_angle(int(c["s"]), int(c["r"])))
    ec = d["ec_point"]
    if not isinstance(ec, dict):
        raise ValueError("ec_point must be an affine point")
    hp = d["holm_point"]
    return PairCertificate(
        config=cfg,
        multiplier=int(d["multiplier"]),
        sign=int(d["sign"]),
        ec_point=ECPoint(parse_rational(ec["X"]), parse_rational(ec["Y"])),
        holm_point=HolmPoint(parse_rational(hp["x"]), parse_rational(hp["y"])),
        A_x=parse_rational(d["A_x"]),
        A_y=parse_rational(d["A_y"]),
        N_x=int(d["N_x"]),
        N_y=int(d["N_y"]),
        triangle_x=_triangle_from_json(d["triangle_x"], cfg.beta),
        triangle_y=_triangle_from_json(d["triangle_y"], cfg.beta),
        filter=_filter_from_json(d["filter"]),
    )


def _dump(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def cmd_curve_info(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    p0 = tangent_point_p0(cfg)
    out = {
        "k": cfg.k,
        "l": cfg.l,
        "s": cfg.angle.s,
        "r": cfg.angle.r,
        "beta": format_rational(cfg.beta),
        "a": format_rational(cfg.a),
        "b": format_rational(cfg.b),
        "discriminant": format_rational(discriminant(cfg)),
        "j_invariant": format_rational(j_invariant(cfg)),
        "nine_points": [
            {"name": e.name, "holm": _holm_json(e.holm), "ec": _ec_json(e.ec)}
            for e in nine_points(cfg)
        ],
        "p0": _holm_json(p0),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_points(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    rows = []
    for e in nine_points(cfg):
        row: dict[str, Any] = {
            "name": e.name,
            "holm": _holm_json(e.holm),
            "ec": _ec_json(e.ec),
            "holm_on_curve": holm_contains(cfg, e.holm),
            "ec_on_curve": ec_contains(cfg, e.ec),
            "corrected": e.corrected,
        }
        if e.ec is not INFINITY:
            row["maps_forward"] = to_jacobian(cfg, e.holm) == e.ec
        rows.append(row)
    p0 = tangent_point_p0(cfg)
    image = tangent_point_image(cfg)
    rows.append(
        {
            "name": "P0",
            "holm": _holm_json(p0),
            "ec": _ec_json(image),
            "holm_on_curve": holm_contains(cfg, p0),
            "ec_on_curve": ec_contains(cfg, image),
            "corrected": False,
            # the raw forward transform is undefined at P0; the inverse of
            # the resolved image must land back on it
            "roundtrip": from_jacobian(cfg, image) == p0,
        }
    )
    print(json.dumps({"points": rows}, indent=2))
    return EXIT_OK


class _UsageError(Exception):
    pass


def _thread_count() -> Optional[int]:
    raw = os.environ.get("THETA_PAIRS_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise _UsageError(f"THETA_PAIRS_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def cmd_generate(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise _UsageError("--count must be a positive integer")
    if args.max_multiplier < 0:
        raise _UsageError("--max-multiplier must be non-negative")
    cfg = _build_config(args)
    threads = _thread_count()
    emitted = 0
    seen: set[tuple[int, int]] = set()
    # with --distinct we may need more raw certificates than requested, so
    # the stream itself is left unbounded and cut here
    raw_count = args.count if not args.distinct else 10 ** 9
    for cert in iter_pairs(cfg, raw_count, args.max_multiplier, threads=threads):
        if args.distinct:
            key = (cert.N_x, cert.N_y)
            if key in seen:
                continue
            seen.add(key)
        print(_dump(certificate_to_json(cert)), flush=True)
        emitted += 1
        if emitted >= args.count:
            break
    return EXIT_OK if emitted >= args.count else EXIT_BUDGET


def cmd_verify(args: argparse.Namespace) -> int:
    stream = sys.stdin
    all_ok = True
    for idx, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            cert = certificate_from_json(json.loads(line))
        except Exception:
            print(f"line {idx}: FAIL ParseError")
            all_ok = False
            continue
        result = verify_certificate(cert)
        if result.ok:
            print(f"line {idx}: PASS")
        else:
            print(f"line {idx}: FAIL {','.join(result.reasons)}")
            all_ok = False
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


def _add_curve_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, required=True, help="first ratio part (square-free, coprime to l)")
    p.add_argument("--l", type=int, required=True, help="second ratio part (square-free, coprime to k)")
    p.add_argument(
        "--cos",
        type=_parse_cos,
        required=True,
        metavar="S/R",
        help="exact cosine of the angle, e.g. 1/2 or 0/1 (decimals rejected)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="theta-pairs",
        description=(
            "Construct and verify certified pairs of theta-congruent numbers "
            "in the fixed ratio l:k. Exit codes: 0 ok, 1 verification "
            "failures, 2 usage error, 3 generation budget exhausted."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("curve-info", help="curve coefficients and invariants")
    _add_curve_flags(p_info)
    p_info.set_defaults(func=cmd_curve_info)

    p_points = sub.add_parser("points", help="distinguished point table with audits")
    _add_curve_flags(p_points)
    p_points.set_defaults(func=cmd_points)

    p_gen = sub.add_parser("generate", help="emit certified pairs as JSON lines")
    _add_curve_flags(p_gen)
    p_gen.add_argument("--count", type=int, default=1, help="certificates to emit (default 1)")
    p_gen.add_argument(
        "--max-multiplier", type=int, default=60, help="enumeration bound (default 60)"
    )
    p_gen.add_argument(
        "--distinct",
        action="store_true",
        help="suppress repeated (N_x, N_y) pairs",
    )
    p_gen.set_defaults(func=cmd_generate)

    p_ver = sub.add_parser("verify", help="verify JSON-lines certificates from stdin")
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CONFIG_ERRORS as exc:
        print(f"theta-pairs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _UsageError as exc:
        print(f"theta-pairs: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
