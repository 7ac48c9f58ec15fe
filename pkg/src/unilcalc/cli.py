"""Command-line front end.

Structured JSON on stdout (``--pretty`` for an indented rendering); exit
code 0 on success, 1 when a verification suite finds a counterexample, 2 on
invalid input.  The degree cap for truncated presentations defaults to the
UNILCALC_DEGREE environment variable (64 when unset).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .bundles import (UnsupportedQueryError, j_map, ker_coker_j,
                      build_universal_bundle, segment_q_groups,
                      square_decompose)
from .correspondences import verify_ckr, verify_rc_equals_j
from .matrices import Matrix
from .nilforms import hyperbolic_nilform_generator
from .qoracle import oracle_q_group, oracle_twisted_q, segment_complex
from .rings import (F2, ZZ, F2X, RingDescriptor, RingElement,
                    UnsupportedRingError, ring_from_name, tate_cohomology)
from .unil import nq_sequence, unil2_normalize, unil_group
from .unilforms import random_unilform


class InputError(ValueError):
    pass


def parse_poly(text: str, ring: RingDescriptor = F2X) -> RingElement:
    """Dense coefficient list, low degree first: [1,0,1] is 1 + x^2."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed coefficient list: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
        raise InputError("coefficient list must be a JSON array of integers")
    if ring.is_poly:
        return ring.element(data)
    if len(data) > 1:
        raise InputError(f"{ring} takes a single coefficient")
    return ring.element(data[0] if data else 0)


def parse_matrix(text: str, ring: RingDescriptor) -> Matrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed matrix literal: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError("matrix literal must be a nested JSON array")
    try:
        return Matrix.from_literal(ring, data)
    except Exception as exc:
        raise InputError(str(exc)) from None


def _emit(payload: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(json.dumps(payload, sort_keys=True))


def _cmd_tate(args) -> int:
    ring = ring_from_name(args.ring)
    group = tate_cohomology(ring, args.r, args.degree)
    _emit({"ring": ring.name, "r": args.r,
           "group": group.presentation.describe(),
           "presentation": group.presentation.to_json(),
           "basis": list(group.basis), "action": group.action_note},
          args.pretty)
    return 0


def _cmd_qgroup(args) -> int:
    ring = ring_from_name(args.ring)
    pres = segment_q_groups(ring, args.n, args.flavor, args.degree)
    _emit({"ring": ring.name, "n": args.n, "flavor": args.flavor,
           "method": "closed-form", "group": pres.describe(),
           "presentation": pres.to_json()}, args.pretty)
    return 0


def _cmd_oracle(args) -> int:
    ring = ring_from_name(args.ring)
    if args.twisted:
        segment = build_universal_bundle(ring).segment(args.segment)
        result = oracle_twisted_q(segment, args.n, args.degree)
        payload = {"ring": ring.name, "n": args.n, "method": "oracle",
                   "twisted": True, "order": result.order,
                   "exponent": result.exponent, "route": result.route}
        if result.presentation is not None:
            payload["presentation"] = result.presentation.to_json()
            payload["group"] = result.presentation.describe()
        if result.extension is not None:
            payload.update(result.extension.to_json())
            payload["group"] = result.extension.describe()
        if result.notes:
            payload["notes"] = result.notes
        _emit(payload, args.pretty)
        return 0
    segment = build_universal_bundle(ring).segment(args.segment)
    pres = oracle_q_group(segment_complex(segment), args.n, args.flavor)
    _emit({"ring": ring.name, "n": args.n, "flavor": args.flavor,
           "method": "oracle", "group": pres.describe(),
           "presentation": pres.to_json()}, args.pretty)
    return 0


def _cmd_jmap(args) -> int:
    ring = ring_from_name(args.ring)
    m = parse_matrix(args.matrix, ring)
    image = j_map(ring, args.level, m)
    _emit({"ring": ring.name, "level": args.level,
           "input": m.to_literal(), "image": image.to_json(),
           "is_zero": image.is_zero}, args.pretty)
    return 0


def _cmd_kercoker(args) -> int:
    ring = ring_from_name(args.ring)
    ker, coker = ker_coker_j(ring, args.level, args.degree)
    _emit({"ring": ring.name, "level": args.level,
           "kernel": ker.to_json(), "cokernel": coker.to_json()}, args.pretty)
    return 0


def _cmd_decompose(args) -> int:
    p = parse_poly(args.poly)
    b, d = square_decompose(p)
    _emit({"poly": list(p.coeffs()), "b": list(b.coeffs()),
           "d": list(d.coeffs())}, args.pretty)
    return 0


def _cmd_reduce(args) -> int:
    p = parse_poly(args.unil2)
    elem = unil2_normalize(p)
    _emit({"input": list(p.coeffs()), "normal_form": list(elem.coeffs)},
          args.pretty)
    return 0


def _cmd_unil(args) -> int:
    coeff = {"Z": ZZ, "F2": F2}[args.coeff]
    desc = unil_group(coeff, args.n, args.degree)
    _emit(desc.to_json(), args.pretty)
    return 0


def _cmd_sequence(args) -> int:
    _emit(nq_sequence(args.n, args.degree).to_json(), args.pretty)
    return 0


_SUITE_RINGS = {"ckr": (F2, ZZ, "Z/4"), "rc": (F2, ZZ)}


def run_verify_suite(suite: str, count: int, seed: int) -> dict:
    """Deterministic verification runs; identical seeds give identical
    reports byte for byte."""
    from .rings import Zmod
    cases = []
    all_pass = True
    if suite in ("ckr", "all"):
        for ring in (F2, ZZ, Zmod(4)):
            for i in range(count):
                rank = 1 + (i % 4)
                epsilon = 1 if i % 2 == 0 else -1
                u = random_unilform(ring, rank, epsilon, seed + i)
                report = verify_ckr(u)
                case = {"suite": "ckr", "ring": ring.name, "index": i,
                        "rank": rank, "epsilon": epsilon, "pass": report.passed}
                if not report.passed:
                    case["counterexample"] = {"input": u.to_json(),
                                              "report": report.to_json()}
                    all_pass = False
                cases.append(case)
    if suite in ("rc", "all"):
        for ring in (F2, ZZ):
            for i in range(count):
                rank = 2 * (1 + (i % 3))
                epsilon = 1 if i % 2 == 0 else -1
                z, lag = hyperbolic_nilform_generator(seed + i, rank, epsilon,
                                                      ring)
                report = verify_rc_equals_j(z, lag)
                case = {"suite": "rc", "ring": ring.name, "index": i,
                        "rank": rank, "epsilon": epsilon, "pass": report.passed}
                if not report.passed:
                    case["counterexample"] = {"input": z.to_json(),
                                              "report": report.to_json()}
                    all_pass = False
                cases.append(case)
    return {"suite": suite, "count": count, "seed": seed,
            "pass": all_pass, "cases": cases}


def _cmd_verify(args) -> int:
    report = run_verify_suite(args.suite, args.count, args.seed)
    _emit(report, args.pretty)
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unilcalc",
        description="Exact quadratic-form algebra and UNil-group calculations.")
    parser.add_argument("--pretty", action="store_true",
                        help="indent the JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tate", help="Tate cohomology of the trivial involution")
    p.add_argument("--ring", required=True)
    p.add_argument("--r", type=int, required=True, choices=(0, 1))
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_tate)

    p = sub.add_parser("qgroup", help="closed-form segment groups")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", required=True, choices=("sym", "quad", "hyper"))
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_qgroup)

    p = sub.add_parser("oracle", help="brute-force segment groups")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--flavor", default="sym", choices=("sym", "quad", "hyper"))
    p.add_argument("--segment", type=int, default=0)
    p.add_argument("--twisted", action="store_true")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("jmap", help="apply a defect map to a symmetric matrix")
    p.add_argument("--ring", required=True)
    p.add_argument("--level", required=True, choices=("J0", "J1", "C2"))
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=_cmd_jmap)

    p = sub.add_parser("kercoker", help="kernel and cokernel of a defect map")
    p.add_argument("--ring", required=True)
    p.add_argument("--level", required=True, choices=("J0", "J1", "C2"))
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_kercoker)

    p = sub.add_parser("decompose", help="p = b^2 + d + x d^2 over F2[x]")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("reduce", help="degree-2 normal form of an F2[x] element")
    p.add_argument("--unil2", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("unil", help="UNil group description")
    p.add_argument("--coeff", required=True, choices=("Z", "F2"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_unil)

    p = sub.add_parser("sequence", help="boundary exact sequence in low degrees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_sequence)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=("ckr", "rc", "all"))
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (InputError, UnsupportedRingError, UnsupportedQueryError,
            ValueError, KeyError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
