"""Command-line front end: evaluation, verification suites, genus-1 comparison.

Output discipline: machine-readable results go to stdout (JSON for single
results and suites, CSV for scans) with floats printed at 17 significant
digits; progress and timing go to stderr.  Identical flags and seed produce
byte-identical stdout.

Exit codes: 0 pass, 1 verification failure, 2 invalid input, 64 usage error.
"""

import argparse
import ast
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .forms import genus1_record, structure_difference
from .nullwert import enumerate_even_characteristics, enumerate_half_characteristics
from .siegel import RealCharacteristic, SiegelPoint
from .theta import (
    DEFAULT_POLICY,
    TruncationPolicy,
    second_order_box_radius,
    second_order_value,
    theta_char_eval,
    theta_char_eval_with_radius,
    truncation_radius,
)
from .suites import DEFAULT_SEED, run_suite, suite_names, supported_genera

USAGE_ERROR = 64

CSV_HEADER = "x,y,w,lhs,rhs,coeff_theta,coeff_siegel,ratio"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


class InputError(ValueError):
    """Invalid domain input (exit code 2)."""


def _fmt(x):
    return f"{float(x):.17g}"


def _render_json(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_render_json(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {_render_json(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot render {type(obj)!r}")


def _parse_complex(text):
    try:
        value = complex(text.strip().replace("i", "j"))
    except ValueError as exc:
        raise InputError(f"cannot parse complex number {text!r}") from exc
    return value


def _parse_tau(text, g):
    entries = [_parse_complex(part) for part in text.split(",")]
    need = g * (g + 1) // 2
    if len(entries) != need:
        raise InputError(
            f"tau for genus {g} needs {need} lower-triangle entries, got {len(entries)}"
        )
    mat = np.zeros((g, g), dtype=np.complex128)
    k = 0
    for i in range(g):
        for j in range(i + 1):
            mat[i, j] = entries[k]
            mat[j, i] = entries[k]
            k += 1
    try:
        return SiegelPoint.from_matrix(mat)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_char(text, g):
    try:
        nums = [float(ast.literal_eval(part.strip())) for part in text.split(",")]
    except (ValueError, SyntaxError) as exc:
        raise InputError(f"cannot parse characteristic {text!r}") from exc
    if len(nums) != 2 * g:
        raise InputError(f"characteristic needs {2 * g} numbers, got {len(nums)}")
    return RealCharacteristic.of(nums[:g], nums[g:])


def _parse_range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"range must look like start:stop:count, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise InputError(f"bad range {text!r}") from exc
    if count < 1:
        raise InputError("range count must be >= 1")
    return [lo + (hi - lo) * k / (count - 1) if count > 1 else lo for k in range(count)]


def _complex_json(value):
    return {"re": float(value.real), "im": float(value.imag)}


def _cmd_eval(args):
    policy = TruncationPolicy(tol=args.tol, max_radius=DEFAULT_POLICY.max_radius)
    tau = _parse_tau(args.tau, args.g)
    if args.target == "theta":
        if args.char is None:
            raise InputError("eval theta requires --char")
        ch = _parse_char(args.char, args.g)
        z = np.zeros(args.g, dtype=np.complex128)
        value, radius = theta_char_eval_with_radius(ch, z, tau, policy)
        out = {
            "command": "eval",
            "target": "theta",
            "g": args.g,
            "value": _complex_json(value),
            "radius": radius,
        }
    elif args.target == "nullwert":
        half = enumerate_half_characteristics(args.g)
        zero = np.zeros(args.g, dtype=np.complex128)
        values = [
            second_order_value(np.array(alpha, dtype=np.float64) / 2.0, zero, tau, policy)
            for alpha in half
        ]
        out = {
            "command": "eval",
            "target": "nullwert",
            "g": args.g,
            "classes": ["/".join(str(x) for x in alpha) for alpha in half],
            "values": [_complex_json(v) for v in values],
            "radius": second_order_box_radius(tau, policy),
        }
    else:  # theta2
        evens = enumerate_even_characteristics(args.g)
        zero = np.zeros(args.g, dtype=np.complex128)
        values = []
        for eps, dlt in evens:
            ch = RealCharacteristic.of(np.array(eps) / 2.0, np.array(dlt) / 2.0)
            values.append(theta_char_eval(ch, zero, tau, policy) ** 2)
        out = {
            "command": "eval",
            "target": "theta2",
            "g": args.g,
            "characteristics": ["".join(map(str, e)) + ";" + "".join(map(str, d)) for e, d in evens],
            "values": [_complex_json(v) for v in values],
            "radius": truncation_radius(tau.im_min_eigenvalue(), 0.5, args.tol, args.g),
        }
    print(_render_json(out))
    return 0


def _cmd_verify(args):
    if args.suite != "all" and args.suite not in suite_names():
        print(f"unknown suite {args.suite!r}; known: {', '.join(suite_names())} or 'all'",
              file=sys.stderr)
        return USAGE_ERROR
    names = suite_names() if args.suite == "all" else [args.suite]
    jobs = []
    for name in names:
        genera = supported_genera(name)
        if args.g is not None:
            if args.g not in genera:
                if args.suite == "all":
                    continue
                raise InputError(f"suite {name!r} supports genera {genera}")
            jobs.append((name, args.g))
        else:
            jobs.extend((name, g) for g in genera if g <= 3)

    def work(job):
        name, g = job
        return run_suite(name, g, seed=args.seed, tolerance=args.suite_tol)

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(work, jobs))
    else:
        results = [work(job) for job in jobs]

    payload = [
        {
            "suite": r.suite,
            "g": r.g,
            "cases": r.cases,
            "max_residual": r.max_residual,
            "tolerance": r.tolerance,
            "pass": r.passed,
        }
        for r in results
    ]
    print(_render_json(payload))
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(
            f"[{status}] {r.suite} g={r.g}: {r.cases} cases, "
            f"max residual {r.max_residual:.3e} vs tol {r.tolerance:.1e} "
            f"({r.wall_time:.2f}s)",
            file=sys.stderr,
        )
    return 0 if all(r.passed for r in results) else 1


def _check_strip(x, y):
    if abs(x) > 0.5 + 1e-12:
        raise InputError(f"x = {x} leaves the strip |x| <= 1/2")
    if y <= 0.1:
        raise InputError(f"y = {y} must exceed 0.1")


def _cmd_compare(args):
    policy = TruncationPolicy(tol=args.tol, max_radius=DEFAULT_POLICY.max_radius)
    if args.tau is not None:
        if args.g < 2:
            raise InputError("--tau comparison is for genus >= 2; use --z for genus 1")
        tau = _parse_tau(args.tau, args.g)
        diff = structure_difference(tau, policy)
        out = {
            "command": "compare",
            "g": args.g,
            "difference": {
                "re": [[float(v) for v in row] for row in diff.real],
                "im": [[float(v) for v in row] for row in diff.imag],
            },
            "max_abs": float(np.max(np.abs(diff))),
        }
        print(_render_json(out))
        return 0

    if args.z is not None:
        z = _parse_complex(args.z)
        points = [(z.real, z.imag)]
    else:
        xs = _parse_range(args.x)
        ys = _parse_range(args.y)
        points = [(x, y) for x in xs for y in ys]
    for x, y in points:
        _check_strip(x, y)

    def work(pt):
        return genus1_record(complex(pt[0], pt[1]), policy)

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            records = list(pool.map(work, points))
    else:
        records = [work(pt) for pt in points]

    if args.format == "json":
        rows = [
            {
                "x": r.z.real, "y": r.z.imag, "w": r.w, "lhs": r.lhs, "rhs": r.rhs,
                "coeff_theta": r.coeff_theta, "coeff_siegel": r.coeff_siegel,
                "ratio": r.ratio,
            }
            for r in records
        ]
        print(_render_json(rows))
    else:
        print(CSV_HEADER)
        for r in records:
            print(",".join(_fmt(v) for v in (
                r.z.real, r.z.imag, r.w, r.lhs, r.rhs,
                r.coeff_theta, r.coeff_siegel, r.ratio,
            )))
    return 0


def build_parser():
    parser = _Parser(prog="thetaforms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate theta values at a point")
    p_eval.add_argument("target", choices=("theta", "nullwert", "theta2"))
    p_eval.add_argument("--g", type=int, default=1)
    p_eval.add_argument("--tau", required=True,
                        help="lower-triangle entries, row-major, as re+imi pairs")
    p_eval.add_argument("--char", help="characteristic: 2g comma-separated reals")
    p_eval.add_argument("--tol", type=float, default=1e-12)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("suite", help="suite name or 'all'")
    p_verify.add_argument("--g", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.add_argument("--suite-tol", type=float, default=None,
                          help="override the pass tolerance")
    p_verify.add_argument("--threads", type=int, default=1)

    p_cmp = sub.add_parser("compare", help="compare the two scaled forms")
    p_cmp.add_argument("--g", type=int, default=1)
    p_cmp.add_argument("--z", help="single genus-1 point, e.g. 0+1i")
    p_cmp.add_argument("--x", default="-0.5:0.5:21", help="x range start:stop:count")
    p_cmp.add_argument("--y", default="0.5:2:21", help="y range start:stop:count")
    p_cmp.add_argument("--tau", help="genus >= 2 point (lower triangle entries)")
    p_cmp.add_argument("--tol", type=float, default=1e-12)
    p_cmp.add_argument("--format", choices=("csv", "json"), default="csv")
    p_cmp.add_argument("--threads", type=int, default=1)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            code = _cmd_eval(args)
        elif args.command == "verify":
            code = _cmd_verify(args)
        else:
            code = _cmd_compare(args)
    except InputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    raise SystemExit(main())
