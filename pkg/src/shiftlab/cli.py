"""Command line front end.

Four subcommands wrap the library:

* ``classify``         dynamical class of a weight sequence
* ``conjugate-check``  build a conjugator between two constant shifts and
                       certify it by residual sampling
* ``orbit``            norm traces of orbits (including the escape demo)
* ``apply-map``        apply one homeomorphism step to a vector from JSON

Weight/operator descriptors (``--weights`` / ``--op``):

    constant:<re[,im]>[:<p>]
    example:T1|T2|T3
    explicit:<w1,w2,...>[:<p>]      entries are complex literals like 1, 0.5, 1+2j
    blocks:<a>:<b>:<order>[:<p>]    order is a_first or b_first
    powerlaw:<alpha>[:<p>]

A trailing ``:<p>`` in the descriptor wins over ``--p``; the default
exponent is 2.  Point descriptors for ``orbit``: ``e<k>`` (basis vector),
``example3:<K>``, ``box:<L>`` (seeded random vector with support L), or
``escape`` (the basis-vector escape demo; requires a constant operator).
Values that start with a dash (negative weights) must use the
``--flag=value`` form, e.g. ``--g=-1:4``.

Exit codes: 0 pass, 1 usage or config error, 2 inconclusive verdict or
residual over tolerance, 3 conjugacy class mismatch.  Outputs are JSON
(stable key order; ``orbit`` can emit CSV instead) and always record the
seed and library version.  ``--config FILE`` loads flag values, including
optionally the command name, from a JSON object; explicit flags override.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .conjugacy import (
    ClassMismatchError,
    ConjugacyMap,
    GStep,
    HStep,
    build_conjugator,
    chi,
    conjugacy_residual,
    diag_similarity,
    map_to_dict,
)
from .dynamics import (
    Confidence,
    classify,
    escape_demo,
    example3_point,
    make_example,
    orbit_norms,
)
from .seqspace import (
    BalancedBlocks,
    Constant,
    Explicit,
    FinSeqVector,
    PowerLawBeta,
    ShiftOperator,
    max_coord_diff,
    random_vectors,
    vector_from_dict,
    vector_to_dict,
    weights_to_dict,
)

DEFAULT_P = 2.0
DEFAULT_TOL = 1e-9
DEFAULT_SAMPLES = 100


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage problems, not 2
        raise ValueError(message)


# ---------------------------------------------------------------------------
# descriptor parsing


def _parse_scalar(token: str) -> complex:
    """A complex scalar written as <re> or <re,im>."""
    parts = token.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ValueError(f"cannot parse scalar {token!r}; expected <re> or <re,im>")


def _parse_exponent(token: str) -> float:
    try:
        p = float(token)
    except ValueError:
        raise ValueError(f"cannot parse exponent {token!r}") from None
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"exponent must satisfy 1 <= p < inf, got {token!r}")
    return p


def _parse_weights(desc: str) -> tuple[object, float | None]:
    """Parse a weight descriptor; returns (weights, embedded exponent or None)."""
    parts = desc.split(":")
    kind = parts[0].strip().lower()
    if kind == "constant":
        if len(parts) == 2:
            return Constant(_parse_scalar(parts[1])), None
        if len(parts) == 3:
            return Constant(_parse_scalar(parts[1])), _parse_exponent(parts[2])
    elif kind == "example":
        if len(parts) == 2:
            op = make_example(parts[1])
            return op.weights, op.p
    elif kind == "explicit":
        if len(parts) in (2, 3):
            try:
                entries = tuple(complex(tok) for tok in parts[1].split(","))
            except ValueError:
                raise ValueError(f"cannot parse explicit weights {parts[1]!r}") from None
            p = _parse_exponent(parts[2]) if len(parts) == 3 else None
            return Explicit(entries), p
    elif kind == "blocks":
        if len(parts) in (4, 5):
            order = parts[3].strip().lower()
            if order not in ("a_first", "b_first"):
                raise ValueError(f"block order must be a_first or b_first, got {parts[3]!r}")
            p = _parse_exponent(parts[4]) if len(parts) == 5 else None
            return BalancedBlocks(_parse_scalar(parts[1]), _parse_scalar(parts[2]), order == "a_first"), p
    elif kind == "powerlaw":
        if len(parts) in (2, 3):
            p = _parse_exponent(parts[2]) if len(parts) == 3 else None
            return PowerLawBeta(float(parts[1])), p
    raise ValueError(f"cannot parse weight descriptor {desc!r}")


def _parse_operator(desc: str, p_flag: float | None) -> ShiftOperator:
    w, p_embedded = _parse_weights(desc)
    p = p_embedded if p_embedded is not None else (p_flag if p_flag is not None else DEFAULT_P)
    return ShiftOperator(w, p)


def _parse_constant_shift(desc: str) -> tuple[complex, float]:
    """A constant shift written as <re[,im]>:<p> (for conjugate-check)."""
    parts = desc.split(":")
    if len(parts) != 2:
        raise ValueError(f"cannot parse shift {desc!r}; expected <re[,im]>:<p>")
    return _parse_scalar(parts[0]), _parse_exponent(parts[1])


def _parse_point(desc: str, p: float, seed: int) -> FinSeqVector:
    name = desc.strip()
    if name.startswith("e") and name[1:].isdigit():
        k = int(name[1:])
        if k < 1:
            raise ValueError(f"basis index must be >= 1, got {desc!r}")
        return FinSeqVector(p, (0j,) * (k - 1) + (1 + 0j,))
    if name.startswith("example3:"):
        return example3_point(int(name.split(":", 1)[1]))
    if name.startswith("box:"):
        support = int(name.split(":", 1)[1])
        if support < 1:
            raise ValueError(f"support length must be >= 1, got {desc!r}")
        return random_vectors(1, p, seed, support_range=(support, support))[0]
    raise ValueError(
        f"cannot parse point descriptor {desc!r}; expected e<k>, example3:<K>, box:<L>, or escape"
    )


# ---------------------------------------------------------------------------
# output


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)


def _emit_json(payload: dict, out: str | None) -> None:
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def _emit_csv(rows: list[tuple[str, str]], out: str | None) -> None:
    _emit("\n".join(",".join(row) for row in rows) + "\n", out)


def _payload(command: str, config: dict, result: dict, seed: int) -> dict:
    return {
        "command": command,
        "config": config,
        "result": result,
        "seed": seed,
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# commands


def _cmd_classify(args: argparse.Namespace) -> int:
    w, p_embedded = _parse_weights(args.weights)
    p = p_embedded if p_embedded is not None else (args.p if args.p is not None else DEFAULT_P)
    verdict = classify(w, p, args.horizon)
    config = {
        "weights": weights_to_dict(w),
        "p": p,
        "horizon": args.horizon,
    }
    _emit_json(_payload("classify", config, verdict.to_dict(), args.seed), args.out)
    return 2 if verdict.confidence is Confidence.INCONCLUSIVE else 0


def _cmd_conjugate_check(args: argparse.Namespace) -> int:
    lam, p = _parse_constant_shift(args.f)
    omega, q = _parse_constant_shift(args.g)
    config = {
        "f": {"weight": [lam.real, lam.imag], "p": p},
        "g": {"weight": [omega.real, omega.imag], "p": q},
        "tolerance": args.tol,
        "samples": args.samples,
    }
    try:
        phi = build_conjugator(lam, p, omega, q)
    except ClassMismatchError as e:
        result = {
            "conjugate": False,
            "chi_f": e.chi_source,
            "chi_g": e.chi_target,
            "reason": str(e),
        }
        _emit_json(_payload("conjugate-check", config, result, args.seed), args.out)
        return 3
    source = ShiftOperator(Constant(lam), p)
    target = ShiftOperator(Constant(omega), q)
    report = conjugacy_residual(source, target, phi, samples=args.samples, seed=args.seed)
    passed = report.max_residual <= args.tol
    result = {
        "conjugate": True,
        "chi_f": chi(abs(lam)),
        "chi_g": chi(abs(omega)),
        "map": map_to_dict(phi),
        "residual": report.to_dict(),
        "passed": passed,
    }
    _emit_json(_payload("conjugate-check", config, result, args.seed), args.out)
    return 0 if passed else 2


def _cmd_orbit(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise ValueError(f"--n must be >= 0, got {args.n}")
    op = _parse_operator(args.op, args.p)
    if args.point.strip() == "escape":
        if not isinstance(op.weights, Constant):
            raise ValueError("the escape demo needs a constant operator descriptor")
        if args.n < 1:
            raise ValueError("the escape demo needs --n >= 1")
        trace = escape_demo(op.weights.value, op.p, args.n)
    else:
        x = _parse_point(args.point, op.p, args.seed)
        trace = orbit_norms(op, x, args.n, point=args.point)
    if args.format == "csv":
        _emit_csv(trace.csv_rows(), args.out)
    else:
        config = {"op": trace.operator, "point": args.point, "n": args.n}
        _emit_json(_payload("orbit", config, trace.to_dict(), args.seed), args.out)
    return 0


def _parse_param(token: str, name: str) -> float:
    prefix = name + "="
    if not token.startswith(prefix):
        raise ValueError(f"expected {name}=<value>, got {token!r}")
    try:
        return float(token[len(prefix) :])
    except ValueError:
        raise ValueError(f"cannot parse {token!r}") from None


def _cmd_apply_map(args: argparse.Namespace) -> int:
    with open(args.infile, encoding="utf-8") as f:
        x = vector_from_dict(json.load(f))
    if args.h is not None:
        phi = ConjugacyMap((HStep(x.p, _parse_param(args.h, "s")),), x.p, x.p)
    elif args.g is not None:
        q = _parse_param(args.g, "q")
        phi = ConjugacyMap((GStep(x.p, q),), x.p, q)
    else:
        parts = args.diag.split(":")
        if len(parts) != 2:
            raise ValueError(f"cannot parse {args.diag!r}; expected <lam>:<omega>")
        phi = diag_similarity(_parse_scalar(parts[0]), _parse_scalar(parts[1]), x.p)
    image = phi.apply(x)
    result: dict = {"map": map_to_dict(phi), "image": vector_to_dict(image)}
    if args.roundtrip:
        back = phi.inverse().apply(image)
        result["roundtrip_max_deviation"] = max_coord_diff(x, back)
    config = {"in": args.infile, "roundtrip": args.roundtrip}
    _emit_json(_payload("apply-map", config, result, args.seed), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0, help="sampling seed, recorded in the output")
    sub.add_argument("--out", default=None, help="output file (default: stdout)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="shiftlab", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"shiftlab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    c = subs.add_parser("classify", parents=[], help="dynamical class of a weight sequence")
    c.add_argument("--weights", required=True, help="weight descriptor")
    c.add_argument("--p", type=float, default=None, help="space exponent (default 2)")
    c.add_argument("--horizon", type=int, default=100_000, help="evidence horizon (>= 100)")
    _add_common(c)
    c.set_defaults(func=_cmd_classify)

    k = subs.add_parser("conjugate-check", help="build and certify a conjugator between constant shifts")
    k.add_argument("--f", required=True, help="source shift, <re[,im]>:<p>")
    k.add_argument("--g", required=True, help="target shift, <re[,im]>:<p>")
    k.add_argument("--tol", type=float, default=DEFAULT_TOL, help="max residual to pass")
    k.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="number of sample vectors")
    _add_common(k)
    k.set_defaults(func=_cmd_conjugate_check)

    o = subs.add_parser("orbit", help="orbit norm trace or escape demo")
    o.add_argument("--op", required=True, help="operator descriptor")
    o.add_argument("--point", required=True, help="e<k>, example3:<K>, box:<L>, or escape")
    o.add_argument("--n", type=int, required=True, help="number of steps (trace entries for escape)")
    o.add_argument("--p", type=float, default=None, help="space exponent (default 2)")
    o.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(o)
    o.set_defaults(func=_cmd_orbit)

    a = subs.add_parser("apply-map", help="apply a homeomorphism step to a JSON vector")
    which = a.add_mutually_exclusive_group(required=True)
    which.add_argument("--h", default=None, metavar="s=<val>", help="tail rescaling with exponent s")
    which.add_argument("--g", default=None, metavar="q=<val>", help="modulus power map onto l^q")
    which.add_argument("--diag", default=None, metavar="<lam>:<omega>", help="diagonal similarity")
    a.add_argument("--in", dest="infile", required=True, help="input vector JSON file")
    a.add_argument("--roundtrip", action="store_true", help="also apply the inverse and report deviation")
    _add_common(a)
    a.set_defaults(func=_cmd_apply_map)

    return parser


def _expand_config(argv: list[str]) -> list[str]:
    """Fold a --config JSON file into flag form; explicit flags override it."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise ValueError("--config needs a file path")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2 :]
    with open(path, encoding="utf-8") as f:
        cfg = json.load(f)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    command = cfg.pop("command", None)
    tokens: list[str] = []
    for key, value in cfg.items():
        flag = "--" + str(key).replace("_", "-")
        if isinstance(value, bool):
            if value:
                tokens.append(flag)
        else:
            tokens.extend([flag, str(value)])
    if rest and not rest[0].startswith("-"):
        return [rest[0]] + tokens + rest[1:]
    if command is None:
        raise ValueError("config file must name a command when none is given on the command line")
    return [str(command)] + tokens + rest


def main(argv: list[str] | None = None) -> int:
    raw = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        expanded = _expand_config(raw)
        parser = _build_parser()
        try:
            args = parser.parse_args(expanded)
        except SystemExit as e:  # --help / --version
            code = e.code
            return code if isinstance(code, int) else 0
        return args.func(args)
    except ClassMismatchError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError, IndexError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
