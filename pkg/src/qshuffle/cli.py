"""Command-line front end: build kernels, multiply elements, run check suites.

Subcommands and typical invocations:

    qshuffle kernel --builtin a2 --kind bullet --alpha 1,0 --gamma 0,1
    qshuffle mul --builtin a1 --kind bullet "e 1 0" "e 1 0"
    qshuffle verify --suite appendixA --format json
    qshuffle verify --suite super-all --builtin super:2|1:++-
    qshuffle dims --type a1 --qmax 4 --zmax 3

Exit codes: 0 when every requested check proves (or the command is purely
computational), 1 when some check is refuted, 2 on any input error (unknown
builtin or suite, malformed vectors, unreadable quiver file, bad bounds).

Element specs for mul are "e i n" (the one-slot generator x_{i,1}^n) and
"ediv i n r" (the divided-power image (x_{i,1}...x_{i,r})^n).  A quiver may
come from --builtin (a1, a2, a3, kronecker, super:m|n:pattern) or from a
JSON file via --quiver; for the weighted kernel kinds (diamond, star, circ)
a plain builtin is tripled and given its normal weight function.

The QSHUFFLE_PARALLELISM environment variable is accepted and recorded in
the run configuration; checks are pure and independent, but the current
engine evaluates them serially, so the value does not change the output.
JSON reports are byte-identical across runs except for the ms timings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import NamedTuple, Sequence

from .characters import dimension_table
from .quiver import (
    builtin,
    kac_moody_cartan,
    normal_weights,
    quiver_from_json,
    triple_quiver,
)
from .roots import positive_roots
from .shuffle import KERNEL_KINDS, ShuffleAlgebra, ShuffleElement
from .verify import DIMS_CARTAN, SUITES, run_suite, suite_verdict

WITNESS_DISPLAY_LIMIT = 120


class RunConfig(NamedTuple):
    """Resolved invocation settings shared by the subcommands."""

    builtin: str | None
    quiver: str | None
    kind: str
    window: tuple[int, int]
    qmax: int
    zmax: int
    lmax: int
    nmax: int
    fmt: str
    parallelism: int
    max_slots: int


def _parallelism_from_env() -> int:
    raw = os.environ.get("QSHUFFLE_PARALLELISM", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"QSHUFFLE_PARALLELISM must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError("QSHUFFLE_PARALLELISM must be >= 1")
    return value


def _parse_window(text: str) -> tuple[int, int]:
    bits = text.split(",")
    if len(bits) != 2:
        raise ValueError(f"window wants 'lo,hi', got {text!r}")
    lo, hi = int(bits[0]), int(bits[1])
    if lo > hi:
        raise ValueError(f"window [{lo}, {hi}] is empty")
    return lo, hi


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        builtin=getattr(args, "builtin", None),
        quiver=getattr(args, "quiver", None),
        kind=getattr(args, "kind", "bullet"),
        window=_parse_window(getattr(args, "window", "-2,2")),
        qmax=getattr(args, "qmax", 6),
        zmax=getattr(args, "zmax", 6),
        lmax=getattr(args, "lmax", 4),
        nmax=getattr(args, "nmax", 3),
        fmt=getattr(args, "format", "text"),
        parallelism=_parallelism_from_env(),
        max_slots=getattr(args, "max_slots", 8),
    )


def _load_source(cfg: RunConfig):
    if cfg.quiver:
        return quiver_from_json(cfg.quiver)
    return builtin(cfg.builtin or "a1")


def _make_algebra(cfg: RunConfig) -> ShuffleAlgebra:
    quiver, wf, cartan = _load_source(cfg)
    if cfg.kind in ("diamond", "star", "circ") and not quiver.pairs:
        tq = triple_quiver(quiver)
        return ShuffleAlgebra(cfg.kind, tq, normal_weights(tq, cartan))
    return ShuffleAlgebra(cfg.kind, quiver, wf, cartan)


def _parse_vector(text: str, vertices: Sequence[str], name: str) -> dict[str, int]:
    bits = [b.strip() for b in text.split(",")]
    if len(bits) != len(vertices):
        raise ValueError(
            f"{name} wants {len(vertices)} comma-separated entries "
            f"for vertices {list(vertices)}, got {text!r}")
    out = {}
    for v, b in zip(vertices, bits):
        e = int(b)
        if e < 0:
            raise ValueError(f"{name} entries must be >= 0, got {e}")
        out[v] = e
    return out


def _emit(payload: dict, lines: Sequence[str], cfg: RunConfig, out: str | None) -> None:
    if cfg.fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        text = "\n".join(lines)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- subcommands -----------------------------------------------------------------


def cmd_kernel(args: argparse.Namespace) -> int:
    cfg = _config(args)
    algebra = _make_algebra(cfg)
    vs = algebra.quiver.vertices
    alpha = _parse_vector(args.alpha, vs, "--alpha")
    gamma = _parse_vector(args.gamma, vs, "--gamma")
    kernel = algebra.kernel(alpha, gamma)
    payload = {
        "kind": kernel.kind,
        "alpha": alpha,
        "gamma": gamma,
        "factored": repr(kernel.value),
        "expanded": repr(kernel.value.expand()),
    }
    lines = [
        f"kind: {kernel.kind}",
        f"alpha: {alpha}",
        f"gamma: {gamma}",
        f"factored: {payload['factored']}",
        f"expanded: {payload['expanded']}",
    ]
    _emit(payload, lines, cfg, args.out)
    return 0


def _parse_element(spec: str, algebra: ShuffleAlgebra) -> ShuffleElement:
    parts = spec.split()
    if len(parts) == 3 and parts[0] == "e":
        return algebra.generator(parts[1], int(parts[2]))
    if len(parts) == 4 and parts[0] == "ediv":
        return algebra.generator(parts[1], int(parts[2]), int(parts[3]))
    raise ValueError(f"bad element spec {spec!r}; want 'e i n' or 'ediv i n r'")


def cmd_mul(args: argparse.Namespace) -> int:
    cfg = _config(args)
    algebra = _make_algebra(cfg)
    elements = [_parse_element(spec, algebra) for spec in args.elements]
    slots: dict[str, int] = {}
    for elt in elements:
        for v, c in elt.degree:
            slots[v] = slots.get(v, 0) + c
    over = {v: c for v, c in slots.items() if c > cfg.max_slots}
    if over:
        raise ValueError(
            f"product degree {over} exceeds --max-slots {cfg.max_slots}")
    product = algebra.product(*elements)
    degree = {v: c for v, c in product.degree}
    payload = {"kind": algebra.kind, "degree": degree,
               "value": repr(product.value)}
    lines = [f"kind: {algebra.kind}",
             f"degree: {degree}",
             f"value: {payload['value']}"]
    _emit(payload, lines, cfg, args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config(args)
    suite_config = {
        "window": cfg.window,
        "qmax": cfg.qmax,
        "zmax": cfg.zmax,
        "lmax": cfg.lmax,
        "nmax": cfg.nmax,
        "parallelism": cfg.parallelism,
    }
    if cfg.quiver:
        suite_config["quiver"] = cfg.quiver
    if cfg.builtin:
        suite_config["builtin"] = cfg.builtin
    reports = run_suite(args.suite, suite_config)
    verdict = suite_verdict(reports)
    payload = {"suite": args.suite, "verdict": verdict,
               "reports": [r.to_dict() for r in reports]}
    lines = []
    for r in reports:
        line = f"{r.check_id:<44} {r.verdict:<8} {r.ms:>6}ms"
        if r.verdict == "refuted" and r.witness:
            w = r.witness
            if len(w) > WITNESS_DISPLAY_LIMIT:
                w = w[:WITNESS_DISPLAY_LIMIT] + "..."
            line += f"\n    witness: {w}"
        lines.append(line)
    lines.append(f"suite {args.suite}: {verdict} "
                 f"({len(reports)} checks, {sum(r.ms for r in reports)}ms)")
    _emit(payload, lines, cfg, args.out)
    return 1 if any(r.verdict == "refuted" for r in reports) else 0


def cmd_dims(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if args.type not in DIMS_CARTAN:
        raise ValueError(f"unknown type {args.type!r}; "
                         f"supported: {sorted(DIMS_CARTAN)}")
    cartan = DIMS_CARTAN[args.type]
    rank = len(cartan)
    rows, n_items = dimension_table(set(positive_roots(cartan)), rank,
                                    cfg.qmax, cfg.zmax)
    agree = all(row["agree"] for row in rows)
    payload = {"type": args.type, "qmax": cfg.qmax, "zmax": cfg.zmax,
               "basis_items": n_items, "agree": agree, "rows": rows}
    lines = [f"{'q':>3} {'z':<16} {'exp_kac':>8} {'exp_form4':>10} "
             f"{'pbw':>6}  agree"]
    for row in rows:
        lines.append(f"{row['q']:>3} {str(row['z']):<16} {row['exp_kac']:>8} "
                     f"{row['exp_form4']:>10} {row['pbw']:>6}  "
                     f"{'yes' if row['agree'] else 'NO'}")
    lines.append(f"type {args.type}: {'agree' if agree else 'DISAGREE'} "
                 f"({len(rows)} coefficients, {n_items} basis items)")
    _emit(payload, lines, cfg, args.out)
    return 0 if agree else 1


# -- argument wiring -------------------------------------------------------------


def _add_source_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--builtin", default=None,
                   help="builtin quiver: a1, a2, a3, kronecker, super:m|n:pattern")
    p.add_argument("--quiver", default=None, help="path to a quiver JSON file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qshuffle",
        description="exact shuffle-algebra computations and relation checking")
    sub = parser.add_subparsers(dest="command", required=True)

    pk = sub.add_parser("kernel", help="print a shuffle kernel")
    _add_source_options(pk)
    pk.add_argument("--kind", choices=KERNEL_KINDS, default="bullet")
    pk.add_argument("--alpha", required=True, help="comma vector, one entry per vertex")
    pk.add_argument("--gamma", required=True, help="comma vector, one entry per vertex")
    pk.set_defaults(func=cmd_kernel)

    pm = sub.add_parser("mul", help="multiply shuffle elements left to right")
    _add_source_options(pm)
    pm.add_argument("--kind", choices=KERNEL_KINDS, default="bullet")
    pm.add_argument("--max-slots", type=int, default=8, dest="max_slots",
                    help="per-vertex slot cap for the product degree")
    pm.add_argument("elements", nargs="+",
                    help="element specs: 'e i n' or 'ediv i n r'")
    pm.set_defaults(func=cmd_mul)

    pv = sub.add_parser("verify", help="run a verification suite")
    _add_source_options(pv)
    pv.add_argument("--suite", required=True, choices=SUITES)
    pv.add_argument("--window", default="-2,2",
                    help="mode window 'lo,hi' (use --window=-2,2)")
    pv.add_argument("--qmax", type=int, default=6)
    pv.add_argument("--zmax", type=int, default=6)
    pv.add_argument("--lmax", type=int, default=4)
    pv.add_argument("--nmax", type=int, default=3)
    pv.set_defaults(func=cmd_verify)

    pd = sub.add_parser("dims", help="three-way graded-dimension table")
    _add_source_options(pd)
    pd.add_argument("--type", required=True, help="a1 or a2")
    pd.add_argument("--qmax", type=int, default=6)
    pd.add_argument("--zmax", type=int, default=6)
    pd.set_defaults(func=cmd_dims)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on bad flags or --help; fold that into the int contract.
        if isinstance(exc.code, int):
            return exc.code
        return 0 if exc.code is None else 2
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
