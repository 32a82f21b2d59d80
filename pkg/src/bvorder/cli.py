"""Command line front-end: ``bvorder {variation,jordan,norms,check,witness}``.

Functions are read as JSON (a file path or ``-`` for stdin) and every result
is written as JSON on stdout. Diagnostics go to stderr.

Exit codes: 0 ok, 1 check failure or witness not found, 2 malformed input,
3 domain violation, 4 non-lattice codomain, 5 bad flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from . import bv_calculus as bvc
from . import bv_norms as bvn
from . import property_harness as ph
from .errors import InvalidArgument, InvalidElement, NonLatticeSpace, OutOfDomain, SpaceMismatch
from .ordered_core import Space, SpaceKind, order_unit_norm

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_MALFORMED = 2
EXIT_DOMAIN = 3
EXIT_NONLATTICE = 4
EXIT_FLAGS = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj, out) -> None:
    # repr-based float formatting round-trips doubles exactly
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _load(path: str, stdin) -> bvc.BVFunction:
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        obj = json.loads(text)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InvalidArgument(f"cannot read {path}: {exc}") from exc
    return bvc.BVFunction.from_json(obj)


def _rows(f: bvc.BVFunction) -> list:
    return [v.tolist() for v in f.values]


def cmd_variation(args, stdin, out) -> int:
    f = _load(args.file, stdin)
    a = f.lo if args.from_ is None else args.from_
    b = f.hi if args.to is None else args.to
    grid = bvc.grid_variation(f, a, b)
    res = {
        "grid_variation": grid.tolist(),
        "is_constant": bvc.is_constant(f),
        "interval": [a, b],
    }
    if f.space.is_lattice:
        res["total_variation"] = bvc.total_variation(f, a, b).tolist()
        res["variation_function"] = bvc.variation_function(f).to_json()
    else:
        res["note"] = "supremum_not_computed"
    _dump(res, out)
    return EXIT_OK


def cmd_jordan(args, stdin, out) -> int:
    f = _load(args.file, stdin)
    pair = bvc.jordan_variations(f)
    recon = f.data - f.data[0] - pair.vplus.data + pair.vminus.data
    err = max(order_unit_norm(f.space.element(r)) for r in recon)
    _dump({
        "v_plus": pair.vplus.to_json(),
        "v_minus": pair.vminus.to_json(),
        "reconstruction_error": err,
    }, out)
    return EXIT_OK


def cmd_norms(args, stdin, out) -> int:
    f = _load(args.file, stdin)
    sup = bvn.sup_norm(f)
    bv = bvn.bv_norm(f)
    c15 = bvn.inf_norm_sup_objective(f)
    c16 = bvn.inf_norm_bv_objective(f)
    if sup > bv * (1 + 1e-12) + 1e-12:
        raise ArithmeticError(f"sup_norm {sup} exceeds bv_norm {bv}")
    _dump({
        "sup_norm": sup,
        "bv_norm": bv,
        "cor15": c15.value,
        "cor16": c16.value,
        "certificates": {"cor15": c15.certificate.to_json(), "cor16": c16.certificate.to_json()},
    }, out)
    return EXIT_OK


def _range(text: str) -> tuple:
    try:
        parts = [int(p) for p in text.replace(",", "-").split("-")]
    except ValueError:
        raise UsageError(f"bad range {text!r}")
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2:
        raise UsageError(f"bad range {text!r}")
    return tuple(parts)


def _config(args) -> ph.GenConfig:
    try:
        return ph.GenConfig(
            seed=args.seed,
            trials=args.trials,
            dim_range=_range(args.dims),
            breakpoint_range=_range(args.breakpoints),
        )
    except InvalidArgument as exc:
        raise UsageError(str(exc))


def cmd_check(args, stdin, out) -> int:
    config = _config(args)
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    reports = ph.run_suite(config, kind=args.space, workers=args.workers)
    for r in reports:
        out.write(r.to_json() + "\n")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(ph.traceability(), fh, sort_keys=True, indent=1, ensure_ascii=False)
            fh.write("\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_witness(args, stdin, out) -> int:
    if args.budget < 1:
        raise UsageError("--budget must be >= 1")
    if args.dim < 1:
        raise UsageError("--dim must be >= 1")
    space = Space(SpaceKind(args.space), args.dim)
    rep = ph.find_nonlattice_witness(args.kind, args.budget, np.random.default_rng(args.seed), space)
    found = rep.witness is not None
    res = {"found": found, "kind": args.kind, "samples": rep.trials, "margin": rep.worst_margin}
    if found:
        res["witness"] = rep.witness
    _dump(res, out)
    return EXIT_OK if found else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bvorder", description="Bounded variation calculus in ordered vector spaces.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("variation", help="total, grid and running variation")
    v.add_argument("file")
    v.add_argument("--from", dest="from_", type=float, default=None)
    v.add_argument("--to", type=float, default=None)
    v.set_defaults(fn=cmd_variation)

    j = sub.add_parser("jordan", help="positive and negative variations")
    j.add_argument("file")
    j.set_defaults(fn=cmd_jordan)

    n = sub.add_parser("norms", help="sup norm, BV norm and the two infimum norms")
    n.add_argument("file")
    n.set_defaults(fn=cmd_norms)

    c = sub.add_parser("check", help="run the randomized conformance suite")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=500)
    c.add_argument("--dims", default="1-4", help="LO-HI, e.g. 1-4")
    c.add_argument("--breakpoints", default="2-12", help="LO-HI within 2-12")
    c.add_argument("--space", choices=[k.value for k in SpaceKind], default="lattice")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--trace", default=None, help="write the check_id -> anchor map here")
    c.set_defaults(fn=cmd_check)

    w = sub.add_parser("witness", help="search for a failure of a lattice-only law")
    w.add_argument("--kind", choices=[k.value for k in ph.WitnessKind], required=True)
    w.add_argument("--budget", type=int, default=10_000)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--space", choices=[k.value for k in SpaceKind], default="sym")
    w.add_argument("--dim", type=int, default=2)
    w.set_defaults(fn=cmd_witness)
    return p


def main(argv: Optional[list] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"bvorder: {exc}\n")
        return EXIT_FLAGS
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_FLAGS
    try:
        return args.fn(args, stdin, stdout)
    except UsageError as exc:
        stderr.write(f"bvorder: {exc}\n")
        return EXIT_FLAGS
    except NonLatticeSpace as exc:
        stderr.write(f"bvorder: {exc}\n")
        return EXIT_NONLATTICE
    except OutOfDomain as exc:
        stderr.write(f"bvorder: {exc}\n")
        return EXIT_DOMAIN
    except (InvalidArgument, InvalidElement, SpaceMismatch) as exc:
        stderr.write(f"bvorder: malformed input: {exc}\n")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
