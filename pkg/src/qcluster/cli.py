"""Command-line interface: ``qcluster <command> ...``.

Exit status is 0 on success, 1 when a mathematical check fails or a seed is
incompatible, and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import golden
from .errors import FindingError, InvalidArgs, QClusterError
from .projective import closed_form_check, compute_family, exchange_relation
from .qseed import is_acyclic, mutate_seed
from .qtorus import element_to_json
from .serialize import ParseError, dumps, load_element, load_seed, seed_to_json
from .straighten import (
    comm_same_index,
    straighten_power,
    to_projective_standard,
    to_standard_monomials,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcluster", description="Exact computations in acyclic quantum cluster algebras.")
    p.add_argument("--step-cap", type=_positive, default=None, help="cap on reduction steps (default: $QCL_STEP_CAP or 100000)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    sp = sub.add_parser("verify", help="check compatibility and acyclicity of a seed")
    sp.add_argument("seed")
    common(sp)

    sp = sub.add_parser("mutate", help="mutate a seed in direction k")
    sp.add_argument("seed")
    sp.add_argument("k", type=_positive)
    common(sp)

    sp = sub.add_parser("projective", help="compute the projective cluster variables")
    sp.add_argument("seed")
    common(sp)

    sp = sub.add_parser("straighten", help="straightening relation for x_j^(n) and x_k^l")
    sp.add_argument("seed")
    sp.add_argument("j", type=_positive)
    sp.add_argument("k", type=_positive)
    sp.add_argument("l", type=_positive, nargs="?", default=1)
    common(sp)

    sp = sub.add_parser("expand", help="expand an element in a monomial basis")
    sp.add_argument("seed")
    sp.add_argument("element")
    sp.add_argument("--basis", choices=("psm", "standard"), default="psm")
    common(sp)

    sp = sub.add_parser("example", help="run the built-in rank-3 regression suite")
    sp.add_argument("--verify", action="store_true", help="exit 1 unless every identity holds")
    sp.add_argument("--seed", metavar="FILE", help="take B and Lambda from FILE instead")
    common(sp)
    return p


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _diag(d) -> str:
    return f"diag({','.join(map(str, d))})"


def cmd_verify(args) -> int:
    seed = load_seed(args.seed)
    acyclic = is_acyclic(seed.pair.B)
    if args.json:
        _emit(args, dumps({"D": list(seed.D), "acyclic": acyclic, "compatible": True}))
    else:
        _emit(args, f"D = {_diag(seed.D)}; acyclic: {'yes' if acyclic else 'no'}\n")
    return EXIT_OK


def cmd_mutate(args) -> int:
    seed = load_seed(args.seed)
    if args.k > seed.n:
        raise InvalidArgs(f"k={args.k} out of range [1, {seed.n}]")
    _emit(args, dumps(seed_to_json(mutate_seed(seed, args.k, step_cap=args.step_cap))))
    return EXIT_OK


def cmd_projective(args) -> int:
    fam = compute_family(load_seed(args.seed), step_cap=args.step_cap)
    report = closed_form_check(fam)
    bullets = [exchange_relation(fam, k)[0] for k in range(1, fam.n + 1)]
    if args.json:
        doc = {
            "n": fam.n,
            "proj_vars": [element_to_json(v) for v in fam.proj_vars],
            "closed_forms_ok": report.ok,
            "exchange_exponents": [str(b) for b in bullets],
        }
        _emit(args, dumps(doc))
    else:
        lines = [f"x{k}^({fam.n}) = {fam.xproj(k).pretty()}" for k in range(1, fam.n + 1)]
        lines.append(str(report))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_straighten(args) -> int:
    fam = compute_family(load_seed(args.seed), step_cap=args.step_cap)
    if args.j == args.k:
        cert = comm_same_index(fam, args.k, args.l, step_cap=args.step_cap)
    else:
        cert = straighten_power(fam, args.j, args.k, args.l, step_cap=args.step_cap)
    if args.json:
        doc = {
            "j": cert.j,
            "k": cert.k,
            "l": cert.l,
            "q_twist": str(cert.q_twist),
            "remainder": element_to_json(cert.remainder),
            "expansion": cert.remainder_expansion.to_json(),
        }
        _emit(args, dumps(doc))
    else:
        _emit(args, cert.summary() + "\n")
    return EXIT_OK


def cmd_expand(args) -> int:
    seed = load_seed(args.seed)
    u = load_element(args.element, seed.ambient)
    if args.basis == "psm":
        exp = to_projective_standard(compute_family(seed, step_cap=args.step_cap), u, step_cap=args.step_cap)
    else:
        exp = to_standard_monomials(seed, u, step_cap=args.step_cap)
    if exp.evaluate() != u:
        raise FindingError("expansion does not evaluate back to the input")
    _emit(args, dumps(exp.to_json()) if args.json else exp.pretty() + "\n")
    return EXIT_OK


def cmd_example(args) -> int:
    if args.seed:
        seed = load_seed(args.seed)
        results = golden.run_suite(seed.btilde, seed.form.matrix)
    else:
        results = golden.run_suite()
    ok = all(r.ok for r in results)
    if args.json:
        doc = {"ok": ok, "results": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}
        _emit(args, dumps(doc))
    else:
        text = "\n".join(r.line() for r in results)
        summary = f"{sum(r.ok for r in results)}/{len(results)} identities hold"
        if not ok:
            first = next(r for r in results if not r.ok)
            summary += f"; first failure: {first.name}"
        _emit(args, text + "\n" + summary + "\n")
    return EXIT_OK if ok or not args.verify else EXIT_FAIL


COMMANDS = {
    "verify": cmd_verify,
    "mutate": cmd_mutate,
    "projective": cmd_projective,
    "straighten": cmd_straighten,
    "expand": cmd_expand,
    "example": cmd_example,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.step_cap is None and os.environ.get("QCL_STEP_CAP"):
        try:
            args.step_cap = int(os.environ["QCL_STEP_CAP"])
        except ValueError:
            print("qcluster: QCL_STEP_CAP must be an integer", file=sys.stderr)
            return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (ParseError, InvalidArgs) as exc:
        print(f"qcluster: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QClusterError as exc:
        print(f"qcluster: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except json.JSONDecodeError as exc:
        print(f"qcluster: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
