"""Command-line front end: ``list``, ``eval``, ``verify``, ``verify-all``, ``report``.

Exit codes: 0 when every requested verification passes, 1 on any failure,
2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import catalog, elliptic, specfun
from .errors import DomainError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class CliConfig:
    command: str
    entry_id: str | None = None
    k_values: tuple | None = None
    tol: float | None = None
    format: str = "json"
    output: str | None = None
    timing: bool = True

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise DomainError("--tol must be positive")
        if self.format not in FORMATS:
            raise DomainError(f"--format must be one of {', '.join(FORMATS)}")


# name -> (parameter names, function)
EVAL_FUNCTIONS: dict[str, tuple[tuple[str, ...], Callable]] = {
    "K": (("k",), elliptic.ellip_k),
    "E": (("k",), elliptic.ellip_e),
    "Kp": (("k",), elliptic.comp_k),
    "Ep": (("k",), elliptic.comp_e),
    "Pi": (("n", "k"), elliptic.ellip_pi),
    "K-series": (("k",), elliptic.ellip_k_series),
    "E-series": (("k",), elliptic.ellip_e_series),
    "legendre": (("k",), elliptic.legendre_residual),
    "singular-modulus": (("r",), lambda r: elliptic.singular_modulus(int(r))),
    "gamma": (("x",), specfun.gamma),
    "lgamma": (("x",), specfun.log_gamma),
    "digamma": (("x",), specfun.digamma),
    "beta": (("a", "b"), specfun.beta),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    text = text.strip()
    if not text:
        return []
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _param(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key} needs a number, got {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ellipcheck", description="Verify elliptic-integral table entries numerically.")
    sub = p.add_subparsers(dest="command", metavar="{list,eval,verify,verify-all,report}",
                           parser_class=_Parser)
    sub.required = True

    def common(sp, default_format):
        sp.add_argument("--format", choices=FORMATS, default=default_format)
        sp.add_argument("--output", "-o", help="write to this file instead of standard output")

    sp = sub.add_parser("list", help="list registered entries")
    common(sp, "text")

    sp = sub.add_parser("eval", help="evaluate a special function")
    sp.add_argument("function", choices=sorted(EVAL_FUNCTIONS))
    for name in ("k", "x", "n", "a", "b", "r"):
        sp.add_argument(f"--{name}", type=_float_list, help="comma-separated values")
    common(sp, "text")

    for name, helptext in (("verify", "verify one entry"), ("verify-all", "verify every entry on a k grid")):
        sp = sub.add_parser(name, help=helptext)
        if name == "verify":
            sp.add_argument("entry_id")
            sp.add_argument("--param", "-p", type=_param, action="append", default=[],
                            help="extra parameter, e.g. -p r=3")
            sp.add_argument("--route", default=None, help="route name, or 'all' (default: primary)")
        else:
            sp.add_argument("--routes", choices=("all", "primary"), default="all")
        sp.add_argument("--k", type=_float_list, default=None, help="comma-separated moduli")
        sp.add_argument("--tol", type=float, default=None,
                        help="tolerance override (default: each entry's own, 1e-9 for most)")
        sp.add_argument("--no-timing", action="store_true", help="omit elapsed times for reproducible output")
        common(sp, "json")

    sp = sub.add_parser("report", help="re-render a saved JSON report")
    sp.add_argument("path")
    common(sp, "text")
    return p


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(results, fmt: str, skipped=()) -> str:
    if fmt == "json":
        return catalog.results_to_json(results)
    if fmt == "csv":
        return catalog.results_to_csv(results)
    return catalog.results_to_text(results, skipped)


def _check_grid(ks):
    if ks is None:
        return
    for k in ks:
        if not 0.0 <= k < 1.0 or math.isnan(k):
            raise DomainError(f"k values must lie in [0, 1), got {k!r}")


def _cmd_list(args) -> int:
    entries = catalog.list_entries()
    if args.format == "json":
        rows = [{
            "id": e.id, "method": e.method, "lhs_recipe": e.lhs_recipe, "rhs_closed_form": e.rhs_closed_form,
            "domain": e.k_domain.describe(), "default_tol": e.default_tol, "routes": list(e.route_names),
            "errata": e.errata, "principal_value": e.principal_value,
        } for e in entries]
        _emit(json.dumps(rows, indent=2, sort_keys=True) + "\n", args.output)
    elif args.format == "csv":
        lines = ["id,domain,default_tol,routes,principal_value"]
        for e in entries:
            lines.append(f'{e.id},"{e.k_domain.describe()}",{e.default_tol!r},{"|".join(e.route_names)},'
                         f'{str(e.principal_value).lower()}')
        _emit("\n".join(lines) + "\n", args.output)
    else:
        lines = []
        for e in entries:
            flags = " [PV]" if e.principal_value else ""
            lines.append(f"{e.id:<16} {e.rhs_closed_form}{flags}")
            lines.append(f"{'':<16} domain: {e.k_domain.describe()}; routes: {', '.join(e.route_names)}")
            if e.errata:
                lines.append(f"{'':<16} errata: {e.errata}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _cmd_eval(args) -> int:
    names, fn = EVAL_FUNCTIONS[args.function]
    columns = []
    for name in names:
        vals = getattr(args, name)
        if not vals:
            raise DomainError(f"{args.function} needs --{name}")
        columns.append(vals)
    n = max(len(c) for c in columns)
    if any(len(c) not in (1, n) for c in columns):
        raise DomainError("argument lists must have equal length (or length 1)")
    rows = []
    for i in range(n):
        argv = [c[0] if len(c) == 1 else c[i] for c in columns]
        rows.append((dict(zip(names, argv)), fn(*argv)))
    if args.format == "json":
        text = json.dumps([{"function": args.function, "args": a, "value": v} for a, v in rows],
                          indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        text = ",".join((*names, "value")) + "\n" + "".join(
            ",".join(repr(x) for x in (*a.values(), v)) + "\n" for a, v in rows)
    else:
        text = "".join(f"{v!r}\n" for _, v in rows)
    _emit(text, args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    cfg = CliConfig("verify", args.entry_id, tuple(args.k) if args.k is not None else None, args.tol,
                    args.format, args.output, not args.no_timing)
    _check_grid(cfg.k_values)
    entry = catalog.get_entry(cfg.entry_id)
    extra = dict(args.param)
    if entry.k_domain.has_k and not cfg.k_values:
        raise DomainError(f"{entry.id} needs --k")
    if not entry.k_domain.has_k and cfg.k_values:
        raise DomainError(f"{entry.id} takes no k parameter")
    base = [dict(extra, k=k) for k in cfg.k_values] if cfg.k_values else [extra]
    # entries with discrete parameters default to every point
    if not extra and entry.k_domain.points != ({},):
        base = [dict(b, **pt) for b in base for pt in entry.k_domain.points]
    results = []
    for p in base:
        if args.route == "all":
            names = [r.name for r in entry.routes if r.available(p)]
        else:
            names = [args.route]
        for name in names:
            q = dict(p) if name is None else dict(p, route=name)
            results.append(catalog.verify_entry(entry.id, q, cfg.tol, timing=cfg.timing))
    _emit(_render(results, cfg.format), cfg.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _cmd_verify_all(args) -> int:
    cfg = CliConfig("verify-all", None, tuple(args.k) if args.k is not None else None, args.tol,
                    args.format, args.output, not args.no_timing)
    _check_grid(cfg.k_values)
    results = catalog.verify_all(cfg.k_values, cfg.tol, timing=cfg.timing, routes=args.routes)
    skipped = catalog.skipped_pairs(cfg.k_values)
    _emit(_render(results, cfg.format, skipped), cfg.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _cmd_report(args) -> int:
    with open(args.path, encoding="utf-8") as fh:
        results = catalog.results_from_json(fh.read())
    _emit(_render(results, args.format), args.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "list": _cmd_list,
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "verify-all": _cmd_verify_all,
    "report": _cmd_report,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Run one CLI invocation and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    except (DomainError, catalog.UnknownEntryError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"ellipcheck: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"ellipcheck: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
