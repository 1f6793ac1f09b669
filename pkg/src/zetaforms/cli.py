"""zetaforms command line.

    zetaforms decompose --a 20 --n 3 [--out table.json]
    zetaforms form      --a 20 --n 3 [--out form.json]
    zetaforms certify   --a 20 --n-max 4 --prec 80 [--out cert.json]
    zetaforms scan      --a-min 6 --a-max 24 --prec 30 [--out scan.csv]

Exit codes: 0 success / all checks pass, 1 a check failed or an internal
error, 2 usage or domain error.  The default precision comes from
ZETAFORMS_PREC when set; --prec wins.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .decomposition import CoeffTable, Params, coeff_table
from .errors import DomainError, PrecisionError
from .linear_form import build_polys

log = logging.getLogger("zetaforms")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_PREC = 80


class UsageError(Exception):
    pass


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to a temp file beside ``path`` and rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _default_prec() -> int:
    raw = os.environ.get("ZETAFORMS_PREC")
    if raw is None:
        return DEFAULT_PREC
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"ZETAFORMS_PREC={raw!r} is not an integer") from None
    return val


def _prec(args) -> int:
    prec = args.prec if args.prec is not None else _default_prec()
    if prec < 1:
        raise UsageError(f"--prec must be positive, got {prec}")
    return prec


def _seed(text: str | None):
    if text is None:
        return None
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"--seed-z0 {text!r} is not a complex number") from None


# ---------------------------------------------------------------- commands


def cmd_decompose(args) -> int:
    table = coeff_table(Params(args.a, args.n))
    _emit(table.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_form(args) -> int:
    form = build_polys(coeff_table(Params(args.a, args.n).require_even()))
    _emit(form.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    from .report import certify

    prec = _prec(args)
    a, n_max = args.a, args.n_max
    if n_max < 1:
        raise UsageError(f"--n-max must be >= 1, got {n_max}")
    Params(a, n_max).require_even()
    floor = 10 * n_max + 30
    if prec < floor:
        raise UsageError(
            f"--prec {prec} is below the floor 10*n_max + 30 = {floor}; the linear forms "
            f"cancel too heavily to keep any accuracy"
        )
    if not 0 < args.abscissa < 1:
        raise UsageError(f"--abscissa must lie in (0, 1), got {args.abscissa}")
    tables = {}
    for path in args.table or []:
        table = CoeffTable.from_json(Path(path).read_text(encoding="utf-8"))
        tables[table.params.n] = table

    progress = None
    if args.verbose:
        progress = lambda name: print(f"[certify] {name}", file=sys.stderr, flush=True)
    cert = certify(a, n_max, prec, abscissa=args.abscissa, seed_z0=_seed(args.seed_z0), tables=tables,
                   strict=args.strict, fail_fast=args.fail_fast, progress=progress)
    _emit(cert.to_json(include_timing=not args.no_timing), args.out)
    for c in cert.checks:
        tag = c.status.upper()
        extra = f" (stated: {c.stated})" if c.stated and c.stated != c.status else ""
        print(f"{tag:15s} {c.name}{extra}", file=sys.stderr)
    bad = cert.first_failure()
    if bad is not None:
        print(f"certify: check failed: {bad.name}: {bad.detail}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_scan(args) -> int:
    from .report import scan_rows

    prec = _prec(args)
    if args.a_min < 6 or args.a_min % 2:
        raise UsageError(f"--a-min must be an even integer >= 6, got {args.a_min}")
    if args.a_max < args.a_min:
        raise UsageError("--a-max must be >= --a-min")
    rows = scan_rows(args.a_min, args.a_max, prec)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "re_w0", "kappa", "first_negative"])
    for a, re_w0, kappa, first in rows:
        w.writerow([a, re_w0, kappa, "yes" if first else ""])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zetaforms", description="Linear forms in odd zeta values: exact tables, checks and certificates.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="progress and debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", help="partial-fraction table of R_n as JSON")
    d.add_argument("--a", type=int, required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--out", help="output file (default: stdout)")
    d.set_defaults(func=cmd_decompose)

    f = sub.add_parser("form", help="scaled integer coefficients of the linear form as JSON")
    f.add_argument("--a", type=int, required=True)
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--out")
    f.set_defaults(func=cmd_form)

    c = sub.add_parser("certify", help="run every check and write a certificate")
    c.add_argument("--a", type=int, default=20)
    c.add_argument("--n-max", type=int, required=True, dest="n_max")
    c.add_argument("--prec", type=int, default=None, help="decimal digits (default: $ZETAFORMS_PREC or 80)")
    c.add_argument("--out")
    c.add_argument("--abscissa", type=float, default=0.5, help="Re z of the quadrature line (default 0.5)")
    c.add_argument("--seed-z0", dest="seed_z0", help="Newton seed for the saddle, e.g. 0.99-0.01i")
    c.add_argument("--table", action="append", help="use this coefficient table JSON instead of computing it")
    c.add_argument("--strict", action="store_true", help="judge checks by their literal thresholds")
    c.add_argument("--fail-fast", action="store_true", dest="fail_fast", help="skip the remaining checks after a failure")
    c.add_argument("--no-timing", action="store_true", dest="no_timing", help="omit the timing block")
    c.set_defaults(func=cmd_certify)

    s = sub.add_parser("scan", help="kappa(a) over even a as CSV")
    s.add_argument("--a-min", type=int, default=6, dest="a_min")
    s.add_argument("--a-max", type=int, default=24, dest="a_max")
    s.add_argument("--prec", type=int, default=None)
    s.add_argument("--out")
    s.set_defaults(func=cmd_scan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"zetaforms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"zetaforms: precision error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"zetaforms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - report, never a traceback exit code
        log.debug("internal failure", exc_info=True)
        print(f"zetaforms: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
