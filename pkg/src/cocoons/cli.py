"""Command-line front end.

Usage::

    cocoons primes --limit 100
    cocoons composites --limit 100 --dump bits.cocn
    cocoons census --m 15
    cocoons verify --limit 99999 --threads 4
    cocoons scan --limit 100000 -o scan.csv
    cocoons bench --limit 10000000 --impl tables

Exit status: 0 success, 1 usage error, 2 domain error, 3 identity or
theorem violation.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import IO, Sequence

from . import __version__
from .census import M_FORM_MESSAGE, verify_identities, verify_range
from .errors import DomainError, MemoryCapError, TheoremViolation
from .gaps import classify, reconstruct_primes
from .oracle import oracle_odd_composites, sieve_primes
from .scan import iter_scan, summarize, write_csv, write_jsonl, format_float
from .tables import default_memory_cap, membership_bytes, odd_composites

__all__ = ["CommandConfig", "UsageError", "parse_args", "run", "main"]

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VIOLATION = 0, 1, 2, 3

COMMANDS = ("primes", "composites", "census", "verify", "scan", "bench")
FORMATS = ("text", "csv", "jsonl")


class UsageError(Exception):
    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


@dataclass(frozen=True)
class CommandConfig:
    command: str
    limit: int | None = None
    m: int | None = None
    output_format: str = "text"
    output_path: str | None = None
    threads: int = 1
    memory_cap: int | None = None
    impl: str = "tables"
    dump_path: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default=None)
    common.add_argument("-o", "--output", dest="output_path", default=None, help="write to this file instead of stdout")
    common.add_argument("--threads", type=int, default=None, help="worker threads for enumeration (default: all cores)")
    common.add_argument("--memory-cap", type=int, default=None, help="byte bound for the membership bit array")

    parser = _Parser(prog="cocoons", description="Odd composite gaps, prime reconstruction and counting identities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    help_text = {
        "primes": "primes up to LIMIT, from gap midpoints",
        "composites": "odd composites up to LIMIT",
        "verify": "check every identity for all valid m <= LIMIT against a sieve",
        "scan": "exact ratio sequences and running minima for all valid m <= LIMIT",
        "bench": "time odd composite enumeration",
    }
    for name in COMMANDS:
        if name == "census":
            p = sub.add_parser(name, parents=[common], help="counts and identities at one threshold M")
            p.add_argument("--m", type=int, required=True, help="threshold of the form 3(2n+1)")
            continue
        p = sub.add_parser(name, parents=[common], help=help_text[name])
        p.add_argument("--limit", type=int, required=True)
        if name == "bench":
            p.add_argument("--impl", choices=("tables", "oracle"), default="tables")
        if name == "composites":
            p.add_argument("--dump", dest="dump_path", default=None, help="also write the binary membership dump here")
    return parser


def parse_args(argv: Sequence[str]) -> CommandConfig:
    parser = _build_parser()
    ns = parser.parse_args(list(argv))
    if ns.command == "census" and (ns.m < 9 or ns.m % 6 != 3):
        raise UsageError(f"{M_FORM_MESSAGE}; got {ns.m}", parser.format_usage())
    if ns.threads is not None and ns.threads < 1:
        raise UsageError(f"--threads must be at least 1, got {ns.threads}", parser.format_usage())
    if ns.memory_cap is not None and ns.memory_cap < 1:
        raise UsageError(f"--memory-cap must be positive, got {ns.memory_cap}", parser.format_usage())

    fmt = ns.output_format or ("csv" if ns.command == "scan" else "text")
    return CommandConfig(
        command=ns.command,
        limit=getattr(ns, "limit", None),
        m=getattr(ns, "m", None),
        output_format=fmt,
        output_path=ns.output_path,
        threads=ns.threads or os.cpu_count() or 1,
        memory_cap=ns.memory_cap,
        impl=getattr(ns, "impl", "tables"),
        dump_path=getattr(ns, "dump_path", None),
    )


def _validate(config: CommandConfig) -> int:
    n = config.m if config.command == "census" else config.limit
    if n < 9:
        raise DomainError(f"limit must be at least 9, got {n}")
    cap = config.memory_cap or default_memory_cap()
    # primes rounds its limit up to the next odd multiple of 3
    need = membership_bytes(n + 6)
    if need > cap:
        raise MemoryCapError(f"limit {n} needs {need} bytes of membership bits, cap is {cap}")
    return cap


@contextlib.contextmanager
def _sink(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit_column(name: str, values: list[int], fmt: str, out: IO[str]) -> None:
    if fmt == "text":
        out.write(" ".join(map(str, values)) + "\n")
    elif fmt == "csv":
        out.write(name + "\n")
        out.writelines(f"{v}\n" for v in values)
    else:
        out.writelines(json.dumps({name: v}) + "\n" for v in values)


def _cmd_primes(config, cap, out):
    limit = config.limit
    # enumerate up to an odd multiple of 3 so no prime above the last cocoon is lost
    top = limit + (3 - limit % 6) % 6
    classified = classify(odd_composites(top, threads=config.threads, memory_cap=cap))
    primes = reconstruct_primes(classified)
    _emit_column("p", primes[primes <= limit].tolist(), config.output_format, out)
    return EXIT_OK


def _cmd_composites(config, cap, out):
    cocoons = odd_composites(config.limit, threads=config.threads, memory_cap=cap)
    if config.dump_path:
        cocoons.dump(config.dump_path)
    _emit_column("cocoon", cocoons.values.tolist(), config.output_format, out)
    return EXIT_OK


def _census_record(report, ident):
    return {
        "m": report.m, "t": report.t, "a2": report.a2, "a4": report.a4, "a6": report.a6, "pi": report.pi,
        "oracle_pi": ident.oracle_pi, "oracle_match": ident.oracle_match,
        "identities": {c.name: c.passed for c in ident.checks},
    }  # fmt: skip


def _cmd_census(config, cap, out):
    ident = verify_identities(config.m, use_oracle=True, threads=config.threads, memory_cap=cap)
    report = ident.census
    fmt = config.output_format
    if fmt == "text":
        out.write(f"m={report.m} t={report.t} a2={report.a2} a4={report.a4} a6={report.a6} pi={report.pi}\n")
        for c in ident.checks:
            out.write(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.left} == {c.right}\n")
        out.write(f"oracle_pi={ident.oracle_pi} {'MATCH' if ident.oracle_match else 'MISMATCH'}\n")
    elif fmt == "csv":
        out.write("m,t,a2,a4,a6,pi,oracle_pi,passed\n")
        out.write(f"{report.m},{report.t},{report.a2},{report.a4},{report.a6},{report.pi},{ident.oracle_pi},{int(ident.passed)}\n")
    else:
        out.write(json.dumps(_census_record(report, ident)) + "\n")
    return _report_failures([ident])


def _report_failures(reports) -> int:
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"violation at m={r.m}: {', '.join(r.failures)}", file=sys.stderr)
    return EXIT_VIOLATION if failed else EXIT_OK


def _cmd_verify(config, cap, out):
    reports = verify_range(config.limit, use_oracle=True, threads=config.threads, memory_cap=cap)
    failed = [r for r in reports if not r.passed]
    fmt = config.output_format
    if fmt == "text":
        for r in failed:
            out.write(f"FAIL m={r.m} {' '.join(r.failures)}\n")
        out.write(f"checked {len(reports)} values of m up to {config.limit}: {len(failed)} failures\n")
        last = reports[-1]
        out.write(f"largest m={last.m} pi={last.census.pi} oracle_pi={last.oracle_pi}\n")
    elif fmt == "csv":
        out.write("m,pi,oracle_pi,passed,failures\n")
        for r in reports:
            out.write(f"{r.m},{r.census.pi},{r.oracle_pi},{int(r.passed)},{';'.join(r.failures)}\n")
    else:
        for r in reports:
            rec = {"m": r.m, "pi": r.census.pi, "oracle_pi": r.oracle_pi, "passed": r.passed, "failures": r.failures}
            out.write(json.dumps(rec) + "\n")
    return _report_failures(reports)


def _cmd_scan(config, cap, out):
    rows = iter_scan(config.limit, threads=config.threads, memory_cap=cap)
    fmt = config.output_format
    if fmt == "csv":
        write_csv(rows, out)
    elif fmt == "jsonl":
        write_jsonl(rows, out)
    else:
        summary = summarize(config.limit, rows)
        out.write(f"rows: {summary.rows_emitted} (valid m <= {summary.limit})\n")
        out.write(
            f"empirical minimum so far of s: {summary.final_min_s} "
            f"~ {format_float(summary.final_min_s)} at m={summary.argmin_m_s}\n"
        )
        out.write(
            f"empirical minimum so far of s_tilde: {summary.final_min_s_tilde} "
            f"~ {format_float(summary.final_min_s_tilde)} at m={summary.argmin_m_s_tilde}\n"
        )
    return EXIT_OK


def _cmd_bench(config, cap, out):
    start = time.perf_counter()
    if config.impl == "tables":
        count = len(odd_composites(config.limit, threads=config.threads, memory_cap=cap))
    else:
        count = len(oracle_odd_composites(config.limit, sieve_primes(config.limit)))
    elapsed = time.perf_counter() - start
    rate = config.limit / elapsed if elapsed > 0 else float("inf")
    rec = {"impl": config.impl, "limit": config.limit, "count": count, "seconds": round(elapsed, 6), "numbers_per_second": round(rate)}
    fmt = config.output_format
    if fmt == "text":
        out.write(f"impl={config.impl} limit={config.limit} count={count} seconds={elapsed:.6f} throughput={rate:.4g} numbers/s\n")
    elif fmt == "csv":
        out.write(",".join(rec) + "\n" + ",".join(str(v) for v in rec.values()) + "\n")
    else:
        out.write(json.dumps(rec) + "\n")
    return EXIT_OK


_HANDLERS = {
    "primes": _cmd_primes,
    "composites": _cmd_composites,
    "census": _cmd_census,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "bench": _cmd_bench,
}


def run(config: CommandConfig) -> int:
    """Execute a parsed command, mapping errors onto exit codes."""
    try:
        cap = _validate(config)
        with _sink(config.output_path) as out:
            return _HANDLERS[config.command](config, cap, out)
    except TheoremViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(exc.usage + f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
