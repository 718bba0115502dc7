"""Command-line front end: run a census, print or save its tables, verify it."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional, TextIO

from . import oracle
from .census import (
    CapExceededError,
    CensusAccumulator,
    CensusReport,
    ConsistencyError,
    Mode,
    check_census_order,
    check_invariants,
    expand_graph_terms,
    expand_sc_terms,
    histogram,
    report,
    run_census,
)
from .index_codec import decode, pair_count, to_binary
from .pairgroup import Permutation, cycle_weights, is_sc_admissible, pair_decomposition

EXIT_OK = 0
EXIT_BAD_ARGS = 2
EXIT_CAP = 3
EXIT_CONSISTENCY = 4
EXIT_MISMATCH = 5

# indices spot-checked against the oracle when exhaustive comparison is too slow
SPOT_SAMPLE = 8
SPOT_SEED = 20240101


class VerificationError(RuntimeError):
    pass


@dataclass
class RunConfig:
    n: int
    mode: Mode = Mode.GRAPHS
    format: str = "table"
    verify: bool = False
    workers: int = 1
    output_path: Optional[str] = None
    cap_override: bool = False
    timestamp: bool = False
    dump_coefficients: Optional[str] = None

    def validate(self) -> None:
        self.mode = check_census_order(self.n, self.mode)
        if self.format not in ("table", "csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.workers < 1:
            raise ValueError("--workers must be positive")
        if self.verify and not verifiable(self.n, self.mode):
            raise ValueError(
                f"--verify supports graphs n <= {oracle.CENSUS_MAX_ORDER} and "
                f"sc n in (4, 5, 8); got {self.mode.value} n={self.n}"
            )


def verifiable(n: int, mode: Mode) -> bool:
    if mode is Mode.GRAPHS:
        return n <= oracle.CENSUS_MAX_ORDER
    return n <= oracle.CENSUS_MAX_ORDER or n == 8


# ---------------------------------------------------------------------------
# rendering


def _pairs(pairs) -> str:
    return ",".join(f"({a},{b})" for a, b in pairs)


def format_table(rep: CensusReport) -> str:
    kind = "graphs" if rep.mode is Mode.GRAPHS else "self-complementary graphs"
    lines = [
        f"{kind}, n={rep.n}, lambda={rep.lam}",
        f"labelled   {_pairs(rep.labelled_pairs())}  total {rep.labelled_total}",
        f"unlabelled {_pairs(rep.unlabelled_pairs())}  total {rep.unlabelled_total}",
        f"burnside total {rep.burnside_total}",
    ]
    return "\n".join(lines) + "\n"


def format_csv(rep: CensusReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["group_order", "labelled", "unlabelled"])
    for r in sorted(rep.rows, key=lambda r: r.group_order):
        writer.writerow([r.group_order, r.labelled, r.unlabelled])
    return buf.getvalue()


def format_json(rep: CensusReport, timestamp: bool = False) -> str:
    doc = rep.to_json_dict()
    if timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render(rep: CensusReport, fmt: str, timestamp: bool = False) -> str:
    if fmt == "csv":
        return format_csv(rep)
    if fmt == "json":
        return format_json(rep, timestamp)
    return format_table(rep)


def dump_coefficients(acc: CensusAccumulator, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["L", "coefficient"])
        writer.writerows(acc.items())


def describe_permutation(n: int, alpha: Permutation, mode: Mode, limit: int = 64) -> str:
    dec = pair_decomposition(alpha)
    lines = [f"alpha = {alpha}  cycle type {list(dec.cycle_type)}"]
    for z in dec.cycles:
        cw = cycle_weights(z)
        body = ",".join(f"{i}{j}" for i, j in z.elements)
        lines.append(f"  ({body})  W={cw.full} W1={cw.odd} W2={cw.even}")
    if mode is Mode.SC:
        if not is_sc_admissible(alpha):
            lines.append("not admissible: maps no graph onto its complement")
            return "\n".join(lines) + "\n"
        terms = list(expand_sc_terms(alpha))
    else:
        terms = list(expand_graph_terms(alpha))
    shown = sorted(terms)[:limit]
    more = f" ... ({len(terms)} total)" if len(terms) > limit else ""
    lines.append(f"terms ({len(terms)}): " + " ".join(map(str, shown)) + more)
    if len(terms) <= limit:
        for L in shown:
            lines.append(f"  {L:>8}  {to_binary(n, L)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verification


def _mismatch(n: int, L: int, engine: int, expected: int) -> VerificationError:
    return VerificationError(
        f"first divergence at L={L} ({to_binary(n, L)}): engine {engine}, oracle {expected}"
    )


def verify(acc: CensusAccumulator, out: TextIO = sys.stderr) -> int:
    """Compare an engine census with the brute-force oracle; returns the count compared.

    Exhaustive for n <= 5; for sc n = 8 a seeded sample of indices is checked.
    """
    n, mode = acc.n, acc.mode
    if n <= oracle.CENSUS_MAX_ORDER:
        records = oracle.full_oracle_census(n)
        for L, rec in records.items():
            if mode is Mode.GRAPHS:
                expected = rec.aut_order
            else:
                expected = rec.aut_order if rec.self_complementary else 0
            if acc[L] != expected:
                raise _mismatch(n, L, acc[L], expected)
        if mode is Mode.SC:
            compared = sum(r.self_complementary for r in records.values())
            truth = [r.aut_order for r in records.values() if r.self_complementary]
        else:
            compared = len(records)
            truth = [r.aut_order for r in records.values()]
        expected_hist = {xi: truth.count(xi) for xi in sorted(set(truth))}
        if histogram(acc) != expected_hist:
            raise VerificationError(
                f"histogram {histogram(acc)} differs from oracle {expected_hist}"
            )
    elif mode is Mode.SC and n == 8:
        compared = _spot_check_sc(acc)
    else:
        raise ValueError(f"no oracle comparison available for {mode.value} n={n}")
    try:
        check_invariants(acc)
    except ConsistencyError as exc:
        raise VerificationError(str(exc)) from exc
    print(f"verify: {mode.value} n={n}: {compared} indices agree with the oracle", file=out)
    return compared


def _spot_check_sc(acc: CensusAccumulator) -> int:
    n = acc.n
    lam = pair_count(n)
    rng = random.Random(SPOT_SEED)
    keys = acc.indices().tolist()
    for L in rng.sample(keys, min(SPOT_SAMPLE, len(keys))):
        g = decode(n, L)
        if not oracle.is_self_complementary(g):
            raise _mismatch(n, L, acc[L], 0)
        aut = oracle.aut_order_bruteforce(g)
        if aut != acc[L]:
            raise _mismatch(n, L, acc[L], aut)
    # half-edge indices outside the key set must not be self-complementary
    checked = 0
    while checked < SPOT_SAMPLE // 2:
        L = sum(1 << b for b in rng.sample(range(lam), lam // 2))
        if L in acc:
            continue
        if oracle.is_self_complementary(decode(n, L)):
            raise _mismatch(n, L, 0, oracle.aut_order_bruteforce(decode(n, L)))
        checked += 1
    return SPOT_SAMPLE + checked


# ---------------------------------------------------------------------------
# entry points


def run(config: RunConfig, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    try:
        config.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_BAD_ARGS
    try:
        acc = run_census(
            config.n,
            config.mode,
            workers=config.workers,
            allow_large=config.cap_override,
            verify=config.verify,
        )
        if config.verify:
            verify(acc, out=stderr)
        rep = report(acc)
    except CapExceededError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_CAP
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=stderr)
        return EXIT_CONSISTENCY
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=stderr)
        return EXIT_MISMATCH

    text = render(rep, config.format, config.timestamp)
    if config.output_path:
        with open(config.output_path, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if config.dump_coefficients:
        dump_coefficients(acc, config.dump_coefficients)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphcensus",
        description="Count labelled and unlabelled graphs (or self-complementary "
        "graphs) by automorphism group order.",
    )
    p.add_argument("--n", type=int, required=True, help="number of vertices")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="graphs")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--verify", action="store_true", help="cross-check against the brute-force oracle")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--allow-large", action="store_true", help="lift the default size caps")
    p.add_argument("--timestamp", action="store_true", help="add a timestamp field to JSON output")
    p.add_argument("--dump-coefficients", metavar="PATH", help='write "L,coefficient" rows')
    p.add_argument(
        "--debug-permutation",
        metavar="CYCLES",
        help='print the pair decomposition and terms of one permutation, e.g. "(1 2 3 4)(5)"',
    )
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.debug_permutation is not None:
        try:
            mode = check_census_order(args.n, args.mode)
            alpha = Permutation.from_cycles(args.n, args.debug_permutation)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BAD_ARGS
        sys.stdout.write(describe_permutation(args.n, alpha, mode))
        return EXIT_OK
    config = RunConfig(
        n=args.n,
        mode=args.mode,
        format=args.format,
        verify=args.verify,
        workers=args.workers,
        output_path=args.out,
        cap_override=args.allow_large,
        timestamp=args.timestamp,
        dump_coefficients=args.dump_coefficients,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
