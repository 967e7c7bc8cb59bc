"""Command-line front end: ``nicehf validate|info|nice|hf|hfk``."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field

from nicehf import floer
from nicehf.admissibility import is_admissible
from nicehf.diagram import (
    DiagramError,
    complexity,
    is_nice,
    parse_diagram,
    region_histogram,
    serialize,
    stats,
)
from nicehf.nicing import NicingError, make_nice

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


class InvariantFailure(RuntimeError):
    """A computed invariant failed a consistency check."""


@dataclass
class RunReport:
    command: str
    digest: str
    stats: dict = field(default_factory=dict)
    nice: bool | None = None
    admissible: bool | None = None
    moves: int | None = None
    histogram_before: dict | None = None
    histogram_after: dict | None = None
    generators: int | None = None
    disks: int | None = None
    total_rank: int | None = None
    ranks: list = field(default_factory=list)
    oracle: str | None = None
    notices: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def to_json(self, timings: bool = True) -> dict:
        out = {"schema": SCHEMA}
        for k, v in self.__dict__.items():
            if k == "timings" and not timings:
                continue
            if v is None or v == [] or v == {}:
                continue
            out[k] = v
        return out

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"digest: sha256:{self.digest}"]
        for k, v in self.stats.items():
            if isinstance(v, dict):
                v = ", ".join(f"{a}={b}" for a, b in v.items()) or "-"
            lines.append(f"{k}: {v}")
        for key in ("nice", "admissible", "moves"):
            v = getattr(self, key)
            if v is not None:
                lines.append(f"{key}: {v}")
        if self.histogram_before is not None:
            lines.append("regions before: " + _fmt_hist(self.histogram_before))
            lines.append("regions after: " + _fmt_hist(self.histogram_after))
        for key in ("generators", "disks", "total_rank"):
            v = getattr(self, key)
            if v is not None:
                lines.append(f"{key.replace('_', ' ')}: {v}")
        if self.ranks:
            lines.append("class  maslov  alexander  rank")
            for row in self.ranks:
                lines.append(f"{row['class']:>5}  {row['maslov']:>6}  {row['alexander']:>9}  {row['rank']:>4}")
        if self.oracle:
            lines.append(f"oracle: {self.oracle}")
        for note in self.notices:
            lines.append(f"notice: {note}")
        for k, v in self.timings.items():
            lines.append(f"time {k}: {v:.3f}s")
        return "\n".join(lines)


def _fmt_hist(h: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in h.items()) or "-"


class _Clock:
    def __init__(self, report: RunReport):
        self.report = report

    def __call__(self, stage: str):
        clock = self

        class _Stage:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                clock.report.timings[stage] = time.perf_counter() - self.t0
                return False

        return _Stage()


def _load(path: str, report: RunReport):
    with open(path, "rb") as fh:
        raw = fh.read()
    report.digest = hashlib.sha256(raw).hexdigest()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DiagramError(f"not UTF-8: {exc}") from None
    return parse_diagram(text)


def cmd_validate(args, report: RunReport, clock: _Clock) -> None:
    with clock("parse"):
        d = _load(args.path, report)
    report.stats = stats(d)
    report.nice = is_nice(d)


def cmd_info(args, report: RunReport, clock: _Clock) -> None:
    with clock("parse"):
        d = _load(args.path, report)
    report.stats = stats(d)
    report.nice = is_nice(d)
    with clock("admissibility"):
        report.admissible = is_admissible(d)
    if all(r.is_disk or r.w for r in d.regions):
        dist, cx = complexity(d)
        report.stats["max_bad_distance"] = dist
        report.stats["complexity"] = list(cx)
    with clock("generators"):
        report.generators = len(floer.enumerate_generators(d))


def cmd_nice(args, report: RunReport, clock: _Clock) -> None:
    with clock("parse"):
        d = _load(args.path, report)
    report.stats = stats(d)
    report.histogram_before = region_histogram(d)
    with clock("nice"):
        nd, log = make_nice(d)
    report.moves = len(log)
    report.histogram_after = region_histogram(nd)
    report.nice = is_nice(nd)
    report.admissible = is_admissible(nd)
    report.generators = len(floer.enumerate_generators(nd))
    out = args.output or args.path.rsplit(".", 1)[0] + ".nice.hd"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(serialize(nd))
    log_path = args.log or out.rsplit(".", 1)[0] + ".moves"
    with open(log_path, "w", encoding="utf-8") as fh:
        fh.write(log.serialize())
    report.notices.append(f"wrote {out} and {log_path}")


def cmd_hf(args, report: RunReport, clock: _Clock, knot: bool = False) -> None:
    knot = knot or args.knot
    with clock("parse"):
        d = _load(args.path, report)
    report.stats = stats(d)
    if knot and len(d.z) != len(d.w):
        raise DiagramError("knot mode needs a z basepoint for every w basepoint")
    if not is_nice(d):
        if args.strict:
            raise floer.NotNiceError("input is not nice and --strict forbids nicing")
        report.notices.append("input is not nice; running the nicing algorithm first")
        with clock("nice"):
            d, log = make_nice(d)
        report.moves = len(log)
    report.nice = True
    if knot and len(d.w) > 1:
        report.notices.append("link mode (several w/z pairs) is experimental")
    with clock("complex"):
        c = floer.differential(d, knot=knot, jobs=args.jobs)
    report.generators = len(c.generators)
    report.disks = c.num_disks
    if args.oracle:
        with clock("oracle"):
            report.oracle = _oracle_check(d, c, knot, args.max_regions)
    with clock("homology"):
        table, warnings = floer.normalize(floer.homology_ranks(c), knot)
    report.notices.extend(warnings)
    report.total_rank = floer.total_rank(table)
    report.ranks = [
        {"class": k, "maslov": m, "alexander": a, "rank": r}
        for (k, m, a), r in sorted(table.items())
        if r
    ]
    if args.matrix:
        with open(args.matrix, "w", encoding="utf-8") as fh:
            fh.write("# source target: an odd number of disks from source to target\n")
            for i, j in sorted(c.matrix.nonzero(), key=lambda ij: (ij[1], ij[0])):
                src, dst = c.generators[j], c.generators[i]
                fh.write(f"{','.join(src)} {','.join(dst)}\n")


def _oracle_check(d, c, knot: bool, max_regions: int) -> str:
    try:
        ref = floer.bruteforce_domains(d, max_regions=max_regions, knot=knot)
    except floer.GuardError as exc:
        return f"skipped ({exc})"
    got = {disk.key() for disk in c.disks}
    want = {disk.key() for disk in ref}
    if got != want:
        raise InvariantFailure(
            f"disk search and oracle disagree: {len(got - want)} extra, {len(want - got)} missing"
        )
    return f"agrees on {len(got)} disks"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nicehf", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("path", help=".hd diagram file")
        sp.add_argument("--json", action="store_true", help="emit the report as JSON")

    sp = sub.add_parser("validate", help="parse and check a diagram")
    common(sp)
    sp = sub.add_parser("info", help="statistics, niceness, admissibility")
    common(sp)
    sp = sub.add_parser("nice", help="run the nicing algorithm")
    common(sp)
    sp.add_argument("-o", "--output", help="output diagram (default: <input>.nice.hd)")
    sp.add_argument("--log", help="move log path (default: <output>.moves)")
    for name in ("hf", "hfk"):
        sp = sub.add_parser(name, help="hat Floer homology" if name == "hf" else "hat knot Floer homology")
        common(sp)
        sp.add_argument("--strict", action="store_true", help="refuse non-nice input")
        sp.add_argument("--oracle", action="store_true", help="cross-check disks by brute force")
        sp.add_argument("--max-regions", type=int, default=32, help="oracle guard (default 32)")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for the disk search")
        sp.add_argument("--matrix", help="write the differential as sparse pairs")
        if name == "hf":
            sp.add_argument("--knot", action="store_true", help="also require n_z = 0")
    return p


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "nice": cmd_nice,
    "hf": cmd_hf,
    "hfk": lambda a, r, c: cmd_hf(a, r, c, knot=True),
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report = RunReport(command=args.command, digest="")
    clock = _Clock(report)
    code = EXIT_OK
    error = None
    try:
        COMMANDS[args.command](args, report, clock)
    except (DiagramError, floer.NotNiceError, OSError) as exc:
        code, error = EXIT_INPUT, f"invalid input: {exc}"
    except (NicingError, floer.FloerError, InvariantFailure) as exc:
        stage = type(exc).__name__
        code, error = EXIT_INTERNAL, f"{stage}: {exc}"
    if args.json:
        out = report.to_json()
        if error:
            out["error"] = error
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        if report.digest:
            print(report.to_text())
        if error:
            print(f"error: {error}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
