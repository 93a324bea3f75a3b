"""Command-line driver: counting experiments over (n, T) grids and the
verification suites.

Examples::

    dpairs --n=-1,5 --t 1000,10000 --format csv
    dpairs --verify identities,volumes
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .bqf import class_representatives
from .pairs import count_by_class
from .theory import predict_class, predict_total, regime_of
from .verify import SUITES, run_suite

log = logging.getLogger("dpairs")

FIELDS = ("n", "T", "class", "content", "regime", "empirical", "predicted", "ratio")


@dataclass
class ExperimentConfig:
    n_values: list[int]
    t_values: list[int]
    include_b_zero: bool = True
    workers: int = 1
    output_format: str = "csv"
    output_path: Path | None = None
    oracle: bool = False

    def __post_init__(self):
        if any(n == 0 for n in self.n_values):
            raise ValueError("n = 0 is not allowed")
        if any(t < 1 for t in self.t_values):
            raise ValueError("T values must be positive")
        self.t_values = sorted(self.t_values)
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")


@dataclass
class ReportRow:
    n: int
    T: int
    class_id: str
    content: int | None
    regime: str
    empirical: int
    predicted: float
    ratio: float

    def as_record(self) -> dict:
        d = asdict(self)
        d["class"] = d.pop("class_id")
        return {k: d[k] for k in FIELDS}


def _ratio(empirical: int, predicted: float) -> float:
    return empirical / predicted if predicted else math.nan


def run_count(config: ExperimentConfig) -> list[ReportRow]:
    rows: list[ReportRow] = []
    for n in config.n_values:
        inventory = class_representatives(n)
        regime = regime_of(n)
        total_pred = predict_total(n)
        for T in config.t_values:
            log.info("counting n=%d T=%d (%d classes)", n, T, len(inventory))
            table = count_by_class(
                n,
                T,
                inventory,
                include_b_zero=config.include_b_zero,
                workers=config.workers,
                oracle=config.oracle,
            )
            labels = sorted(table.per_class, key=lambda lab: (lab.content, tuple(lab.canonical)))
            for lab in labels:
                pred = predict_class(n, lab.content).value_at(T)
                emp = table.per_class[lab]
                rows.append(ReportRow(n, T, str(lab), lab.content, regime, emp, pred, _ratio(emp, pred)))
            pred = total_pred.value_at(T)
            rows.append(ReportRow(n, T, "TOTAL", None, regime, table.total, pred, _ratio(table.total, pred)))
    return rows


def rows_to_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELDS)
    for r in rows:
        writer.writerow(
            [r.n, r.T, r.class_id, "" if r.content is None else r.content, r.regime,
             r.empirical, repr(r.predicted), repr(r.ratio)]
        )
    return buf.getvalue()


def rows_from_csv(text: str) -> list[ReportRow]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != FIELDS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [
        ReportRow(
            int(rec["n"]),
            int(rec["T"]),
            rec["class"],
            int(rec["content"]) if rec["content"] else None,
            rec["regime"],
            int(rec["empirical"]),
            float(rec["predicted"]),
            float(rec["ratio"]),
        )
        for rec in reader
    ]


def rows_to_json(rows: list[ReportRow]) -> str:
    return json.dumps([r.as_record() for r in rows], indent=2) + "\n"


def rows_from_json(text: str) -> list[ReportRow]:
    out = []
    for rec in json.loads(text):
        rec = dict(rec)
        rec["class_id"] = rec.pop("class")
        out.append(ReportRow(**rec))
    return out


def run_verify(suites: list[str], stream=sys.stdout) -> bool:
    ok = True
    for suite in suites:
        for result in run_suite(suite):
            print(f"[{suite}] {result.line()}", file=stream, flush=True)
            ok &= result.passed
    return ok


# -- argument handling --------------------------------------------------------------


def int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def read_config_file(path: Path) -> dict[str, str]:
    """key = value lines; '#' starts a comment."""
    out = {}
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _truthy(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dpairs",
        description="Count D(n)-pairs by quadratic-form class and compare with the asymptotic predictions.",
    )
    p.add_argument("--n", type=int_list, help="comma-separated nonzero n values (use --n=-1,5 for negatives)")
    p.add_argument("--t", type=int_list, help="comma-separated bounds T")
    p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    p.add_argument("--out", type=Path, help="write data here instead of standard output")
    p.add_argument("--workers", type=int, help="worker processes for counting (default 1)")
    p.add_argument("--no-b-zero", action="store_true", default=None, help="exclude pairs with ac + n = 0")
    p.add_argument("--verify", help=f"run verification suites: {','.join(SUITES)}")
    p.add_argument("--oracle", action="store_true", default=None, help="use the brute-force enumerator")
    p.add_argument("--config", type=Path, help="key = value file; command-line flags take precedence")
    p.add_argument("-v", "--verbose", action="store_true", help="progress messages on standard error")
    return p


def _merge_config(args: argparse.Namespace) -> dict:
    file_values = read_config_file(args.config) if args.config else {}
    merged = {
        "n": int_list(file_values["n"]) if "n" in file_values else None,
        "t": int_list(file_values["t"]) if "t" in file_values else None,
        "format": file_values.get("format"),
        "out": Path(file_values["out"]) if "out" in file_values else None,
        "workers": int(file_values["workers"]) if "workers" in file_values else None,
        "no_b_zero": _truthy(file_values["no_b_zero"]) if "no_b_zero" in file_values else None,
        "verify": file_values.get("verify"),
        "oracle": _truthy(file_values["oracle"]) if "oracle" in file_values else None,
    }
    unknown = set(file_values) - set(merged)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in merged:
        value = getattr(args, key)
        if value is not None:
            merged[key] = value
    return merged


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(message)s",
        stream=sys.stderr,
    )
    try:
        opts = _merge_config(args)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))

    if opts["verify"]:
        suites = [s.strip() for s in opts["verify"].split(",") if s.strip()]
        bad = [s for s in suites if s not in SUITES]
        if bad:
            parser.error(f"unknown suite(s) {', '.join(bad)}; choose from {', '.join(SUITES)}")
        return 0 if run_verify(suites) else 1

    if not opts["n"] or not opts["t"]:
        parser.error("--n and --t are required unless --verify is given")
    try:
        config = ExperimentConfig(
            n_values=opts["n"],
            t_values=opts["t"],
            include_b_zero=not opts["no_b_zero"],
            workers=opts["workers"] or 1,
            output_format=opts["format"] or "csv",
            output_path=opts["out"],
            oracle=bool(opts["oracle"]),
        )
    except ValueError as exc:
        parser.error(str(exc))

    rows = run_count(config)
    text = rows_to_csv(rows) if config.output_format == "csv" else rows_to_json(rows)
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        try:
            config.output_path.write_text(text)
        except OSError as exc:
            print(f"dpairs: cannot write {config.output_path}: {exc.strerror}", file=sys.stderr)
            return 2
        log.info("wrote %d rows to %s", len(rows), config.output_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
