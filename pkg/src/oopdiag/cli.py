"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from .detectors import INDICATORS, ThresholdConfig, load_thresholds
from .diagnosis import aggregate_cohort
from .knowledge import KBError, KnowledgeBase, default_kb, default_kb_bytes, load_kb
from .model import dumps_canonical, serialize_model
from .pipeline import SubmissionInput, SubmissionResult, analyze_input, model_from_bytes, read_sources
from .report import build_report, cohort_csv, cohort_doc, dumps_report, render_markdown

log = logging.getLogger("oopdiag")

FORMATS = ("structured", "markdown", "cohort-csv")
EXIT_OK, EXIT_USAGE, EXIT_UNREADABLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    inputs: list[SubmissionInput]
    out_dir: Path
    kb_bytes: bytes
    thresholds: ThresholdConfig = field(default_factory=ThresholdConfig)
    formats: tuple[str, ...] = FORMATS
    only: Optional[tuple[str, ...]] = None
    skip: tuple[str, ...] = ()
    emit_metrics: Optional[Path] = None
    deterministic: bool = False
    jobs: int = 1

    def __post_init__(self) -> None:
        if not self.inputs:
            raise UsageError("at least one input is required")
        if not self.formats:
            raise UsageError("at least one output format is required")


def _ids_arg(text: str, kb: KnowledgeBase) -> tuple[str, ...]:
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            out.append(kb.resolve_alias(part))
        except LookupError:
            raise UsageError(f"unknown indicator {part!r}") from None
    return tuple(out)


def _unique_ids(items: list[SubmissionInput]) -> None:
    seen: dict[str, int] = {}
    for it in items:
        base = it.submission_id
        if base in seen:
            seen[base] += 1
            it.submission_id = f"{base}~{seen[base]}"
        else:
            seen[base] = 1


def _model_id(path: Path) -> str:
    try:
        return str(json.loads(path.read_bytes()).get("submission_id", path.stem))
    except (OSError, ValueError, AttributeError):
        return path.stem


def _worker(args: tuple) -> SubmissionResult:
    item, kb_bytes, thresholds, only, skip = args
    return analyze_input(item, load_kb(kb_bytes), thresholds, only=only, skip=skip)


def run(cfg: RunConfig) -> int:
    """Analyze every input and write the requested artifacts; returns the exit status."""
    kb = load_kb(cfg.kb_bytes)
    tasks = [(it, cfg.kb_bytes, cfg.thresholds, cfg.only, cfg.skip) for it in cfg.inputs]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_worker, tasks, chunksize=max(1, len(tasks) // (cfg.jobs * 4))))
    else:
        results = [analyze_input(it, kb, cfg.thresholds, only=cfg.only, skip=cfg.skip) for it in cfg.inputs]

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    stamp = None if cfg.deterministic else datetime.now(timezone.utc).isoformat(timespec="seconds")
    for res in results:
        if not res.ok:
            log.error("%s: %s", res.source, res.error)
        sub = cfg.out_dir / res.submission_id
        sub.mkdir(parents=True, exist_ok=True)
        if "structured" in cfg.formats:
            (sub / "report.json").write_bytes(dumps_report(build_report(res, kb, cfg.thresholds, stamp)))
        if "markdown" in cfg.formats:
            if res.ok:
                text = render_markdown(res.diagnosis, res.issues, res.diagnostics)
            else:
                text = render_markdown(_empty(res, kb), error=res.error)
            (sub / "report.md").write_text(text, encoding="utf-8")
    good = [r for r in results if r.ok]
    if "cohort-csv" in cfg.formats and len(good) >= 2:
        diagnoses = [r.diagnosis for r in good]
        (cfg.out_dir / "cohort.csv").write_text(cohort_csv(diagnoses), encoding="utf-8")
        summary = aggregate_cohort(diagnoses)
        (cfg.out_dir / "cohort.json").write_bytes(dumps_canonical(cohort_doc(summary)))
        from .plotting import plot_cohort  # matplotlib import is slow; only pay for it here
        plot_cohort(summary, cfg.out_dir / "cohort.png")
    if cfg.emit_metrics is not None:
        doc = {r.submission_id: r.metrics.to_doc() for r in good}
        cfg.emit_metrics.parent.mkdir(parents=True, exist_ok=True)
        cfg.emit_metrics.write_bytes(dumps_canonical(doc))
    for r in good:
        top = [s for s in r.diagnosis.challenge_scores if s.score > 0][:3]
        log.info("%s: %d issue(s); top %s", r.submission_id, len(r.issues),
                 ", ".join(f"{s.challenge_id}={s.score:.2f}" for s in top) or "none")
    return EXIT_OK if good else EXIT_UNREADABLE


def _empty(res: SubmissionResult, kb: KnowledgeBase):
    from .diagnosis import diagnose
    return diagnose([], kb, submission_id=res.submission_id)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oopdiag", description="Detect OO code-quality indicators and diagnose learning challenges.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    common.add_argument("-q", "--quiet", action="store_true", help="only log errors")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="analyze one or more submissions")
    a.add_argument("paths", nargs="*", type=Path, help="submission directories (or single source files)")
    a.add_argument("--model-in", action="append", type=Path, default=[], metavar="F",
                   help="canonical model document to analyze instead of sources (repeatable)")
    a.add_argument("--kb", type=Path, help="knowledge-base document (default: shipped map)")
    a.add_argument("--thresholds", type=Path, help="JSON object overriding detector thresholds")
    a.add_argument("--out", type=Path, default=Path("oopdiag-out"), help="output directory")
    a.add_argument("--format", default=",".join(FORMATS), help="comma list of " + ", ".join(FORMATS))
    a.add_argument("--only", help="comma list of indicator ids or names to run")
    a.add_argument("--skip", help="comma list of indicator ids or names to skip")
    a.add_argument("--emit-metrics", type=Path, metavar="F", help="write the metrics tables as JSON")
    a.add_argument("--deterministic", action="store_true", help="omit timestamps so reruns are byte-identical")
    a.add_argument("--jobs", type=int, default=1, help="submissions analyzed in parallel")

    m = sub.add_parser("model", parents=[common], help="print the canonical model of one submission")
    m.add_argument("path", type=Path)
    m.add_argument("-o", "--output", type=Path, help="write here instead of stdout")

    sub.add_parser("indicators", parents=[common], help="list indicator ids and their categories")
    return p


def _setup_logging(verbose: int, quiet: bool) -> None:
    level = logging.ERROR if quiet else logging.DEBUG if verbose > 1 else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(message)s", stream=sys.stderr)


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    try:
        kb_bytes = args.kb.read_bytes() if args.kb else default_kb_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read knowledge base: {exc}") from exc
    kb = load_kb(kb_bytes)
    thresholds = load_thresholds(args.thresholds) if args.thresholds else ThresholdConfig()
    formats = tuple(f.strip() for f in args.format.split(",") if f.strip())
    bad = [f for f in formats if f not in FORMATS]
    if bad:
        raise UsageError(f"unknown format(s): {', '.join(bad)}")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    inputs = [SubmissionInput(p, p.stem if p.suffix else p.name or p.resolve().name) for p in args.paths]
    inputs += [SubmissionInput(p, _model_id(p), is_model=True) for p in args.model_in]
    _unique_ids(inputs)
    return RunConfig(
        inputs=inputs,
        out_dir=args.out,
        kb_bytes=kb_bytes,
        thresholds=thresholds,
        formats=formats,
        only=_ids_arg(args.only, kb) if args.only else None,
        skip=_ids_arg(args.skip, kb) if args.skip else (),
        emit_metrics=args.emit_metrics,
        deterministic=args.deterministic,
        jobs=args.jobs,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(args.verbose, args.quiet)
    try:
        if args.command == "indicators":
            kb = default_kb()
            for ind in INDICATORS:
                print(f"{ind}\t{', '.join(c.challenge_id + ' ' + c.label for c in kb.categories_for(ind))}")
            return EXIT_OK
        if args.command == "model":
            try:
                sources = read_sources(args.path)
            except OSError as exc:
                log.error("%s", exc)
                return EXIT_UNREADABLE
            model, diags = model_from_bytes(sources, args.path.stem if args.path.suffix else args.path.name)
            for d in diags:
                log.warning("%s:%d: %s", d.file, d.line, d.message)
            data = serialize_model(model)
            if args.output:
                args.output.write_bytes(data)
            else:
                sys.stdout.buffer.write(data)
            return EXIT_OK
        return run(_config_from_args(args))
    except (UsageError, KBError, ValueError) as exc:
        print(f"oopdiag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
