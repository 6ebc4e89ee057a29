"""Command-line pipeline driver.

Commands: summarize (write per-system per-topic summaries), evaluate
(ROUGE table against the corpus references), stats (corpus and
cluster/compression statistics), compress (dump per-cluster compressions)
and rank (dump relevance scores). Exit codes: 0 success, 1 usage fault,
2 data fault. All outputs are deterministic under a fixed seed and are
written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import fields
from pathlib import Path

from .config import PipelineConfig, config_from, parse_config_file
from .corpus import CorpusError, corpus_stats, load_topics
from .msc import compress_clusters
from .rank import build_matrices, corank, pagerank, simfusion
from .rouge import evaluate_systems
from .similarity import cluster_similar
from .summarizer import SYSTEMS, run_system
from .translation import TranslationError, make_provider


class _Parser(argparse.ArgumentParser):
    # usage faults exit 1 (argparse default is 2, reserved here for data faults)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value config file")
    for f in fields(PipelineConfig):
        flag = "--" + f.name.replace("_", "-")
        if f.type == "bool":
            parser.add_argument(flag, default=None,
                                action=argparse.BooleanOptionalAction)
        else:
            parser.add_argument(flag, default=None)


def _build_config(args) -> PipelineConfig:
    config = PipelineConfig()
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise CorpusError(f"config file not found: {path}")
        config = config_from(parse_config_file(path), config)
    overrides = {
        f.name: getattr(args, f.name)
        for f in fields(PipelineConfig)
        if getattr(args, f.name, None) is not None
    }
    return config_from(overrides, config)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _load(args, config: PipelineConfig):
    provider = make_provider(config.provider, config.provider_url or None)
    return load_topics(args.corpus, config.source_lang, config.target_lang, provider)


# ---------------------------------------------------------------------------
# summarize
# ---------------------------------------------------------------------------

def cmd_summarize(args) -> int:
    config = _build_config(args)
    systems = args.systems.split(",") if args.systems else list(SYSTEMS)
    for system in systems:
        if system not in SYSTEMS:
            raise ValueError(
                f"unknown system {system!r}; valid systems: {', '.join(SYSTEMS)}"
            )
    topics = _load(args, config)
    out_dir = Path(args.out)

    def summarize_topic(topic):
        return [(system, topic, run_system(topic, system, config)) for system in systems]

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            produced = [item for batch in pool.map(summarize_topic, topics) for item in batch]
    else:
        produced = [item for topic in topics for item in summarize_topic(topic)]

    for system, topic, summary in produced:
        _atomic_write(out_dir / system / f"{topic.id}.txt", summary.text + "\n")
        meta_lines = [
            json.dumps({"system": system, "topic": topic.id, **entry}, sort_keys=True)
            for entry in summary.metadata()
        ]
        _atomic_write(
            out_dir / system / f"{topic.id}.meta.jsonl", "\n".join(meta_lines) + "\n"
        )
    print(f"wrote {len(produced)} summaries under {out_dir}")
    return 0


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------

def cmd_evaluate(args) -> int:
    config = _build_config(args)
    summaries_dir = Path(args.summaries)
    if not summaries_dir.is_dir():
        raise CorpusError(f"summaries directory not found: {summaries_dir}")
    topics = _load(args, config)

    summaries = {}
    for system_dir in sorted(p for p in summaries_dir.iterdir() if p.is_dir()):
        for summary_file in sorted(system_dir.glob("*.txt")):
            topic_id = summary_file.name[: -len(".txt")]
            summaries[(system_dir.name, topic_id)] = summary_file.read_text(
                encoding="utf-8"
            )
    if not summaries:
        print("warning: no summaries found, empty table", file=sys.stderr)
    report = evaluate_systems(summaries, topics)
    text = report.to_text()
    print(text, end="")
    _atomic_write(summaries_dir / "rouge_report.txt", text)
    _atomic_write(summaries_dir / "rouge_report.csv", report.to_csv())
    return 0


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------

def _format_corpus_stats(stats) -> list[str]:
    header = (
        f"{'side':<8}{'words':>8}{'vocabulary':>12}{'sentences':>11}"
        f"{'mean_len':>10}{'chunks':>8}{'mean_chunk_len':>16}"
    )
    lines = [header]
    for name, side, chunked in (("source", stats.source, False),
                                ("target", stats.target, True)):
        chunks = str(side.n_chunks) if chunked else "--"
        chunk_len = f"{side.mean_chunk_length:.2f}" if chunked else "--"
        lines.append(
            f"{name:<8}{side.n_words:>8}{side.n_vocabulary:>12}{side.n_sentences:>11}"
            f"{side.mean_sentence_length:>10.2f}{chunks:>8}{chunk_len:>16}"
        )
    return lines


def cmd_stats(args) -> int:
    config = _build_config(args)
    topics = _load(args, config)
    lines = _format_corpus_stats(corpus_stats(topics))

    if args.cluster_stats:
        n_clusters = 0
        n_members = 0
        member_words = 0
        compression_words = 0
        n_compressions = 0
        rate_sum = 0.0
        compressions_in_summaries = 0
        for topic in topics:
            clusters = cluster_similar(topic.sentences(), config.theta_cluster)
            compressions = compress_clusters(
                clusters,
                k_best=config.k_best,
                min_words=config.min_words,
                require_verb=config.require_verb,
                use_chunks=config.chunking,
                lda_topics=config.lda_topics,
                lda_top=config.lda_top,
                lda_iters=config.lda_iters,
                master_seed=config.seed,
            )
            n_clusters += len(clusters)
            for cluster in clusters:
                n_members += len(cluster.members)
                member_words += sum(s.target_word_count for s in cluster.members)
            for cluster in clusters:
                comp = compressions.get(cluster.cluster_id)
                if comp is None:
                    continue
                n_compressions += 1
                compression_words += comp.word_count
                mean_member = (
                    sum(s.target_word_count for s in cluster.members)
                    / len(cluster.members)
                )
                if mean_member > 0:
                    rate_sum += comp.word_count / mean_member
            summary = run_system(topic, "our-approach", config)
            compressions_in_summaries += sum(
                1 for u in summary.units if u.kind == "compression"
            )

        n_topics = len(topics)
        lines.append("")
        lines.append(f"{'clusters':<34}{n_clusters}")
        lines.append(
            f"{'mean_cluster_size':<34}"
            f"{(n_members / n_clusters) if n_clusters else 0:.2f}"
        )
        lines.append(
            f"{'mean_cluster_sentence_length':<34}"
            f"{(member_words / n_members) if n_members else 0:.2f}"
        )
        lines.append(
            f"{'mean_compression_length':<34}"
            f"{(compression_words / n_compressions) if n_compressions else 0:.2f}"
        )
        lines.append(
            f"{'mean_compressions_per_summary':<34}"
            f"{(compressions_in_summaries / n_topics) if n_topics else 0:.2f}"
        )
        # rate = compression words / mean member sentence words (one reading
        # of "compression rate"; stated here so the number is interpretable)
        lines.append(
            f"{'mean_compression_rate':<34}"
            f"{(100.0 * rate_sum / n_compressions) if n_compressions else 0:.1f}%"
        )

    text = "\n".join(lines) + "\n"
    print(text, end="")
    if args.out:
        _atomic_write(Path(args.out), text)
    return 0


# ---------------------------------------------------------------------------
# compress / rank dumps
# ---------------------------------------------------------------------------

def cmd_compress(args) -> int:
    config = _build_config(args)
    topics = _load(args, config)
    lines = []
    for topic in topics:
        clusters = cluster_similar(topic.sentences(), config.theta_cluster)
        compressions = compress_clusters(
            clusters,
            k_best=config.k_best,
            min_words=config.min_words,
            require_verb=config.require_verb,
            use_chunks=config.chunking,
            lda_topics=config.lda_topics,
            lda_top=config.lda_top,
            lda_iters=config.lda_iters,
            master_seed=config.seed,
        )
        for cluster in clusters:
            comp = compressions.get(cluster.cluster_id)
            record = {
                "cluster": cluster.cluster_id,
                "size": len(cluster.members),
                "members": ["/".join(map(str, sid)) for sid in cluster.member_ids],
            }
            if comp is not None:
                record.update(
                    words=comp.word_count,
                    objective=comp.objective,
                    normalized=comp.normalized,
                    text=comp.text,
                )
            lines.append(json.dumps(record, sort_keys=True))
    text = "\n".join(lines) + ("\n" if lines else "")
    print(text, end="")
    if args.out:
        _atomic_write(Path(args.out), text)
    return 0


def cmd_rank(args) -> int:
    config = _build_config(args)
    if args.system not in SYSTEMS:
        raise ValueError(
            f"unknown system {args.system!r}; valid systems: {', '.join(SYSTEMS)}"
        )
    topics = _load(args, config)
    lines = []
    for topic in topics:
        sentences = topic.sentences()
        matrices = build_matrices(sentences)
        if args.system == "early":
            u = v = pagerank(matrices.target_norm)
        elif args.system == "late":
            u = v = pagerank(matrices.source_norm)
        elif args.system == "simfusion":
            u = v = simfusion(matrices)
        else:
            scores = corank(matrices, alpha=config.alpha, beta=config.beta)
            u, v = scores.u, scores.v
        for i, sentence in enumerate(sentences):
            lines.append(
                json.dumps(
                    {
                        "topic": topic.id,
                        "sentence": "/".join(map(str, sentence.sid)),
                        "u": float(u[i]),
                        "v": float(v[i]),
                    },
                    sort_keys=True,
                )
            )
    text = "\n".join(lines) + ("\n" if lines else "")
    print(text, end="")
    if args.out:
        _atomic_write(Path(args.out), text)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clsum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="write per-system summaries")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--systems", help="comma-separated subset of: " + ",".join(SYSTEMS))
    p.add_argument("--jobs", type=int, default=1)
    _add_config_flags(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("evaluate", help="ROUGE table for written summaries")
    p.add_argument("--summaries", required=True)
    p.add_argument("--corpus", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("stats", help="corpus and cluster statistics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out")
    p.add_argument("--cluster-stats", default=True,
                   action=argparse.BooleanOptionalAction)
    _add_config_flags(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("compress", help="dump per-cluster compressions")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out")
    _add_config_flags(p)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("rank", help="dump relevance scores")
    p.add_argument("--corpus", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--out")
    _add_config_flags(p)
    p.set_defaults(func=cmd_rank)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CorpusError, TranslationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
