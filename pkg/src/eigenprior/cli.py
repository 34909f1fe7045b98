"""Command-line pipeline: vocab -> stats -> embeddings -> evaluation.

Every command is a pure function of its named inputs plus the seed.
Intermediate artifacts are persisted so the expensive corpus scan is
amortized across alpha and dimension sweeps.

Exit codes: 0 success, 1 usage error, 2 data error, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import hashlib
import sys

from . import accumulate, cca_core, corpus, evaluate, prior_graph, verify
from .errors import ContractViolation, DataError


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_config(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DataError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _file_sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def _load_corpus_tokens(paths: list[str]) -> list[list[str]]:
    docs = []
    for path in paths:
        with open(path, "rb") as fh:
            docs.append(corpus.tokenize_bytes(fh.read()))
    return docs


def _load_graph(args, vocab):
    if not getattr(args, "graph", None):
        return prior_graph.empty_graph(len(vocab))
    lemma_map = None
    if getattr(args, "lemma_map", None):
        lemma_map = prior_graph.load_lemma_map(args.lemma_map)
    return prior_graph.load_edges(args.graph, vocab, lemma_map)


def cmd_build_vocab(args) -> int:
    docs = _load_corpus_tokens(args.corpus)
    tokens = [t for doc in docs for t in doc]
    vocab = corpus.build_vocab(tokens, args.max_size, oov=args.oov)
    corpus.save_vocab(vocab, args.out)
    print(f"vocab_size={len(vocab)} out={args.out}")
    return 0


def cmd_accumulate(args) -> int:
    vocab = corpus.load_vocab(args.vocab)
    graph = _load_graph(args, vocab)
    stats = accumulate.CooccurrenceStats(len(vocab), args.k)
    # each corpus file is chunked independently, so per-file runs merged
    # with `merge` equal one concatenated run
    for doc in _load_corpus_tokens(args.corpus):
        accumulate.accumulate_corpus(
            vocab.map_tokens(doc), len(vocab), args.k, args.locality,
            args.chunk_len, graph, stats=stats)
    accumulate.save_stats(stats, args.out)
    print(f"n_examples={stats.n_examples} nnz={len(stats.entries)} out={args.out}")
    return 0


def cmd_merge(args) -> int:
    merged = accumulate.load_stats(args.stats[0])
    for path in args.stats[1:]:
        merged = accumulate.merge(merged, accumulate.load_stats(path))
    accumulate.save_stats(merged, args.out)
    print(f"n_examples={merged.n_examples} nnz={len(merged.entries)} out={args.out}")
    return 0


def cmd_train(args) -> int:
    stats = accumulate.load_stats(args.stats)
    vocab = corpus.load_vocab(args.vocab) if args.vocab else None
    words = vocab.words if vocab else None
    if words is not None and len(words) != stats.n_vocab:
        raise DataError("vocabulary size does not match stats header")
    emb = cca_core.embed(
        stats, args.alpha, args.dim, sqrt_transform=not args.no_sqrt,
        oversample=args.oversample, power_iters=args.power_iters,
        seed=args.seed, d1_projection=not args.no_d1_projection,
        words=words,
        extra_meta={"stats_sha256": _file_sha256(args.stats), "alpha": args.alpha})
    meta_path = args.meta or (args.out + ".meta.json")
    cca_core.save_embeddings(emb, args.out, meta_path)
    print(f"words={len(emb.words)} dim={emb.dim} out={args.out}")
    return 0


def cmd_eval_sim(args) -> int:
    emb = cca_core.load_embeddings(args.embeddings)
    dataset = evaluate.load_similarity_dataset(args.dataset)
    rho, covered, total = evaluate.eval_similarity(emb, dataset)
    print(f"rho={rho:.6f} covered={covered} total={total}")
    return 0


def cmd_eval_analogy(args) -> int:
    emb = cca_core.load_embeddings(args.embeddings)
    dataset = evaluate.load_analogy_dataset(args.dataset)
    accuracy, covered, total = evaluate.eval_analogy(emb, dataset)
    print(f"accuracy={accuracy:.6f} covered={covered} total={total}")
    return 0


def cmd_graph_embed(args) -> int:
    vocab = corpus.load_vocab(args.vocab)
    lemma_map = prior_graph.load_lemma_map(args.lemma_map) if args.lemma_map else None
    graph = prior_graph.load_edges(args.graph, vocab, lemma_map)
    emb = evaluate.graph_only_embed(graph, vocab.words, args.dim,
                                    oversample=args.oversample,
                                    power_iters=args.power_iters,
                                    seed=args.seed)
    meta_path = args.meta or (args.out + ".meta.json")
    cca_core.save_embeddings(emb, args.out, meta_path)
    print(f"words={len(emb.words)} dim={emb.dim} edges={graph.edge_count} out={args.out}")
    return 0


def cmd_verify(args) -> int:
    print(f"seed={args.seed}")
    results = verify.run_all(seed=args.seed)
    failed = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"[{status}] {result.name}: {result.detail}")
        failed += not result.passed
    if failed:
        print(f"{failed} check(s) failed")
        return 3
    print("all checks passed")
    return 0


def _add_svd_flags(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oversample", type=int, default=10)
    p.add_argument("--power-iters", type=int, default=3)


def build_parser() -> _Parser:
    parser = _Parser(prog="eigenprior")
    parser.add_argument("--config", help="key=value defaults file (flags win)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-vocab", help="build a frequency-capped vocabulary")
    p.add_argument("--corpus", nargs="+", required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--oov", choices=["unk", "drop"], default="unk")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_vocab)

    p = sub.add_parser("accumulate", help="scan a corpus into a stats file")
    p.add_argument("--corpus", nargs="+", required=True)
    p.add_argument("--vocab", required=True)
    p.add_argument("--graph")
    p.add_argument("--lemma-map")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--locality", type=int, default=12)
    p.add_argument("--chunk-len", type=int, default=13)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_accumulate)

    p = sub.add_parser("merge", help="merge stats files")
    p.add_argument("--stats", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("train", help="stats -> embeddings")
    p.add_argument("--stats", required=True)
    p.add_argument("--vocab")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--no-sqrt", action="store_true")
    p.add_argument("--no-d1-projection", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--meta")
    _add_svd_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval-sim", help="word-similarity Spearman evaluation")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--dataset", required=True)
    p.set_defaults(func=cmd_eval_sim)

    p = sub.add_parser("eval-analogy", help="vector-offset analogy accuracy")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--dataset", required=True)
    p.set_defaults(func=cmd_eval_analogy)

    p = sub.add_parser("graph-embed", help="graph-only SVD baseline embeddings")
    p.add_argument("--vocab", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--lemma-map")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--meta")
    _add_svd_flags(p)
    p.set_defaults(func=cmd_graph_embed)

    p = sub.add_parser("verify", help="run the numerical identity battery")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    # first pass only to locate --config; its values become defaults
    if "--config" in argv:
        idx = argv.index("--config")
        try:
            config_path = argv[idx + 1]
        except IndexError:
            parser.error("--config requires a path")
        try:
            defaults = _read_config(config_path)
        except (OSError, DataError) as exc:
            print(f"eigenprior: {exc}", file=sys.stderr)
            return 2
        for subparser in parser._subparsers._group_actions[0].choices.values():
            for action in subparser._actions:
                if action.dest in defaults:
                    action.required = False
            known = {a.dest for a in subparser._actions}
            subparser.set_defaults(
                **{k: v for k, v in defaults.items() if k in known})
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse usage errors / --help
        return int(exc.code or 0)
    except (DataError, OSError) as exc:
        print(f"eigenprior: {exc}", file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print(f"eigenprior: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
