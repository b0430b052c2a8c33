#!/usr/bin/env python3
"""Search latency benchmark: compiled kernel vs numpy fallback.

Builds one synthetic corpus, runs the same query set through both
scatter-max implementations and reports per-query latency percentiles.

    python benchmarks/bench_search.py --docs 50000 --classes 2000 --edges 5000
"""

from __future__ import annotations

import argparse
import statistics
import time

import facetforge.engine as engine_module
from facetforge import _scoring_py
from facetforge.backend import BACKEND, scatter_max
from facetforge.query import parse_query
from facetforge.synthetic import build_synthetic_engine, random_queries


def measure(engine, queries, kernel, label):
    engine_module.scatter_max = kernel
    engine.search(queries[0], top_k=20)  # warm the posting index
    latencies = []
    for query in queries:
        started = time.perf_counter()
        engine.search(query, top_k=20)
        latencies.append(time.perf_counter() - started)
    latencies.sort()
    median = statistics.median(latencies)
    p99 = latencies[int(len(latencies) * 0.99) - 1]
    print(
        f"{label:<10} median {median * 1000:8.2f} ms   "
        f"p99 {p99 * 1000:8.2f} ms   max {latencies[-1] * 1000:8.2f} ms"
    )
    return median


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docs", type=int, default=50_000)
    parser.add_argument("--classes", type=int, default=2_000)
    parser.add_argument("--edges", type=int, default=5_000)
    parser.add_argument("--queries", type=int, default=100)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    print(
        f"building corpus: {args.docs} docs, {args.classes} classes, "
        f"{args.edges} edges (seed {args.seed})"
    )
    started = time.perf_counter()
    engine = build_synthetic_engine(
        num_docs=args.docs,
        num_classes=args.classes,
        num_edges=args.edges,
        seed=args.seed,
    )
    queries = [
        parse_query(q)
        for q in random_queries(args.queries, num_classes=args.classes, seed=args.seed)
    ]
    print(f"built in {time.perf_counter() - started:.1f}s; {args.queries} queries\n")

    original = engine_module.scatter_max
    try:
        results = {}
        if BACKEND == "compiled":
            results["compiled"] = measure(engine, queries, scatter_max, "compiled")
        else:
            print("compiled extension not built; benchmarking the fallback only")
        results["numpy"] = measure(engine, queries, _scoring_py.scatter_max, "numpy")
        if "compiled" in results:
            print(f"\nspeedup (median): {results['numpy'] / results['compiled']:.2f}x")
    finally:
        engine_module.scatter_max = original


if __name__ == "__main__":
    main()
