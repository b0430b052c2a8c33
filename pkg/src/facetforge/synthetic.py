"""Synthetic corpora for scale tests and the kernel benchmark."""

from __future__ import annotations

import random

from .corpus import Document
from .engine import Engine
from .facets import FACET_ORDER
from .pictures import Picture
from .registry import ClassEntry


def build_synthetic_engine(
    num_docs: int = 50_000,
    num_classes: int = 2_000,
    num_edges: int = 5_000,
    assignments_per_doc: int = 5,
    seed: int = 7,
) -> Engine:
    """A corpus with the given shape: random pictures totalling roughly
    ``num_edges`` directed edges and ``assignments_per_doc`` graded
    classes per document, one per facet by default."""
    rng = random.Random(seed)
    engine = Engine()

    class_ids = [f"cls-{i:05d}" for i in range(num_classes)]
    for class_id in class_ids:
        engine.registry.add_class(
            ClassEntry(
                id=class_id,
                labels={"en": f"class {class_id[4:]}"},
                definitions={"en": f"synthetic class {class_id}"},
            )
        )

    # Each neighbor entry yields two directed edges.
    pair_budget = num_edges // 2
    picture_count = 0
    while pair_budget > 0:
        focal = rng.choice(class_ids)
        fanout = min(pair_budget, rng.randint(2, 8))
        others = [c for c in rng.sample(class_ids, fanout + 1) if c != focal][:fanout]
        neighbors = sorted(
            ((other, round(rng.uniform(0.2, 0.95), 6)) for other in others),
            key=lambda p: -p[1],
        )
        if not neighbors:
            continue
        picture_count += 1
        engine.pictures.upsert_picture(
            Picture(
                picture_id=f"pic-{picture_count:05d}",
                expert_id=f"e{rng.randint(0, 9)}",
                facet=rng.choice(FACET_ORDER),
                focal=focal,
                neighbors=tuple(neighbors),
            )
        )
        pair_budget -= len(neighbors)

    for d in range(num_docs):
        doc_id = f"doc-{d:06d}"
        engine.corpus.add(Document(doc_id=doc_id, title=f"synthetic document {d}"))

    store = engine.classifications
    for d in range(num_docs):
        doc_id = f"doc-{d:06d}"
        for facet in rng.sample(FACET_ORDER, min(assignments_per_doc, len(FACET_ORDER))):
            store.assign(
                doc_id,
                facet,
                rng.choice(class_ids),
                round(rng.uniform(0.2, 1.0), 6),
                f"bulk-{rng.randint(0, 3)}",
            )
    return engine


def random_queries(
    num_queries: int, num_classes: int = 2_000, seed: int = 99
) -> list[dict]:
    rng = random.Random(seed)
    class_ids = [f"cls-{i:05d}" for i in range(num_classes)]
    queries = []
    for _ in range(num_queries):
        selections = {}
        for facet in rng.sample(FACET_ORDER, rng.randint(3, 5)):
            chosen = rng.sample(class_ids, rng.randint(1, 2))
            selections[facet.value] = [
                [c, round(rng.uniform(0.5, 1.0), 3)] for c in chosen
            ]
        queries.append(
            {
                "mode": "prior_art",
                "h": 3,
                "theta": 0.05,
                "selections": selections,
            }
        )
    return queries
