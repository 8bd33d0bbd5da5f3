"""Survey existence degrees over random membership graphs.

Samples graphs at increasing edge densities and tabulates how often a
node's existence comes out yes / no / unknown, showing how quickly
disconnection and cycles push the engine into suspended judgement.
"""

import argparse
import random
from collections import Counter

from exigraph.kb import KnowledgeBase
from exigraph.logic3 import VALUES


def sample(rng: random.Random, n_nodes: int, n_edges: int) -> Counter:
    labels = [f"n{i}" for i in range(n_nodes)] + ["universe"]
    kb = KnowledgeBase()
    for _ in range(n_edges):
        elem, set_ = rng.choice(labels), rng.choice(labels)
        kb.assert_membership(kb.upsert_entity(elem), kb.upsert_entity(set_),
                             rng.choice(VALUES))
    counts = Counter()
    for i in range(n_nodes):
        counts[str(kb.existence_degree(kb.upsert_entity(f"n{i}")))] += 1
    return counts


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=6)
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print(f"{'edges':>5}  {'yes':>6}  {'no':>6}  {'unknown':>8}")
    for n_edges in range(0, 3 * args.nodes + 1, 3):
        total = Counter()
        for _ in range(args.trials):
            total += sample(rng, args.nodes, n_edges)
        n = sum(total.values())
        print(f"{n_edges:>5}  {total['yes'] / n:>6.1%}  "
              f"{total['no'] / n:>6.1%}  {total['unknown'] / n:>8.1%}")


if __name__ == "__main__":
    main()
