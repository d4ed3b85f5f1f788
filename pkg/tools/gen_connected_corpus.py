"""Write every connected simple graph on 2..8 vertices (up to isomorphism)
to tests/data/connected_le8.g6, one graph6 string per line.

Graphs on <= 7 vertices come from the networkx atlas. An 8-vertex connected
graph always has a vertex whose removal leaves it connected (a leaf of a
spanning tree), so extending every connected 7-vertex graph by a vertex with
a nonempty neighbourhood reaches all of them; duplicates are removed with a
WL-hash bucket plus an isomorphism test.

Usage: python3 tools/gen_connected_corpus.py [output]
"""
import itertools
import os
import sys

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

EXPECTED = {2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def main(out):
    small = [g for g in graph_atlas_g() if g.number_of_nodes() >= 2 and nx.is_connected(g)]
    seven = [g for g in small if g.number_of_nodes() == 7]
    buckets = {}
    eight = []
    for base in seven:
        for k in range(1, 8):
            for nbrs in itertools.combinations(range(7), k):
                h = base.copy()
                h.add_edges_from((7, v) for v in nbrs)
                key = (h.number_of_edges(), nx.weisfeiler_lehman_graph_hash(h, iterations=3))
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(h, o) for o in bucket):
                    continue
                bucket.append(h)
                eight.append(h)
    graphs = small + eight
    counts = {}
    for g in graphs:
        counts[g.number_of_nodes()] = counts.get(g.number_of_nodes(), 0) + 1
    if counts != EXPECTED:
        raise SystemExit(f"unexpected counts {counts}")
    with open(out, "w") as fh:
        for g in graphs:
            fh.write(nx.to_graph6_bytes(g, header=False).decode().strip() + "\n")
    print(f"wrote {len(graphs)} graphs to {out}: {counts}")


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "..", "tests", "data", "connected_le8.g6"))
