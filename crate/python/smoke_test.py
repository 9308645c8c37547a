"""Smoke test for the fbpaths extension module.

Build and install it first:

    pip install --no-build-isolation ./crates/python
    python python/smoke_test.py
"""

import math
import os
import tempfile

import fbpaths


def close(a, b, tol=1e-9):
    return a == b or abs(a - b) <= tol * max(abs(a), abs(b))


def main():
    g = fbpaths.Graph.generate(300, seed=7)
    assert (g.n, g.directed, g.edge_count) == (300, True, 300 * 299)
    costs = [c for _, c in g.out_edges(0)]
    assert costs == sorted(costs)

    tree, stats = fbpaths.fb_sssp(g, source=0)
    ref, _ = fbpaths.dijkstra(g, 0)
    spira_tree, spira_stats = fbpaths.spira(g, 0, pq="binheap")
    assert all(close(a, b) for a, b in zip(tree.dist, ref.dist))
    assert all(close(a, b) for a, b in zip(spira_tree.dist, ref.dist))
    assert stats["p_inserts"] + stats["q_inserts"] < 10 * g.n
    assert spira_stats["backward_scans"] == 0

    for mode in ("full", "forward", "fb"):
        assert fbpaths.verify(g, tree, mode)["accepted"], mode
    fb_report = fbpaths.verify(g, tree, "fb")
    full_report = fbpaths.verify(g, tree, "full")
    assert fb_report["edges_examined"] < full_report["edges_examined"]

    # Reattach one vertex to the source: its distance grows unless that edge
    # was already on a shortest path, so every verifier must reject.
    parent = tree.parent
    v = next(i for i, p in enumerate(parent) if p not in (None, 0))
    parent[v] = 0
    bad = fbpaths.Tree(0, parent)
    for mode in ("full", "forward", "fb"):
        assert not fbpaths.verify(g, bad, mode)["accepted"], mode

    audit = fbpaths.check_invariants(g, 0)
    counts = fbpaths.classify_pertinence(g, tree)
    assert counts["total"] == sum(counts[k] for k in ("out_spt", "in_spt", "out_non_spt", "in_non_spt"))
    assert audit["q_in_pertinent"] == counts["in_spt"] + counts["in_non_spt"]

    u = fbpaths.Graph.generate(50, dist="weibull", shape=0.5, seed=3, directed=False)
    assert all(close(u.edge_cost(i, j), u.edge_cost(j, i)) for i in range(50) for j in range(50) if i != j)

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "g.txt")
        u.save(path)
        loaded = fbpaths.Graph.load(path)
        assert loaded.n == 50 and not loaded.directed

    small = fbpaths.Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)])
    rows, _ = fbpaths.apsp(small)
    assert rows[0] == [0.0, 1.0, 2.0]
    assert math.isinf(rows[2][0])

    s = fbpaths.Sample(1000, seed=5)
    assert s.order[0] == 0 and s.dist == sorted(s.dist)
    rates = s.rates()
    assert close(rates["lambda_in"], rates["lambda_in_from_increments"], 1e-9)
    assert fbpaths.harmonic_expected_distance(2, 2) == 1.0
    assert 0.0 <= fbpaths.tail_fraction(100, 10.0, 20, seed=1) <= 1.0
    assert fbpaths.derive_seed(7, 0) != fbpaths.derive_seed(7, 1)

    for bad_call in (
        lambda: fbpaths.Graph.generate(10, dist="weibull"),
        lambda: fbpaths.fb_sssp(g, source=300),
        lambda: fbpaths.verify(g, tree, "sideways"),
        lambda: fbpaths.Tree(5, [None]),
    ):
        try:
            bad_call()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("fbpaths smoke test passed")


if __name__ == "__main__":
    main()
