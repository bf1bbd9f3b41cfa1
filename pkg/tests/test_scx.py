import random
from collections import Counter, deque

import pytest

from arithcx.projmat import cayley_ball, lsv_generators, symmetrize
from arithcx.scx import (
    Complex,
    InteriorMark,
    chamber_count,
    clique_complex,
    color_chambers,
    deserialize,
    fano_incidence_graph,
    induced_subcomplex,
    link,
    purity_report,
    serialize,
    star_vertices,
)


@pytest.fixture(scope="module")
def ball2():
    return cayley_ball(symmetrize(lsv_generators()), 2)


@pytest.fixture(scope="module")
def ballcx(ball2):
    verts, edges = ball2.graph()
    return clique_complex(list(verts), edges, max_dim=3)


def graph_girth(vertices, adj):
    # shortest cycle via BFS from every vertex
    best = None
    for s in vertices:
        dist = {s: 0}
        parent = {s: None}
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def is_bipartite(vertices, adj):
    color = {}
    for s in vertices:
        if s in color:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    q.append(w)
                elif color[w] == color[u]:
                    return False
    return True


# ----------------------------------------------------------------------
# basic construction


def test_downward_closure_validated():
    Complex([1, 2, 3], [(1, 2), (1, 3), (2, 3), (1, 2, 3)])
    with pytest.raises(ValueError):
        Complex([1, 2, 3], [(1, 2, 3)])  # faces missing
    with pytest.raises(ValueError):
        Complex([1, 2], [(1, 2), (1, 2, 3)])  # unknown vertex
    with pytest.raises(ValueError):
        Complex([1, 1], [])  # repeated vertex


def test_from_maximal_closes_downward():
    c = Complex.from_maximal(range(4), [(0, 1, 2, 3)])
    assert c.dimension == 3
    assert c.simplex_count(2) == 4
    assert c.simplex_count(1) == 6
    assert c.has_simplex((2, 0))
    assert not c.has_simplex((4,)) if 4 not in c.vertices else True


def test_clique_complex_small_graphs():
    tri = clique_complex([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    assert tri.dimension == 2
    assert tri.simplices(2) == ((0, 1, 2),)
    square = clique_complex("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    assert square.dimension == 1
    k4 = clique_complex(range(4), [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert k4.dimension == 3
    assert k4.simplices(3) == ((0, 1, 2, 3),)
    k4_trunc = clique_complex(
        range(4), [(i, j) for i in range(4) for j in range(i + 1, 4)], max_dim=2
    )
    assert k4_trunc.dimension == 2
    assert k4_trunc.simplex_count(2) == 4


def test_clique_complex_rejects_non_simple():
    with pytest.raises(ValueError):
        clique_complex([0, 1], [(0, 0)])
    with pytest.raises(ValueError):
        clique_complex([0, 1], [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        clique_complex([0, 1], [(0, 2)])


def test_link_of_clique_complex_matches_neighbor_subgraph():
    # link(v) of a flag complex is the flag complex of the neighbor-
    # induced subgraph; checked on seeded random graphs
    rng = random.Random(1234)
    for trial in range(25):
        n = rng.randrange(4, 13)
        verts = list(range(n))
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.45
        ]
        cx = clique_complex(verts, edges, max_dim=4)
        v = rng.randrange(n)
        lk = link(cx, v)
        nbrs = set(cx.neighbors(v))
        sub_edges = [e for e in cx.simplices(1) if set(e) <= nbrs]
        if nbrs:
            expect = clique_complex(sorted(nbrs), sub_edges, max_dim=4)
            assert set(lk.vertices) == nbrs
            for d in range(1, 5):
                assert set(lk.simplices(d)) == set(expect.simplices(d))
        else:
            assert lk.vertices == ()


def test_link_unknown_vertex(ballcx):
    with pytest.raises(ValueError):
        link(ballcx, 10**9)


def test_chamber_count_examples():
    tri = clique_complex([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    assert chamber_count(tri, (0, 1)) == 1
    assert chamber_count(tri, (0, 1, 2)) == 1
    with pytest.raises(ValueError):
        chamber_count(tri, (0, 3))
    with pytest.raises(ValueError):
        chamber_count(tri, (0, 0))


def test_purity_tetrahedron_boundary():
    c = Complex.from_maximal(range(4), [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    rep = purity_report(c, InteriorMark.all_interior(c))
    assert rep.pure
    assert rep.dimension == 2
    assert rep.interior_maximal_by_dim == {2: 4}
    # every edge lies in exactly 2 of the 4 faces
    assert rep.panel_chambers_min == rep.panel_chambers_max == 2


def test_purity_detects_isolated_vertex():
    c = Complex([0, 1, 2, 9], [(0, 1), (1, 2), (0, 2), (0, 1, 2)])
    rep = purity_report(c, InteriorMark.all_interior(c))
    assert not rep.pure
    assert rep.interior_maximal_by_dim == {0: 1, 2: 1}


def test_interior_marks_from_distances():
    marks = InteriorMark.from_distances({0: 0, 1: 1, 2: 2}, 2)
    assert marks.vertex_interior(0) and marks.vertex_interior(1)
    assert not marks.vertex_interior(2)
    assert marks.simplex_interior((0, 1))
    assert not marks.simplex_interior((1, 2))
    assert not marks.vertex_interior(77)  # unknown defaults to boundary


# ----------------------------------------------------------------------
# chamber colors


def test_color_chambers_total_assignment():
    tri = clique_complex([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    colored = color_chambers(tri, {(0, 1, 2): "red"})
    assert colored.chamber_colors == {(0, 1, 2): "red"}
    with pytest.raises(ValueError):
        color_chambers(tri, {})
    with pytest.raises(ValueError):
        color_chambers(tri, {(0, 1): "red"})
    with pytest.raises(ValueError):
        color_chambers(tri, {(0, 1, 2): "red", (0, 1): "blue"})


def test_seeded_two_coloring_of_ball_chambers_golden(ballcx):
    rng = random.Random(0)
    assign = {t: rng.randrange(2) for t in ballcx.chambers()}
    colored = color_chambers(ballcx, assign)
    sizes = Counter(colored.chamber_colors.values())
    # golden from the first oracle run, seed 0
    assert dict(sizes) == {0: 123, 1: 108}


# ----------------------------------------------------------------------
# serialization


def test_serialize_round_trip_plain(ballcx):
    assert deserialize(serialize(ballcx)) == ballcx
    assert serialize(ballcx) == serialize(ballcx)


def test_serialize_round_trip_colored():
    c = Complex(
        ["a", "b", "c"],
        [("a", "b"), ("b", "c")],
        vertex_colors={"a": 1, "b": 1, "c": 2},
        chamber_colors={("a", "b"): "A", ("b", "c"): "B"},
    )
    rt = deserialize(serialize(c))
    assert rt == c
    assert rt.vertex_colors == c.vertex_colors
    assert rt.chamber_colors == c.chamber_colors


# ----------------------------------------------------------------------
# LSV ball clique complex goldens


def test_ball_complex_goldens(ballcx):
    assert ballcx.dimension == 2
    assert ballcx.simplex_count(0) == 113
    assert ballcx.simplex_count(1) == 343
    assert ballcx.simplex_count(2) == 231  # golden
    assert ballcx.simplex_count(3) == 0  # no 4-cliques in the 1-skeleton


def test_ball_triangles_against_adjacency_oracle(ball2, ballcx):
    verts, edges = ball2.graph()
    adj = {v: set() for v in verts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    tris = set()
    for u, v in edges:
        for w in adj[u] & adj[v]:
            tris.add(tuple(sorted((u, v, w))))
    assert set(ballcx.simplices(2)) == tris


def test_ball_interior_thickness(ball2, ballcx):
    marks = InteriorMark.from_distances(dict(enumerate(ball2.dist)), 2)
    interior_edges = [e for e in ballcx.simplices(1) if marks.simplex_interior(e)]
    assert len(interior_edges) == 35  # 14 spokes + 21 link edges
    for e in interior_edges:
        assert chamber_count(ballcx, e) == 3


def test_ball_purity_report(ball2, ballcx):
    marks = InteriorMark.from_distances(dict(enumerate(ball2.dist)), 2)
    rep = purity_report(ballcx, marks)
    assert rep.pure
    assert rep.dimension == 2
    assert rep.interior_maximal_by_dim == {2: 21}
    assert rep.panel_chambers_min == 3
    assert rep.panel_chambers_max == 3


def test_link_of_identity_shape(ballcx):
    lk = link(ballcx, 0)
    assert len(lk.vertices) == 14
    assert lk.simplex_count(1) == 21
    assert lk.dimension == 1
    adj = {v: lk.neighbors(v) for v in lk.vertices}
    assert all(len(ns) == 3 for ns in adj.values())
    assert is_bipartite(lk.vertices, adj)
    assert graph_girth(lk.vertices, adj) == 6


def test_fano_incidence_graph_shape():
    g = fano_incidence_graph()
    assert len(g.vertices) == 14
    assert g.simplex_count(1) == 21
    adj = {v: g.neighbors(v) for v in g.vertices}
    assert all(len(ns) == 3 for ns in adj.values())
    assert is_bipartite(g.vertices, adj)
    assert graph_girth(g.vertices, adj) == 6


# ----------------------------------------------------------------------
# star and induced subcomplex


def test_star_and_induced(ballcx):
    w = star_vertices(ballcx, (0,), 1)
    assert len(w) == 15
    sub = induced_subcomplex(ballcx, w)
    assert len(sub.vertices) == 15
    assert sub.simplex_count(1) == 35
    assert sub.simplex_count(2) == 21
    with pytest.raises(ValueError):
        induced_subcomplex(ballcx, [10**9])


def test_induced_keeps_total_chamber_colors():
    c = Complex.from_maximal(
        range(4),
        [(0, 1, 2), (1, 2, 3)],
    )
    colored = color_chambers(c, {(0, 1, 2): "x", (1, 2, 3): "y"})
    sub = induced_subcomplex(colored, [0, 1, 2])
    assert sub.chamber_colors == {(0, 1, 2): "x"}


def test_dot_export():
    c = Complex(
        [0, 1],
        [(0, 1)],
        chamber_colors={(0, 1): "A"},
    )
    dot = c.to_dot()
    assert '"0" -- "1" [label="A"];' in dot
