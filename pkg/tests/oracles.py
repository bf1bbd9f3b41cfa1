"""Slow, independent reference implementations used to pin expected values."""

import itertools

from arithcx.scx import Complex


def naive_automorphisms(c: Complex, respect_colors: bool = False) -> list[tuple]:
    """Filter all |V|! candidate bijections; exact but tiny-only.

    Returns the sorted image tuples over sorted(vertices).
    """
    ids = sorted(c.vertices)
    out = []
    for image in itertools.permutations(ids):
        m = dict(zip(ids, image))
        ok = True
        for d in c.dims():
            if d < 1:
                continue
            fam = set(c.simplices(d))
            for t in fam:
                if tuple(sorted(m[v] for v in t)) not in fam:
                    ok = False
                    break
            if not ok:
                break
        if ok and respect_colors:
            if c.vertex_colors is not None:
                ok = all(
                    c.vertex_colors.get(v) == c.vertex_colors.get(m[v]) for v in ids
                )
            if ok and c.chamber_colors is not None:
                ok = all(
                    c.chamber_colors.get(tuple(sorted(m[v] for v in t))) == col
                    for t, col in c.chamber_colors.items()
                )
        if ok:
            out.append(tuple(m[v] for v in ids))
    return sorted(out)


def random_graph(rng, n: int, p: float) -> Complex:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Complex(range(n), edges)


def random_two_complex(rng, n: int, p: float, pt: float) -> Complex:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    es = set(map(tuple, edges))
    tris = [
        t
        for t in itertools.combinations(range(n), 3)
        if {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])} <= es and rng.random() < pt
    ]
    return Complex(range(n), edges + tris)
