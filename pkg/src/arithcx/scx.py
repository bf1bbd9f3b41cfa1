"""Finite abstract simplicial complexes with colors and locality marks.

A Complex stores its full downward-closed simplex family grouped by
dimension, optional vertex colors, and an optional total coloring of
its chambers (the top-dimensional simplices).  Vertex ids are opaque
but must be hashable, orderable within one complex, and JSON-stable
(ints or strings) if the complex is to be serialized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Complex",
    "InteriorMark",
    "PurityReport",
    "clique_complex",
    "link",
    "star_vertices",
    "induced_subcomplex",
    "chamber_count",
    "purity_report",
    "color_chambers",
    "serialize",
    "deserialize",
    "fano_incidence_graph",
]

VertexId = Hashable


def _norm_simplex(s: Iterable[VertexId]) -> tuple:
    out = tuple(sorted(s))
    if len(set(out)) != len(out):
        raise ValueError(f"repeated vertex in simplex {out!r}")
    return out


class Complex:
    """An abstract simplicial complex.

    Args:
        vertices: iterable of distinct vertex ids, order preserved.
        simplices: iterable of simplices (any dimensions); singletons
            for every vertex are added automatically and downward
            closure is validated.
        vertex_colors: optional map vertex -> color.
        chamber_colors: optional map simplex -> color, total on the
            top-dimensional simplices.
    """

    def __init__(
        self,
        vertices: Iterable[VertexId],
        simplices: Iterable[Iterable[VertexId]] = (),
        *,
        vertex_colors: Mapping[VertexId, object] | None = None,
        chamber_colors: Mapping[Iterable[VertexId], object] | None = None,
    ) -> None:
        self._vertices = tuple(vertices)
        vset = set(self._vertices)
        if len(vset) != len(self._vertices):
            raise ValueError("repeated vertex id")
        by_dim: dict[int, set[tuple]] = {0: {(v,) for v in self._vertices}}
        for s in simplices:
            t = _norm_simplex(s)
            if not t:
                raise ValueError("empty simplex")
            for v in t:
                if v not in vset:
                    raise ValueError(f"unknown vertex {v!r} in simplex {t!r}")
            by_dim.setdefault(len(t) - 1, set()).add(t)
        # downward closure: every facet of a simplex must be present
        for d in sorted(by_dim, reverse=True):
            if d == 0:
                continue
            lower = by_dim.setdefault(d - 1, set())
            for t in by_dim[d]:
                for face in combinations(t, d):
                    if face not in lower:
                        raise ValueError(
                            f"missing face {face!r} of simplex {t!r}"
                        )
        self._simplices: dict[int, frozenset[tuple]] = {
            d: frozenset(ss) for d, ss in by_dim.items() if ss
        }
        self._dimension = max(self._simplices) if self._simplices else -1

        if vertex_colors is not None:
            unknown = set(vertex_colors) - vset
            if unknown:
                raise ValueError(f"vertex colors for unknown vertices {unknown!r}")
            self.vertex_colors: dict | None = dict(vertex_colors)
        else:
            self.vertex_colors = None

        if chamber_colors is not None:
            norm = {_norm_simplex(s): c for s, c in chamber_colors.items()}
            chams = set(self.chambers())
            if set(norm) != chams:
                raise ValueError(
                    "chamber colors must be a total assignment on the "
                    "top-dimensional simplices"
                )
            self.chamber_colors: dict[tuple, object] | None = norm
        else:
            self.chamber_colors = None

        self._adj: dict | None = None
        self._maximal: tuple[tuple, ...] | None = None

    # -- structure ------------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def dimension(self) -> int:
        return self._dimension

    def dims(self) -> tuple[int, ...]:
        return tuple(sorted(self._simplices))

    def simplices(self, dim: int) -> tuple[tuple, ...]:
        return tuple(sorted(self._simplices.get(dim, frozenset())))

    def simplex_count(self, dim: int) -> int:
        return len(self._simplices.get(dim, frozenset()))

    def iter_simplices(self, min_dim: int = 0) -> Iterator[tuple]:
        for d in sorted(self._simplices):
            if d >= min_dim:
                yield from sorted(self._simplices[d])

    def has_simplex(self, s: Iterable[VertexId]) -> bool:
        t = _norm_simplex(s)
        return t in self._simplices.get(len(t) - 1, frozenset())

    def chambers(self) -> tuple[tuple, ...]:
        if self._dimension < 0:
            return ()
        return self.simplices(self._dimension)

    def maximal_simplices(self) -> tuple[tuple, ...]:
        """Simplices that are not a face of any larger simplex."""
        if self._maximal is None:
            non_max: set[tuple] = set()
            for d in self._simplices:
                if d == 0:
                    continue
                for t in self._simplices[d]:
                    for face in combinations(t, d):
                        non_max.add(face)
            out = []
            for d in sorted(self._simplices):
                for t in sorted(self._simplices[d]):
                    if t not in non_max:
                        out.append(t)
            self._maximal = tuple(out)
        return self._maximal

    def adjacency(self) -> dict:
        if self._adj is None:
            adj = {v: set() for v in self._vertices}
            for u, v in self._simplices.get(1, frozenset()):
                adj[u].add(v)
                adj[v].add(u)
            self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        return self._adj

    def neighbors(self, v: VertexId) -> tuple:
        if v not in self.adjacency():
            raise ValueError(f"unknown vertex {v!r}")
        return self.adjacency()[v]

    # -- equality and export ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Complex)
            and self._vertices == other._vertices
            and self._simplices == other._simplices
            and self.vertex_colors == other.vertex_colors
            and self.chamber_colors == other.chamber_colors
        )

    def __repr__(self) -> str:
        counts = ", ".join(
            f"{d}:{len(self._simplices[d])}" for d in sorted(self._simplices)
        )
        return f"Complex(dim={self._dimension}, counts=[{counts}])"

    def to_dot(self) -> str:
        """1-skeleton in DOT, with chamber colors as edge labels when
        the complex is 1-dimensional and colored."""
        lines = ["graph complex {"]
        for v in self._vertices:
            lines.append(f'  "{v}";')
        edge_colors = (
            self.chamber_colors
            if self._dimension == 1 and self.chamber_colors
            else {}
        )
        for u, v in self.simplices(1):
            lab = edge_colors.get((u, v))
            if lab is None:
                lines.append(f'  "{u}" -- "{v}";')
            else:
                lines.append(f'  "{u}" -- "{v}" [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_maximal(
        cls,
        vertices: Iterable[VertexId],
        maximal: Iterable[Iterable[VertexId]],
        **kw,
    ) -> "Complex":
        """Build the downward closure of the given simplices."""
        closed: set[tuple] = set()
        for s in maximal:
            t = _norm_simplex(s)
            for k in range(1, len(t) + 1):
                closed.update(combinations(t, k))
        return cls(vertices, closed, **kw)


# ----------------------------------------------------------------------
# construction helpers


def clique_complex(
    vertices: Sequence[VertexId],
    edges: Iterable[tuple[VertexId, VertexId]],
    max_dim: int = 3,
) -> Complex:
    """Flag complex of a simple graph: faces are cliques of size <= max_dim+1.

    Raises ValueError on loops, repeated edges, or unknown endpoints.
    """
    if max_dim < 1:
        raise ValueError("max_dim must be >= 1")
    verts = tuple(vertices)
    vset = set(verts)
    adj: dict[VertexId, set] = {v: set() for v in verts}
    seen = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at {u!r}: input graph must be simple")
        if u not in vset or v not in vset:
            raise ValueError(f"edge ({u!r}, {v!r}) has an unknown endpoint")
        key = _norm_simplex((u, v))
        if key in seen:
            raise ValueError(f"repeated edge {key!r}: input graph must be simple")
        seen.add(key)
        adj[u].add(v)
        adj[v].add(u)
    simplices: list[tuple] = sorted(seen)
    current = simplices[:]
    for _ in range(2, max_dim + 1):
        nxt = []
        for t in current:
            common = set.intersection(*(adj[x] for x in t)) if t else set()
            last = t[-1]
            for w in sorted(common):
                if w > last:
                    nxt.append(t + (w,))
        if not nxt:
            break
        simplices.extend(nxt)
        current = nxt
    return Complex(verts, simplices)


def link(c: Complex, v: VertexId) -> Complex:
    """The link of a vertex: all simplices s with s + {v} in c.

    Vertex colors are restricted; chamber colors are dropped (the
    link's chambers are different simplices).
    """
    if v not in set(c.vertices):
        raise ValueError(f"unknown vertex {v!r}")
    nbrs = set(c.neighbors(v))
    keep = [u for u in c.vertices if u in nbrs]
    simplices = []
    for t in c.iter_simplices(min_dim=1):
        if v in t:
            rest = tuple(x for x in t if x != v)
            if rest:
                simplices.append(rest)
    vc = None
    if c.vertex_colors is not None:
        vc = {u: c.vertex_colors[u] for u in keep if u in c.vertex_colors}
    return Complex(keep, simplices, vertex_colors=vc)


def star_vertices(c: Complex, seed: Iterable[VertexId], hops: int) -> tuple:
    """Vertices within `hops` steps of the seed set in the 1-skeleton."""
    adj = c.adjacency()
    frontier = list(dict.fromkeys(seed))
    seen = set(frontier)
    for _ in range(hops):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return tuple(v for v in c.vertices if v in seen)


def induced_subcomplex(c: Complex, vertices: Iterable[VertexId]) -> Complex:
    """Full subcomplex on a vertex subset.

    Chamber colors are retained when every chamber of the result was a
    colored chamber of the original; otherwise they are dropped.
    """
    keep = set(vertices)
    unknown = keep - set(c.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {unknown!r}")
    verts = tuple(v for v in c.vertices if v in keep)
    simplices = [t for t in c.iter_simplices(min_dim=1) if keep.issuperset(t)]
    vc = None
    if c.vertex_colors is not None:
        vc = {v: col for v, col in c.vertex_colors.items() if v in keep}
    sub = Complex(verts, simplices, vertex_colors=vc)
    if c.chamber_colors is not None:
        retained = {
            t: c.chamber_colors[t]
            for t in sub.chambers()
            if t in c.chamber_colors
        }
        if len(retained) == len(sub.chambers()):
            sub = Complex(
                verts,
                simplices,
                vertex_colors=vc,
                chamber_colors=retained,
            )
    return sub


# ----------------------------------------------------------------------
# interiority and purity


@dataclass(frozen=True)
class InteriorMark:
    """Per-vertex interior flags for boundary-aware claims.

    For a ball of radius r, a vertex is interior iff its distance from
    the center is at most r - 1; a simplex is interior iff all of its
    vertices are.
    """

    flags: Mapping[VertexId, bool]

    @classmethod
    def from_distances(
        cls, distances: Mapping[VertexId, int], radius: int
    ) -> "InteriorMark":
        return cls({v: d <= radius - 1 for v, d in distances.items()})

    @classmethod
    def all_interior(cls, c: Complex) -> "InteriorMark":
        return cls({v: True for v in c.vertices})

    def vertex_interior(self, v: VertexId) -> bool:
        return bool(self.flags.get(v, False))

    def simplex_interior(self, s: Iterable[VertexId]) -> bool:
        return all(self.flags.get(v, False) for v in s)


@dataclass(frozen=True)
class PurityReport:
    """Counts of interior maximal simplices by dimension.

    `pure` means every interior maximal simplex has the same dimension
    (vacuously true when there are none); `dimension` is that shared
    top dimension.  The panel fields give min/max chamber counts over
    the interior codimension-1 simplices of the whole complex.
    """

    interior_maximal_by_dim: dict[int, int]
    pure: bool
    dimension: int | None
    panel_chambers_min: int | None
    panel_chambers_max: int | None


def chamber_count(c: Complex, s: Iterable[VertexId]) -> int:
    """Number of top-dimensional simplices containing the simplex."""
    t = _norm_simplex(s)
    if not c.has_simplex(t):
        raise ValueError(f"unknown simplex {t!r}")
    ts = set(t)
    return sum(1 for ch in c.chambers() if ts.issubset(ch))


def purity_report(c: Complex, marks: InteriorMark) -> PurityReport:
    by_dim: dict[int, int] = {}
    for t in c.maximal_simplices():
        if marks.simplex_interior(t):
            by_dim[len(t) - 1] = by_dim.get(len(t) - 1, 0) + 1
    pure = len(by_dim) <= 1
    dimension = max(by_dim) if by_dim else None
    pmin = pmax = None
    if c.dimension >= 1:
        counts = [
            chamber_count(c, t)
            for t in c.simplices(c.dimension - 1)
            if marks.simplex_interior(t)
        ]
        if counts:
            pmin, pmax = min(counts), max(counts)
    return PurityReport(by_dim, pure, dimension, pmin, pmax)


# ----------------------------------------------------------------------
# chamber colorings


def color_chambers(c: Complex, assignment: Mapping) -> Complex:
    """Attach a total chamber coloring; partial assignments fail."""
    return Complex(
        c.vertices,
        list(c.iter_simplices(min_dim=1)),
        vertex_colors=c.vertex_colors,
        chamber_colors=dict(assignment),
    )


# ----------------------------------------------------------------------
# serialization


def serialize(c: Complex) -> str:
    doc: dict = {
        "vertices": list(c.vertices),
        "simplices": {
            str(d): [list(t) for t in c.simplices(d)]
            for d in c.dims()
            if d >= 1
        },
    }
    if c.vertex_colors is not None:
        doc["vertex_colors"] = [
            [v, c.vertex_colors[v]] for v in sorted(c.vertex_colors)
        ]
    if c.chamber_colors is not None:
        doc["chamber_colors"] = [
            [list(t), c.chamber_colors[t]] for t in sorted(c.chamber_colors)
        ]
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def deserialize(text: str) -> Complex:
    doc = json.loads(text)
    simplices = [
        tuple(t) for lists in doc.get("simplices", {}).values() for t in lists
    ]
    vc = None
    if "vertex_colors" in doc:
        vc = {v: col for v, col in doc["vertex_colors"]}
    cc = None
    if "chamber_colors" in doc:
        cc = {tuple(t): col for t, col in doc["chamber_colors"]}
    return Complex(
        doc["vertices"], simplices, vertex_colors=vc, chamber_colors=cc
    )


# ----------------------------------------------------------------------
# reference structure


def fano_incidence_graph() -> Complex:
    """Point-line incidence graph of the smallest projective plane.

    Lines are the translates of the difference set {0, 1, 3} mod 7.
    14 vertices, 3-regular, bipartite, girth 6 (the Heawood graph).
    """
    points = [f"p{i}" for i in range(7)]
    lines = [f"l{i}" for i in range(7)]
    edges = []
    for i in range(7):
        for k in (0, 1, 3):
            edges.append((f"p{(i + k) % 7}", f"l{i}"))
    return Complex(points + lines, edges)
