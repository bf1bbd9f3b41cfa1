"""Projective 3x3 matrices over GF(2^k) and Cayley-ball construction.

A point of PGL3 is represented by the matrix scaled so that its first
nonzero entry in row-major order is 1; two matrices are the same group
element iff their canonical forms coincide.  The module carries the
seven Lubotzky-Samuels-Vishne generator matrices over GF(16) and grows
breadth-first Cayley balls around the identity, which the rest of the
package turns into simplicial complexes.

References:
    Lubotzky, Samuels, Vishne.  "Explicit constructions of Ramanujan
    complexes of type A_d."  European J. Combinatorics 26 (2005).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceededError
from .gf2k import GF16, FieldElem, FieldSpec, format_poly, parse_poly

__all__ = [
    "ProjMatrix",
    "GeneratorTable",
    "SymmetricGenerators",
    "CollisionReport",
    "CayleyBall",
    "matrix",
    "identity",
    "determinant",
    "pgl_normalize",
    "pgl_mul",
    "pgl_inv",
    "lsv_raw_matrices",
    "lsv_generators",
    "symmetrize",
    "cayley_ball",
    "proj_plane_points",
    "projective_plane_orbit",
]

DEFAULT_VERTEX_BUDGET = 10**6


@dataclass(frozen=True, slots=True)
class ProjMatrix:
    """A 3x3 matrix over a binary field, entries as row-major bitmasks.

    `canonical` is True when the matrix has been scaled so its first
    nonzero entry is 1; only canonical matrices compare equal as group
    elements.
    """

    spec: FieldSpec
    entries: tuple[int, int, int, int, int, int, int, int, int]
    canonical: bool = False

    def entry(self, i: int, j: int) -> FieldElem:
        return FieldElem(self.entries[3 * i + j], self.spec)

    def rows(self) -> tuple[tuple[str, str, str], ...]:
        """Entries as polynomial strings, row by row."""
        e = [format_poly(b) for b in self.entries]
        return (tuple(e[0:3]), tuple(e[3:6]), tuple(e[6:9]))

    def encode(self) -> bytes:
        """Canonical byte encoding used for reproducible orderings."""
        return bytes(self.entries)

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(r) for r in self.rows())
        return f"ProjMatrix[{rows}]"


def matrix(spec: FieldSpec, rows: Sequence[Sequence]) -> ProjMatrix:
    """Build a (not yet canonical) matrix from 3x3 entries.

    Entries may be bitmask ints, FieldElem values, or polynomial
    strings such as 't^2+1'.
    """
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("expected a 3x3 entry table")
    bits = []
    for row in rows:
        for e in row:
            if isinstance(e, FieldElem):
                if e.spec != spec:
                    raise ValueError("entry from a different field")
                b = e.bits
            elif isinstance(e, str):
                b = parse_poly(e)
            else:
                b = int(e)
            if not 0 <= b < spec.size:
                raise ValueError(f"entry {e!r} out of range for {spec!r}")
            bits.append(b)
    return ProjMatrix(spec, tuple(bits))


def identity(spec: FieldSpec) -> ProjMatrix:
    return ProjMatrix(spec, (1, 0, 0, 0, 1, 0, 0, 0, 1), canonical=True)


def determinant(m: ProjMatrix) -> FieldElem:
    """Determinant by cofactor expansion along the first row."""
    s = m.spec
    a = m.entries
    # char 2: minus signs vanish
    m00 = s.add(s.mul(a[4], a[8]), s.mul(a[5], a[7]))
    m01 = s.add(s.mul(a[3], a[8]), s.mul(a[5], a[6]))
    m02 = s.add(s.mul(a[3], a[7]), s.mul(a[4], a[6]))
    det = s.add(
        s.add(s.mul(a[0], m00), s.mul(a[1], m01)),
        s.mul(a[2], m02),
    )
    return FieldElem(det, s)


def _scale(spec: FieldSpec, entries: Sequence[int]) -> tuple[int, ...]:
    for b in entries:
        if b:
            lam = spec.inv(b)
            return tuple(spec.mul(lam, e) for e in entries)
    raise ValueError("zero matrix cannot be normalized")


def pgl_normalize(m: ProjMatrix) -> ProjMatrix:
    """Scale so the first nonzero row-major entry is 1.

    Raises ValueError on a singular matrix: canonical forms are only
    issued for group elements.
    """
    if not determinant(m):
        raise ValueError(f"singular matrix has no canonical form: {m!r}")
    return ProjMatrix(m.spec, _scale(m.spec, m.entries), canonical=True)


def pgl_mul(a: ProjMatrix, b: ProjMatrix) -> ProjMatrix:
    """Canonical form of the product a*b."""
    if a.spec != b.spec:
        raise ValueError("mismatched field specs")
    s = a.spec
    x, y = a.entries, b.entries
    mul_, add_ = s.mul, s.add
    out = []
    for i in (0, 3, 6):
        for j in (0, 1, 2):
            acc = mul_(x[i], y[j])
            acc = add_(acc, mul_(x[i + 1], y[j + 3]))
            acc = add_(acc, mul_(x[i + 2], y[j + 6]))
            out.append(acc)
    return ProjMatrix(s, _scale(s, out), canonical=True)


def pgl_inv(m: ProjMatrix) -> ProjMatrix:
    """Canonical form of the inverse, via the adjugate.

    In PGL the adjugate itself represents the inverse class, since it
    differs from the actual inverse by the (scalar) determinant.
    """
    if not determinant(m):
        raise ValueError(f"singular matrix has no inverse: {m!r}")
    s = m.spec
    a = m.entries
    mul_, add_ = s.mul, s.add

    def minor(r0, r1, c0, c1):
        return add_(
            mul_(a[3 * r0 + c0], a[3 * r1 + c1]),
            mul_(a[3 * r0 + c1], a[3 * r1 + c0]),
        )

    # adj[j][i] = minor with row i, column j removed (char 2: no signs)
    adj = (
        minor(1, 2, 1, 2), minor(0, 2, 1, 2), minor(0, 1, 1, 2),
        minor(1, 2, 0, 2), minor(0, 2, 0, 2), minor(0, 1, 0, 2),
        minor(1, 2, 0, 1), minor(0, 2, 0, 1), minor(0, 1, 0, 1),
    )
    return ProjMatrix(s, _scale(s, adj), canonical=True)


# ----------------------------------------------------------------------
# generator tables


@dataclass(frozen=True)
class GeneratorTable:
    """A named list of canonical, invertible, pairwise distinct matrices."""

    name: str
    fieldspec: FieldSpec
    matrices: tuple[ProjMatrix, ...]

    def __post_init__(self) -> None:
        seen = set()
        for m in self.matrices:
            if m.spec != self.fieldspec:
                raise ValueError("generator from a different field")
            if not m.canonical:
                raise ValueError("generator table requires canonical matrices")
            if not determinant(m):
                raise ValueError(f"singular generator: {m!r}")
            if m.entries in seen:
                raise ValueError(f"repeated generator: {m!r}")
            seen.add(m.entries)

    def __len__(self) -> int:
        return len(self.matrices)

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "field": {"modulus": format_poly(self.fieldspec.modulus)},
            "matrices": [m.rows() for m in self.matrices],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "GeneratorTable":
        doc = json.loads(text)
        spec = FieldSpec(parse_poly(doc["field"]["modulus"]))
        mats = tuple(
            pgl_normalize(matrix(spec, rows)) for rows in doc["matrices"]
        )
        return cls(doc["name"], spec, mats)


# The seven LSV generators for PGL3 over GF(16), as printed in the
# published table (row-major).  The last matrix is printed with an
# "x+x^2" entry where every other entry uses t; the parser reads x as t.
# See README for the note on that entry.
LSV_GENERATOR_STRINGS: tuple[tuple[tuple[str, str, str], ...], ...] = (
    (("t+t^3", "t^2", "t+t^2"),
     ("t", "t^3", "1+t+t^2"),
     ("t+t^2", "1+t^2", "1+t^3")),
    (("1+t+t^2+t^3", "t+t^2", "1+t^2"),
     ("1+t", "t^2+t^3", "1"),
     ("1+t^2", "t", "t^3")),
    (("1+t^2+t^3", "1+t^2", "t"),
     ("1+t+t^2", "t+t^3", "t^2"),
     ("t", "1+t", "t^2+t^3")),
    (("t+t^2+t^3", "t", "1+t"),
     ("1", "1+t+t^2+t^3", "t+t^2"),
     ("1+t", "1+t+t^2", "t+t^3")),
    (("1+t^3", "1+t", "1+t+t^2"),
     ("t^2", "1+t^2+t^3", "1+t^2"),
     ("1+t+t^2", "1", "1+t+t^2+t^3")),
    (("t^3", "1+t+t^2", "1"),
     ("t+t^2", "t+t^2+t^3", "t"),
     ("1", "t^2", "1+t^2+t^3")),
    (("t^2+t^3", "1", "t^2"),
     ("1+t^2", "1+t^3", "1+t"),
     ("t^2", "x+x^2", "t+t^2+t^3")),
)


def lsv_raw_matrices() -> tuple[ProjMatrix, ...]:
    """The seven generators exactly as printed (not canonicalized)."""
    return tuple(matrix(GF16, rows) for rows in LSV_GENERATOR_STRINGS)


def lsv_generators() -> GeneratorTable:
    """Canonical generator table for the PGL3(GF(16)) construction."""
    mats = tuple(pgl_normalize(m) for m in lsv_raw_matrices())
    return GeneratorTable("lsv-gf16", GF16, mats)


@dataclass(frozen=True)
class SymmetricGenerators:
    """A generator list closed under inverses.

    Labels are 1-based indices into the source table, negated for
    inverses.  `self_inverse` lists labels whose generator equals its
    own inverse (those appear once, with the positive label).
    """

    fieldspec: FieldSpec
    matrices: tuple[ProjMatrix, ...]
    labels: tuple[int, ...]
    self_inverse: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self) -> Iterator[ProjMatrix]:
        return iter(self.matrices)

    def inverse_label(self, label: int) -> int:
        if abs(label) in self.self_inverse:
            return label
        return -label


def symmetrize(tbl: GeneratorTable) -> SymmetricGenerators:
    """Append the inverses of a table, deduplicating canonical forms."""
    mats: list[ProjMatrix] = []
    labels: list[int] = []
    self_inverse: list[int] = []
    seen: dict[tuple, int] = {}
    for j, g in enumerate(tbl.matrices):
        mats.append(g)
        labels.append(j + 1)
        seen[g.entries] = j + 1
    for j, g in enumerate(tbl.matrices):
        gi = pgl_inv(g)
        if gi.entries in seen:
            if seen[gi.entries] == j + 1:
                self_inverse.append(j + 1)
            continue
        mats.append(gi)
        labels.append(-(j + 1))
        seen[gi.entries] = -(j + 1)
    return SymmetricGenerators(
        tbl.fieldspec, tuple(mats), tuple(labels), tuple(self_inverse)
    )


# ----------------------------------------------------------------------
# Cayley balls


@dataclass(frozen=True)
class CollisionReport:
    """Two distinct reduced words that reach the same ball vertex."""

    vertex: int
    word_a: tuple[int, ...]
    word_b: tuple[int, ...]

    @property
    def lengths(self) -> tuple[int, int]:
        return (len(self.word_a), len(self.word_b))


@dataclass(frozen=True)
class CayleyBall:
    """A breadth-first ball around the identity in a Cayley graph.

    Vertices are canonical matrices, index 0 is the identity, and the
    vertex order is sorted by encoded bytes within each distance shell.
    Edges carry the label of the generator g with v = u*g for u < v.
    The edge set is the full induced subgraph on the ball, including
    edges between two outermost vertices.
    """

    generators: SymmetricGenerators
    radius: int
    vertices: tuple[ProjMatrix, ...]
    dist: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    collision: CollisionReport | None
    _adj: dict = field(default_factory=dict, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def sphere_sizes(self) -> tuple[int, ...]:
        counts = Counter(self.dist)
        return tuple(counts.get(d, 0) for d in range(self.radius + 1))

    def graph(self) -> tuple[range, list[tuple[int, int]]]:
        """Vertex indices and unlabeled edge pairs, for complex building."""
        return range(len(self.vertices)), [(u, v) for u, v, _ in self.edges]

    def adjacency(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """index -> tuple of (neighbor, label of generator from here)."""
        if not self._adj:
            tmp: dict[int, list[tuple[int, int]]] = {
                i: [] for i in range(len(self.vertices))
            }
            for u, v, lab in self.edges:
                tmp[u].append((v, lab))
                tmp[v].append((u, self.generators.inverse_label(lab)))
            for i, lst in tmp.items():
                self._adj[i] = tuple(sorted(lst))
        return self._adj

    def to_json_dict(self) -> dict:
        return {
            "field": {"modulus": format_poly(self.generators.fieldspec.modulus)},
            "radius": self.radius,
            "generator_labels": list(self.generators.labels),
            "generators": [m.rows() for m in self.generators.matrices],
            "vertex_count": len(self.vertices),
            "sphere_sizes": list(self.sphere_sizes()),
            "vertices": [
                {"index": i, "distance": self.dist[i], "rows": m.rows()}
                for i, m in enumerate(self.vertices)
            ],
            "edges": [list(e) for e in self.edges],
            "collision": None
            if self.collision is None
            else {
                "vertex": self.collision.vertex,
                "word_a": list(self.collision.word_a),
                "word_b": list(self.collision.word_b),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def to_dot(self) -> str:
        """1-skeleton in DOT; edge labels are signed generator indices."""
        lines = ["graph cayley_ball {"]
        for i in range(len(self.vertices)):
            lines.append(f'  v{i} [label="{i} (d={self.dist[i]})"];')
        for u, v, lab in self.edges:
            lines.append(f'  v{u} -- v{v} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def cayley_ball(
    gens: SymmetricGenerators,
    radius: int,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> CayleyBall:
    """Grow the ball of a given radius around the identity.

    Args:
        gens: symmetric generator set (validated: canonical, closed
            under inverse, identity excluded).
        radius: ball radius, >= 0.
        vertex_budget: abort with BudgetExceededError as soon as the
            ball exceeds this many vertices.

    Returns:
        CayleyBall with exact BFS distance labels, the full induced
        edge set, and the first reduced-word collision seen (if any).
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    spec = gens.fieldspec
    ident = identity(spec)
    by_entries = {}
    for m, lab in zip(gens.matrices, gens.labels):
        if not m.canonical:
            raise ValueError("generators must be canonical")
        if m.entries == ident.entries:
            raise ValueError("identity cannot be a generator")
        by_entries[m.entries] = lab
    for m, lab in zip(gens.matrices, gens.labels):
        ilab = by_entries.get(pgl_inv(m).entries)
        if ilab is None:
            raise ValueError(f"generator set not symmetric at label {lab}")

    index: dict[tuple, int] = {ident.entries: 0}
    verts: list[ProjMatrix] = [ident]
    dist: list[int] = [0]
    parent: list[int] = [-1]
    parent_label: list[int] = [0]
    edges: list[tuple[int, int, int]] = []
    collision: tuple[int, tuple[int, ...], tuple[int, ...]] | None = None

    def word_of(i: int) -> tuple[int, ...]:
        out: list[int] = []
        while i > 0:
            out.append(parent_label[i])
            i = parent[i]
        return tuple(reversed(out))

    u = 0
    while u < len(verts):
        du = dist[u]
        for g, lab in zip(gens.matrices, gens.labels):
            v = pgl_mul(verts[u], g)
            w = index.get(v.entries)
            if w is None:
                if du >= radius:
                    continue
                if len(verts) + 1 > vertex_budget:
                    raise BudgetExceededError(
                        f"ball exceeds vertex budget {vertex_budget} "
                        f"at radius {radius}"
                    )
                w = len(verts)
                index[v.entries] = w
                verts.append(v)
                dist.append(du + 1)
                parent.append(u)
                parent_label.append(lab)
                edges.append((u, w, lab))
            else:
                if w > u:
                    edges.append((u, w, lab))
                if collision is None:
                    # reduced: the new word may not end in a cancelling pair
                    if u == 0 or gens.inverse_label(parent_label[u]) != lab:
                        wa = word_of(w)
                        wb = word_of(u) + (lab,)
                        if wa != wb:
                            collision = (w, wa, wb)
        u += 1

    # canonical order: by (distance, encoded bytes)
    order = sorted(range(len(verts)), key=lambda i: (dist[i], verts[i].encode()))
    pos = [0] * len(verts)
    for new, old in enumerate(order):
        pos[old] = new
    new_edges = []
    for a, b, lab in edges:
        na, nb = pos[a], pos[b]
        if na < nb:
            new_edges.append((na, nb, lab))
        else:
            new_edges.append((nb, na, gens.inverse_label(lab)))
    report = None
    if collision is not None:
        report = CollisionReport(pos[collision[0]], collision[1], collision[2])
    return CayleyBall(
        generators=gens,
        radius=radius,
        vertices=tuple(verts[i] for i in order),
        dist=tuple(dist[i] for i in order),
        edges=tuple(sorted(new_edges)),
        collision=report,
    )


# ----------------------------------------------------------------------
# projective plane action


def proj_plane_points(spec: FieldSpec) -> tuple[tuple[int, int, int], ...]:
    """Canonical points of P^2: first nonzero coordinate scaled to 1."""
    pts = []
    q = spec.size
    for y in range(q):
        for z in range(q):
            pts.append((1, y, z))
    for z in range(q):
        pts.append((0, 1, z))
    pts.append((0, 0, 1))
    return tuple(pts)


def _act(m: ProjMatrix, p: tuple[int, int, int]) -> tuple[int, int, int]:
    s = m.spec
    a = m.entries
    v = (
        s.add(s.add(s.mul(a[0], p[0]), s.mul(a[1], p[1])), s.mul(a[2], p[2])),
        s.add(s.add(s.mul(a[3], p[0]), s.mul(a[4], p[1])), s.mul(a[5], p[2])),
        s.add(s.add(s.mul(a[6], p[0]), s.mul(a[7], p[1])), s.mul(a[8], p[2])),
    )
    for b in v:
        if b:
            lam = s.inv(b)
            return (s.mul(lam, v[0]), s.mul(lam, v[1]), s.mul(lam, v[2]))
    raise ValueError("projective image of a point cannot be zero")


def projective_plane_orbit(
    gens: SymmetricGenerators | Iterable[ProjMatrix],
) -> list[int]:
    """Orbit sizes of the generated group acting on P^2, descending.

    Inverses are added internally, so a plain generator list gives the
    orbits of the generated subgroup.
    """
    mats = list(gens.matrices if isinstance(gens, SymmetricGenerators) else gens)
    if not mats:
        raise ValueError("need at least one matrix")
    spec = mats[0].spec
    closed = {m.entries: m for m in mats}
    for m in mats:
        gi = pgl_inv(m)
        closed.setdefault(gi.entries, gi)
    action = list(closed.values())

    pts = proj_plane_points(spec)
    idx = {p: i for i, p in enumerate(pts)}
    seen = [False] * len(pts)
    sizes = []
    for start in range(len(pts)):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        size = 0
        while queue:
            i = queue.pop()
            size += 1
            p = pts[i]
            for m in action:
                j = idx[_act(m, p)]
                if not seen[j]:
                    seen[j] = True
                    queue.append(j)
        sizes.append(size)
    return sorted(sizes, reverse=True)
