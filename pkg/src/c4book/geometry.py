"""The projective plane PG(2, q) and the orthogonal polarity graph on it.

Vertices are the q^2+q+1 normalized points; two distinct points are adjacent
when their standard dot product vanishes.  The bilinear form is fixed as
x1*y1 + x2*y2 + x3*y3: any non-degenerate symmetric form gives an isomorphic
graph, and fixing one keeps every output reproducible byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf
from .errors import CapExceeded, InternalInconsistency
from .gf import Field, FieldElement, field_new
from .graphcore import Graph

# Order guard: the graph needs (q^2+q+1)^2 adjacency bits.
DEFAULT_GRAPH_Q_CAP = 128


@dataclass(frozen=True)
class ProjPoint:
    """Normalized homogeneous coordinates: first nonzero entry is 1."""

    coords: tuple[FieldElement, FieldElement, FieldElement]

    def dot(self, other: "ProjPoint") -> FieldElement:
        a, b = self.coords, other.coords
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

    def is_absolute(self) -> bool:
        return not self.dot(self)


def projective_points(field: Field) -> list[ProjPoint]:
    """All q^2+q+1 points, deterministically ordered.

    Points with x1 = 1 come first in lexicographic coordinate order, then
    (0, 1, a), then (0, 0, 1).
    """
    elems = gf.elements(field)
    one = field.one
    zero = field.zero
    points = [ProjPoint((one, a, b)) for a in elems for b in elems]
    points += [ProjPoint((zero, one, a)) for a in elems]
    points.append(ProjPoint((zero, zero, one)))
    return points


def absolute_points(field: Field) -> list[int]:
    """Indices of self-orthogonal points; always exactly q+1 of them."""
    pts = projective_points(field)
    out = [i for i, pt in enumerate(pts) if pt.is_absolute()]
    if len(out) != field.q + 1:
        raise InternalInconsistency(
            f"expected {field.q + 1} absolute points in PG(2,{field.q}), found {len(out)}"
        )
    return out


def _normalize(coords):
    first = next(c for c in coords if c)
    if first == first.field.one:
        return tuple(coords)
    inv = gf.inv(first)
    return tuple(inv * c for c in coords)


def _polar_line_basis(u, field):
    """Two independent solutions of u1*x + u2*y + u3*z = 0."""
    zero, one = field.zero, field.one
    u1, u2, u3 = u.coords
    if u1:
        inv = gf.inv(u1)
        return (-(inv * u2), one, zero), (-(inv * u3), zero, one)
    if u2:
        inv = gf.inv(u2)
        return (one, zero, zero), (zero, -(inv * u3), one)
    return (one, zero, zero), (zero, one, zero)


def er_graph(field_or_q, q_cap: int = DEFAULT_GRAPH_Q_CAP) -> Graph:
    """Orthogonal polarity graph on PG(2, q).

    Distinct points u, v are adjacent iff u.v = 0; absolute points carry no
    loop.  Each vertex's neighborhood is read off its polar line (the q+1
    points of u.x = 0), so construction is O(N*q) rather than all-pairs.
    The degree dichotomy (q+1 everywhere except degree q at the q+1
    absolute points) is checked at build time, not assumed.
    """
    field = field_or_q if isinstance(field_or_q, Field) else field_new(*_pp(field_or_q))
    q = field.q
    if q > q_cap:
        raise CapExceeded(f"q={q} polarity graph would have {q * q + q + 1} vertices")
    pts = projective_points(field)
    n = len(pts)
    index = {tuple(c.coeffs for c in pt.coords): i for i, pt in enumerate(pts)}
    elems = gf.elements(field)
    rows = [0] * n
    absolutes = []
    for i, u in enumerate(pts):
        if u.is_absolute():
            absolutes.append(i)
        b1, b2 = _polar_line_basis(u, field)
        line = [_normalize(b2)]
        for t in elems:
            line.append(_normalize(tuple(a + t * b for a, b in zip(b1, b2))))
        for coords in line:
            j = index[tuple(c.coeffs for c in coords)]
            if j != i:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    g = Graph(n, rows, _trusted=True)
    if len(absolutes) != q + 1:
        raise InternalInconsistency(f"{len(absolutes)} absolute points, expected {q + 1}")
    absolute_set = set(absolutes)
    for v in range(n):
        want = q if v in absolute_set else q + 1
        if g.degree(v) != want:
            raise InternalInconsistency(f"vertex {v} has degree {g.degree(v)}, expected {want}")
    return g


def _pp(q: int) -> tuple[int, int]:
    """Decompose a prime power q = p^e; raises if q is not one."""
    return gf.prime_power_decompose(q)
