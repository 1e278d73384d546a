"""Explicit construction of the three-row ordered graph pairs.

The pair (A, B) lives on three rows of equal width.  B starts from a base
graph whose edges are determined by coordinate congruence numbers at the
lower of the two endpoint levels, then loses edges near even lattice points
(the deletion pass), applied top level down.  A is B plus one extra edge
between the two critical points.  Optionally each row is circularly shifted
by a row-dependent amount and six boundary vertices are named as constants.
"""

from __future__ import annotations

from .params import FULL_K3, REDUCED_K3, Params
from .structures import OrderedStructure


def lattice_vertices(p: Params) -> list[tuple[int, int]]:
    """All (x, y) with 0 <= x < width, 0 <= y < 3, in (y, x) order."""
    return [(x, y) for y in range(p.k) for x in range(p.width)]


def base_edges(p: Params) -> set[frozenset]:
    """Edges of the undeleted graph: distinct rows and distinct congruence
    numbers at the lower of the two endpoint levels."""
    out = set()
    idx = [p.idx(x) for x in range(p.width)]
    for x1 in range(p.width):
        for x2 in range(p.width):
            for y1 in range(p.k):
                for y2 in range(y1 + 1, p.k):
                    lev = min(idx[x1], idx[x2])
                    c1 = p.cc(p.floor_abs(x1, lev), y1)
                    c2 = p.cc(p.floor_abs(x2, lev), y2)
                    if c1 != c2:
                        out.add(frozenset(((x1, y1), (x2, y2))))
    return out


def deletion_pass(p: Params, edges: set[frozenset]) -> set[frozenset]:
    """Remove, for every middle-row vertex (x, 1) of index l < m sitting at
    an even level-l lattice position, all edges from (x, 1) to level-(l+1)
    vertices not adjacent to (<x>_{l+1}, 1).  Levels are processed from the
    top down; adjacency on the right-hand side is always read from the
    current edge set."""
    edges = set(edges)
    for lev in range(p.m - 1, p.lo - 1, -1):
        doomed = []
        for x in range(p.width):
            if p.idx(x) != lev or p.floor_abs(x, lev) % 2:
                continue
            anchor = (p.proj(x, lev + 1), 1)
            for u in range(p.width):
                if p.idx(u) < lev + 1:
                    continue
                for v in range(p.k):
                    e = frozenset(((x, 1), (u, v)))
                    if e in edges and frozenset((anchor, (u, v))) not in edges:
                        doomed.append(e)
        edges.difference_update(doomed)
    return edges


def boundary_constants(p: Params) -> list[tuple[int, int]]:
    """The leftmost and rightmost labels of every row after shifting:
    labels width - tr(y) and width - tr(y) - 1, taken mod width."""
    out = []
    for y in range(p.k):
        for d in (0, 1):
            out.append(((p.width - p.tr(y) - d) % p.width, y))
    return sorted(out, key=lambda v: (v[1], v[0]))


def shifted_vertices(p: Params) -> list[tuple[int, int]]:
    """Vertices in shifted order: row y is rotated right by tr(y), so the
    order position of label (x, y) within its row is (x + tr(y)) mod width."""
    verts = []
    for y in range(p.k):
        verts.extend((((pos - p.tr(y)) % p.width, y)
                      for pos in range(p.width)))
    return verts


def build(p: Params, *, shifted: bool = False, constants: bool = False
          ) -> tuple[OrderedStructure, OrderedStructure]:
    """Construct the pair (A, B).

    B is the deleted base graph; A adds the single critical edge between
    (mid, 0) and (mid, 2).  With shifted=True each row is circularly shifted
    by its row shift; with constants=True the six boundary vertices become
    constants (requires shifted=True)."""
    if p.variant not in (FULL_K3, REDUCED_K3):
        raise ValueError("explicit construction is defined for k = 3 only")
    if constants and not shifted:
        raise ValueError("boundary constants require the shifted order")
    edges = deletion_pass(p, base_edges(p))
    verts = shifted_vertices(p) if shifted else lattice_vertices(p)
    consts = boundary_constants(p) if constants else ()
    b = OrderedStructure(verts, (tuple(e) for e in edges), consts, name="B")
    a = OrderedStructure(verts, (tuple(e) for e in edges), consts, name="A")
    a.add_edge((p.mid, 0), (p.mid, 2))
    return a, b
