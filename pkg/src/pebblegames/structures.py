"""Ordered graph structures.

Two representations:

* `OrderedStructure` holds an explicit vertex list in linear-order position,
  adjacency bitsets, an edge set, and distinguished constants.  Suitable for
  the k = 3 families and small hand-built graphs.
* `VirtualStructure` answers adjacency/order queries through callables and
  never materialises edges.  Suitable for the astronomically wide general
  (k >= 4) families.

Vertices are hashable objects; for lattice structures they are (x, y) pairs
with x the unbounded first coordinate and y the row.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Callable, Hashable, Iterable, Sequence

Vertex = Hashable


class UnsupportedOperation(Exception):
    """Raised when a query needs explicit edges but the structure has none."""


class OrderedStructure:
    """Finite graph with a linear order on its vertices and named constants.

    `vertices` must be listed in increasing linear-order position.
    """

    def __init__(self, vertices: Sequence[Vertex],
                 edges: Iterable[tuple[Vertex, Vertex]],
                 constants: Sequence[Vertex] = (),
                 name: str = ""):
        self.vertices = list(vertices)
        self.name = name
        self.position = {v: i for i, v in enumerate(self.vertices)}
        if len(self.position) != len(self.vertices):
            raise ValueError("duplicate vertices")
        n = len(self.vertices)
        self.adj_bits = [0] * n
        self.edges: set[frozenset] = set()
        for u, v in edges:
            self.add_edge(u, v)
        self.constants = tuple(constants)
        for c in self.constants:
            if c not in self.position:
                raise ValueError(f"constant {c!r} is not a vertex")

    def __len__(self) -> int:
        return len(self.vertices)

    def add_edge(self, u: Vertex, v: Vertex) -> None:
        i, j = self.position[u], self.position[v]
        if i == j:
            raise ValueError("no loops")
        self.adj_bits[i] |= 1 << j
        self.adj_bits[j] |= 1 << i
        self.edges.add(frozenset((u, v)))

    def remove_edge(self, u: Vertex, v: Vertex) -> None:
        e = frozenset((u, v))
        if e not in self.edges:
            raise KeyError(f"no edge {u!r} -- {v!r}")
        self.edges.discard(e)
        i, j = self.position[u], self.position[v]
        self.adj_bits[i] &= ~(1 << j)
        self.adj_bits[j] &= ~(1 << i)

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return (self.adj_bits[self.position[u]] >> self.position[v]) & 1 == 1

    def less(self, u: Vertex, v: Vertex) -> bool:
        return self.position[u] < self.position[v]

    def neighbors(self, u: Vertex) -> list[Vertex]:
        bits = self.adj_bits[self.position[u]]
        return [self.vertices[j] for j in _bit_indices(bits)]

    def degree(self, u: Vertex) -> int:
        return self.adj_bits[self.position[u]].bit_count()

    # ---- graph queries ----------------------------------------------------

    def count_triangles(self) -> int:
        total = 0
        for e in self.edges:
            u, v = tuple(e)
            total += (self.adj_bits[self.position[u]]
                      & self.adj_bits[self.position[v]]).bit_count()
        return total // 3

    def triangles(self) -> list[tuple[Vertex, Vertex, Vertex]]:
        out = set()
        for e in self.edges:
            u, v = tuple(e)
            common = (self.adj_bits[self.position[u]]
                      & self.adj_bits[self.position[v]])
            for j in _bit_indices(common):
                out.add(frozenset((u, v, self.vertices[j])))
        return sorted(tuple(sorted(t, key=self.position.__getitem__))
                      for t in out)

    def has_clique(self, size: int) -> bool:
        return self.find_clique(size) is not None

    def find_clique(self, size: int):
        """First clique of the given size in order-lexicographic position,
        or None."""
        n = len(self.vertices)
        full = (1 << n) - 1

        def grow(chosen: list[int], cand: int):
            if len(chosen) == size:
                return chosen[:]
            for j in _bit_indices(cand):
                got = grow(chosen + [j], cand & self.adj_bits[j]
                           & (full << (j + 1)))
                if got is not None:
                    return got
            return None

        got = grow([], full)
        return None if got is None else tuple(self.vertices[j] for j in got)

    def girth(self) -> int | None:
        """Length of a shortest cycle, or None if the graph is acyclic."""
        best = None
        n = len(self.vertices)
        for s in range(n):
            dist = {s: 0}
            parent = {s: -1}
            q = deque([s])
            while q:
                u = q.popleft()
                if best is not None and 2 * dist[u] + 1 >= best:
                    continue
                for j in _bit_indices(self.adj_bits[u]):
                    if j not in dist:
                        dist[j] = dist[u] + 1
                        parent[j] = u
                        q.append(j)
                    elif parent[u] != j:
                        cyc = dist[u] + dist[j] + 1
                        if best is None or cyc < best:
                            best = cyc
        return best

    # ---- serialisation ----------------------------------------------------

    def to_json(self, k: int | None = None, m: int | None = None,
                variant: str | None = None) -> dict:
        """JSON document: vertices in order position, edges and constants as
        position indices, first coordinates as decimal strings."""
        doc = {
            "schema_version": 1,
            "vertices": [[str(v[0]), v[1]] for v in self.vertices],
            "edges": sorted(sorted((self.position[u], self.position[v]))
                            for u, v in (tuple(e) for e in self.edges)),
            "constants": [self.position[c] for c in self.constants],
        }
        if k is not None:
            doc["k"] = k
        if m is not None:
            doc["m"] = m
        if variant is not None:
            doc["variant"] = variant
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "OrderedStructure":
        verts = [(int(x), y) for x, y in doc["vertices"]]
        edges = [(verts[i], verts[j]) for i, j in doc["edges"]]
        consts = [verts[i] for i in doc.get("constants", [])]
        return cls(verts, edges, consts)

    def to_dot(self) -> str:
        lines = ["graph {"]
        for v in self.vertices:
            vid = f"v{v[0]}_{v[1]}"
            shape = ' shape=box' if v in self.constants else ""
            lines.append(f'  {vid} [label="{v[0]},{v[1]}"{shape}];')
        for i, j in sorted(sorted((self.position[u], self.position[v]))
                           for u, v in (tuple(e) for e in self.edges)):
            u, v = self.vertices[i], self.vertices[j]
            lines.append(f"  v{u[0]}_{u[1]} -- v{v[0]}_{v[1]};")
        lines.append("}")
        return "\n".join(lines)

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(**kw), indent=2, sort_keys=True)


class VirtualStructure:
    """Ordered graph given by query callables instead of explicit edges.

    adjacent(u, v) -> bool and less(u, v) -> bool must be total on the
    (implicit) universe; `constants` may still be explicit.
    """

    def __init__(self, adjacent: Callable[[Vertex, Vertex], bool],
                 less: Callable[[Vertex, Vertex], bool],
                 constants: Sequence[Vertex] = (), name: str = ""):
        self._adjacent = adjacent
        self._less = less
        self.constants = tuple(constants)
        self.name = name

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return self._adjacent(u, v)

    def less(self, u: Vertex, v: Vertex) -> bool:
        return self._less(u, v)

    def count_triangles(self):
        raise UnsupportedOperation("no explicit edge set")

    def has_clique(self, size: int):
        raise UnsupportedOperation("no explicit edge set")

    def girth(self):
        raise UnsupportedOperation("no explicit edge set")


def partial_isomorphism(a, b, pairs: Iterable[tuple[Vertex, Vertex]]) -> bool:
    """Do the pairs (u in a, v in b), together with the matched constants of
    a and b, form a partial isomorphism for edges, order and equality?"""
    if len(a.constants) != len(b.constants):
        return False
    full = list(pairs) + list(zip(a.constants, b.constants))
    for i, (u1, v1) in enumerate(full):
        for u2, v2 in full[i + 1:]:
            if (u1 == u2) != (v1 == v2):
                return False
            if u1 == u2:
                continue
            if a.adjacent(u1, u2) != b.adjacent(v1, v2):
                return False
            if a.less(u1, u2) != b.less(v1, v2):
                return False
    return True


def linear_order(n: int, name: str = "") -> OrderedStructure:
    """Edgeless ordered structure on n points: a finite linear order."""
    return OrderedStructure([(i, 0) for i in range(n)], [], name=name)


def clique_graph(k: int) -> OrderedStructure:
    """Ordered complete graph on the k vertices (0,0)..(0,k-1), one per row,
    ordered by row."""
    verts = [(0, y) for y in range(k)]
    edges = [(verts[i], verts[j]) for i in range(k) for j in range(i + 1, k)]
    return OrderedStructure(verts, edges, name=f"clique-{k}")


def layered_graph(k: int) -> OrderedStructure:
    """Ordered graph on k rows of k-1 vertices each, ordered by (row, column);
    two vertices are adjacent iff their rows differ and their coordinate
    congruence numbers (x + y mod k-1) differ.  It is k-clique-free but in
    the one-sided unbounded pebble game the ordered k-clique cannot be told
    apart from it with k-1 pebbles."""
    verts = [(x, y) for y in range(k) for x in range(k - 1)]
    edges = []
    for i, (x1, y1) in enumerate(verts):
        for x2, y2 in verts[i + 1:]:
            if y1 != y2 and (x1 + y1) % (k - 1) != (x2 + y2) % (k - 1):
                edges.append(((x1, y1), (x2, y2)))
    return OrderedStructure(verts, edges, name=f"layered-{k}")


def _bit_indices(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low
