"""Edge-colored graphs.

Vertices are ``0..n-1``; colors are ``1..t``. Adjacency is kept as one
integer bitset per (vertex, color); index ``0`` of each vertex row holds the
full neighbourhood. Graph values are immutable: every mutation returns a new
graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping


class GraphError(ValueError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class MissingEdgeError(GraphError):
    pass


class PaletteError(GraphError):
    pass


class VertexError(GraphError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class EdgeColoredGraph:
    """A simple graph on ``n`` vertices with each edge colored from ``[t]``."""

    __slots__ = ("n", "t", "_colors", "_masks", "_mat")

    def __init__(self, n: int, t: int, edges: Mapping | Iterable = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        if t < 1:
            raise PaletteError(f"palette size must be positive, got {t}")
        self.n = n
        self.t = t
        self._colors: dict[tuple[int, int], int] = {}
        self._masks = [[0] * (t + 1) for _ in range(n)]
        self._mat = None
        items = edges.items() if isinstance(edges, Mapping) else edges
        for item in items:
            if isinstance(edges, Mapping):
                (u, v), c = item
            else:
                u, v, c = item
            self._insert(u, v, c)

    def _check_pair(self, u: int, v: int) -> tuple[int, int]:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexError(f"vertex out of range for n={self.n}: ({u}, {v})")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        return (u, v) if u < v else (v, u)

    def _insert(self, u: int, v: int, c: int) -> None:
        key = self._check_pair(u, v)
        if key in self._colors:
            raise DuplicateEdgeError(f"edge {key} already present")
        if not (isinstance(c, int) and 1 <= c <= self.t):
            raise PaletteError(f"color {c} outside palette 1..{self.t}")
        self._colors[key] = c
        self._masks[u][c] |= 1 << v
        self._masks[u][0] |= 1 << v
        self._masks[v][c] |= 1 << u
        self._masks[v][0] |= 1 << u

    @classmethod
    def _raw(cls, n, t, colors, masks) -> "EdgeColoredGraph":
        g = cls.__new__(cls)
        g.n = n
        g.t = t
        g._colors = colors
        g._masks = masks
        g._mat = None
        return g

    @classmethod
    def from_matrix(cls, n: int, t: int, mat: bytes) -> "EdgeColoredGraph":
        colors = {}
        masks = [[0] * (t + 1) for _ in range(n)]
        for u in range(n):
            row = u * n
            for v in range(u + 1, n):
                c = mat[row + v]
                if c:
                    colors[(u, v)] = c
                    masks[u][c] |= 1 << v
                    masks[u][0] |= 1 << v
                    masks[v][c] |= 1 << u
                    masks[v][0] |= 1 << u
        g = cls._raw(n, t, colors, masks)
        g._mat = bytes(mat)
        return g

    # -- queries -----------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self._colors)

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges as ``(u, v, c)`` with ``u < v``, sorted by ``(u, v)``."""
        return [(u, v, c) for (u, v), c in sorted(self._colors.items())]

    def color(self, u: int, v: int) -> int:
        """Color of ``uv``, or ``0`` when ``uv`` is not an edge."""
        return self._colors.get((u, v) if u < v else (v, u), 0)

    def has_edge(self, u: int, v: int) -> bool:
        return self.color(u, v) != 0

    def non_edges(self) -> Iterator[tuple[int, int]]:
        for u, v in combinations(range(self.n), 2):
            if (u, v) not in self._colors:
                yield u, v

    def degree(self, v: int) -> int:
        return self._masks[v][0].bit_count()

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def neighbor_mask(self, v: int, c: int = 0) -> int:
        """Bitset of neighbours of ``v``; restricted to color ``c`` if given."""
        return self._masks[v][c]

    def neighbors(self, v: int, c: int = 0) -> list[int]:
        return list(_bits(self._masks[v][c]))

    def colors_used(self) -> set[int]:
        return set(self._colors.values())

    @property
    def matrix(self) -> bytes:
        """Flat ``n*n`` color matrix used by the kernels."""
        if self._mat is None:
            n = self.n
            m = bytearray(n * n)
            for (u, v), c in self._colors.items():
                m[u * n + v] = c
                m[v * n + u] = c
            self._mat = bytes(m)
        return self._mat

    # -- value-semantic mutation --------------------------------------------

    def add_edge(self, u: int, v: int, c: int) -> "EdgeColoredGraph":
        key = self._check_pair(u, v)
        if key in self._colors:
            raise DuplicateEdgeError(f"edge {key} already present")
        if not (isinstance(c, int) and 1 <= c <= self.t):
            raise PaletteError(f"color {c} outside palette 1..{self.t}")
        colors = dict(self._colors)
        colors[key] = c
        masks = list(self._masks)
        mu = list(masks[u])
        mv = list(masks[v])
        mu[c] |= 1 << v
        mu[0] |= 1 << v
        mv[c] |= 1 << u
        mv[0] |= 1 << u
        masks[u] = mu
        masks[v] = mv
        return EdgeColoredGraph._raw(self.n, self.t, colors, masks)

    def remove_edge(self, u: int, v: int) -> "EdgeColoredGraph":
        key = self._check_pair(u, v)
        c = self._colors.get(key)
        if c is None:
            raise MissingEdgeError(f"edge {key} not present")
        colors = dict(self._colors)
        del colors[key]
        masks = list(self._masks)
        mu = list(masks[u])
        mv = list(masks[v])
        mu[c] &= ~(1 << v)
        mu[0] &= ~(1 << v)
        mv[c] &= ~(1 << u)
        mv[0] &= ~(1 << u)
        masks[u] = mu
        masks[v] = mv
        return EdgeColoredGraph._raw(self.n, self.t, colors, masks)

    def relabel(self, perm) -> "EdgeColoredGraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return EdgeColoredGraph(self.n, self.t, [(perm[u], perm[v], c) for (u, v), c in self._colors.items()])

    def recolor(self, mapping, t: int | None = None) -> "EdgeColoredGraph":
        """Color ``c`` becomes ``mapping[c]``; optionally change the palette size."""
        return EdgeColoredGraph(self.n, self.t if t is None else t,
                                [(u, v, mapping[c]) for (u, v), c in self._colors.items()])

    def with_palette(self, t: int) -> "EdgeColoredGraph":
        return EdgeColoredGraph(self.n, t, self._colors)

    def uncolored(self) -> "EdgeColoredGraph":
        return EdgeColoredGraph(self.n, 1, [(u, v, 1) for (u, v) in self._colors])

    def complement(self) -> "EdgeColoredGraph":
        """Uncolored complement (palette size 1)."""
        return EdgeColoredGraph(self.n, 1, [(u, v, 1) for u, v in self.non_edges()])

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeColoredGraph):
            return NotImplemented
        return self.n == other.n and self.t == other.t and self._colors == other._colors

    def __hash__(self) -> int:
        return hash((self.n, self.t, frozenset(self._colors.items())))

    def __repr__(self) -> str:
        return f"EdgeColoredGraph(n={self.n}, t={self.t}, e={self.num_edges})"


@dataclass(frozen=True)
class ColorNeighborhood:
    vertex: int
    classes: tuple[frozenset, ...]  # classes[i - 1] is the color-i class

    def __getitem__(self, color: int) -> frozenset:
        return self.classes[color - 1]

    def sizes(self) -> list[int]:
        return [len(cl) for cl in self.classes]


def color_neighborhood(g: EdgeColoredGraph, v: int) -> ColorNeighborhood:
    if not 0 <= v < g.n:
        raise VertexError(f"vertex {v} out of range for n={g.n}")
    return ColorNeighborhood(v, tuple(frozenset(g.neighbors(v, c)) for c in range(1, g.t + 1)))


def add_edge(g: EdgeColoredGraph, u: int, v: int, c: int) -> EdgeColoredGraph:
    return g.add_edge(u, v, c)


def remove_edge(g: EdgeColoredGraph, u: int, v: int) -> EdgeColoredGraph:
    return g.remove_edge(u, v)


# -- small named graphs (uncolored unless noted) ------------------------------

def empty_graph(n: int, t: int = 1) -> EdgeColoredGraph:
    return EdgeColoredGraph(n, t)


def complete_graph(n: int, t: int = 1, color: int = 1) -> EdgeColoredGraph:
    return EdgeColoredGraph(n, t, [(u, v, color) for u, v in combinations(range(n), 2)])


def star_graph(s: int) -> EdgeColoredGraph:
    """``K_{1,s}`` with center ``0``."""
    return EdgeColoredGraph(s + 1, 1, [(0, i, 1) for i in range(1, s + 1)])


def path_graph(k: int) -> EdgeColoredGraph:
    """Path on ``k`` vertices."""
    return EdgeColoredGraph(k, 1, [(i, i + 1, 1) for i in range(k - 1)])


def disjoint_copies(m: int, h: EdgeColoredGraph) -> EdgeColoredGraph:
    edges = []
    for i in range(m):
        off = i * h.n
        edges.extend((u + off, v + off, c) for u, v, c in h.edges())
    return EdgeColoredGraph(m * h.n, h.t, edges)
