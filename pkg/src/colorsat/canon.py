"""Canonical keys for colored graphs, up to vertex and optionally palette
permutation.

Vertex canonization is the kernel's individualization-refinement search.
Palette mode minimizes the vertex-canonical encoding over the bijections
from the colors actually used onto ``1..m``; colors are first ordered by an
isomorphism-invariant signature so only colors with equal signatures are
permuted against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from . import kernels
from .graph import EdgeColoredGraph

VERTEX = "vertex"
PALETTE = "palette"
MODES = (VERTEX, PALETTE)

_MODE_ALIASES = {
    "vertex": VERTEX,
    "vertex-perm": VERTEX,
    "palette": PALETTE,
    "vertex-and-palette-perm": PALETTE,
}


def normalize_mode(mode: str) -> str:
    try:
        return _MODE_ALIASES[mode]
    except KeyError:
        raise ValueError(f"unknown canonical mode {mode!r}") from None


def _color_signature(n: int, mat: bytes, c: int) -> tuple:
    tok = bytes((c,))
    degs = sorted(mat.count(tok, u * n, u * n + n) for u in range(n))
    return (sum(degs), tuple(degs))


def _palette_maps(n: int, mat: bytes):
    """Candidate recolorings (as 256-byte translate tables) for palette mode."""
    used = sorted(set(mat) - {0})
    if not used:
        yield bytes(range(256)), 0
        return
    sig = {c: _color_signature(n, mat, c) for c in used}
    order = sorted(used, key=lambda c: (sig[c], c))
    groups = []
    for c in order:
        if groups and sig[groups[-1][0]] == sig[c]:
            groups[-1].append(c)
        else:
            groups.append([c])
    for choice in product(*(permutations(g) for g in groups)):
        table = bytearray(range(256))
        k = 1
        for grp in choice:
            for c in grp:
                table[c] = k
                k += 1
        yield bytes(table), len(used)


def canon_matrix(n: int, t: int, mat: bytes, palette: bool):
    """Canonize a color matrix.

    Returns ``(encoding, lab, table)``: ``lab[i]`` is the original vertex at
    canonical position ``i`` and ``table`` maps original colors to canonical
    colors (identity in vertex mode).
    """
    if not palette:
        enc, lab = kernels.canon_label(n, mat, t)
        return enc, lab, bytes(range(256))
    best = None
    for table, m in _palette_maps(n, mat):
        recolored = mat.translate(table)
        enc, lab = kernels.canon_label(n, recolored, max(m, 1))
        if best is None or enc < best[0]:
            best = (enc, lab, table)
    return best


def matrix_from_encoding(n: int, enc: bytes) -> bytes:
    mat = bytearray(n * n)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            c = enc[k]
            k += 1
            if c:
                mat[i * n + j] = c
                mat[j * n + i] = c
    return bytes(mat)


def make_key(n: int, t: int, enc: bytes, palette: bool) -> bytes:
    return b"%c%d:%d:" % (ord("p") if palette else ord("v"), n, t) + enc


@dataclass(frozen=True)
class CanonicalForm:
    key: bytes
    graph: EdgeColoredGraph  # canonically relabeled (and recolored) graph
    lab: tuple[int, ...]
    color_map: dict


def canonical_form(g: EdgeColoredGraph, mode: str = VERTEX) -> CanonicalForm:
    palette = normalize_mode(mode) == PALETTE
    enc, lab, table = canon_matrix(g.n, g.t, g.matrix, palette)
    cg = EdgeColoredGraph.from_matrix(g.n, g.t, matrix_from_encoding(g.n, enc))
    cmap = {c: table[c] for c in g.colors_used()}
    return CanonicalForm(make_key(g.n, g.t, enc, palette), cg, tuple(lab), cmap)


def canonical_key(g: EdgeColoredGraph, mode: str = VERTEX) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic in ``mode``."""
    palette = normalize_mode(mode) == PALETTE
    enc, _, _ = canon_matrix(g.n, g.t, g.matrix, palette)
    return make_key(g.n, g.t, enc, palette)


def brute_force_key(g: EdgeColoredGraph, mode: str = VERTEX) -> bytes:
    """Minimum encoding over every vertex (and palette) permutation.

    Exponential; an independent oracle for small graphs only.
    """
    palette = normalize_mode(mode) == PALETTE
    n = g.n
    mat = g.matrix
    if palette:
        used = sorted(g.colors_used())
        tables = []
        for img in permutations(range(1, len(used) + 1)):
            table = bytearray(range(256))
            for c, k in zip(used, img):
                table[c] = k
            tables.append(bytes(table))
        if not tables:
            tables = [bytes(range(256))]
    else:
        tables = [bytes(range(256))]
    best = None
    for table in tables:
        m2 = mat.translate(table)
        for perm in permutations(range(n)):
            enc = bytes(m2[perm[i] * n + perm[j]] for i in range(n) for j in range(i + 1, n))
            if best is None or enc < best:
                best = enc
    return b"b" + make_key(n, g.t, best if best is not None else b"", palette)
