"""Reader and writer for the ``.ecg`` text format.

::

    # optional comments
    ecg <n> <t>
    e <u> <v> <c>        # 0 <= u < v < n, 1 <= c <= t

The writer emits edges sorted by ``(u, v)``.
"""

from __future__ import annotations

from pathlib import Path

from .graph import EdgeColoredGraph, GraphError


class EcgParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_ecg(text: str) -> EdgeColoredGraph:
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "ecg" or len(parts) != 3:
                raise EcgParseError("expected header 'ecg <n> <t>'", lineno)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise EcgParseError("non-integer header field", lineno) from None
            if header[0] < 0 or header[1] < 1:
                raise EcgParseError("need n >= 0 and t >= 1", lineno)
            continue
        if parts[0] != "e" or len(parts) != 4:
            raise EcgParseError(f"expected 'e <u> <v> <c>', got {line!r}", lineno)
        try:
            u, v, c = (int(x) for x in parts[1:])
        except ValueError:
            raise EcgParseError("non-integer edge field", lineno) from None
        n, t = header
        if not (0 <= u < v < n):
            raise EcgParseError(f"need 0 <= u < v < {n}, got ({u}, {v})", lineno)
        if not (1 <= c <= t):
            raise EcgParseError(f"color {c} outside 1..{t}", lineno)
        if (u, v) in seen:
            raise EcgParseError(f"duplicate pair ({u}, {v})", lineno)
        seen.add((u, v))
        edges.append((u, v, c))
    if header is None:
        raise EcgParseError("missing 'ecg' header")
    try:
        return EdgeColoredGraph(header[0], header[1], edges)
    except GraphError as exc:
        raise EcgParseError(str(exc)) from exc


def format_ecg(g: EdgeColoredGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"ecg {g.n} {g.t}")
    lines.extend(f"e {u} {v} {c}" for u, v, c in g.edges())
    return "\n".join(lines) + "\n"


def read_ecg(path) -> EdgeColoredGraph:
    return parse_ecg(Path(path).read_text())


def write_ecg(g: EdgeColoredGraph, path, comment: str | None = None) -> None:
    Path(path).write_text(format_ecg(g, comment))
