"""graph6 reader and writer for simple graphs with at most 64 vertices."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _size_prefix(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    # 63 <= n <= 258047: '~' then 18 bits big-endian
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def encode_graph6(g: Graph) -> str:
    n = g.n
    bits = [int(g.has_edge(i, j)) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for x in bits[k:k + 6]:
            v = (v << 1) | x
        body.append(chr(v + 63))
    return _size_prefix(n) + "".join(body)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    if s[0] == ":" or s.startswith(">>sparse6<<"):
        raise Graph6Error("sparse6 input is not supported")
    if s[0] == "&" or s.startswith(">>digraph6<<"):
        raise Graph6Error("digraph6 input is not supported")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= v <= 63 for v in data):
        raise Graph6Error(f"character outside the graph6 range in {s!r}")

    if data[0] == 63:
        if len(data) < 4:
            raise Graph6Error("truncated size header")
        if data[1] == 63:
            raise Graph6Error("graphs with more than 258047 vertices are not supported")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        if n < 63:
            raise Graph6Error(f"non-canonical long size header for n={n}")
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    if n > MAX_VERTICES:
        raise Graph6Error(f"n={n} exceeds the {MAX_VERTICES}-vertex limit")

    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    bits = []
    for v in body:
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield decode_graph6(line)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc}") from None


def read_graph6_file(path: str | Path) -> list[Graph]:
    with open(path, encoding="ascii") as fh:
        return list(read_graph6_lines(fh))


def write_graph6_file(path: str | Path, graphs: Iterable[Graph], header: bool = False) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for k, g in enumerate(graphs):
            fh.write((HEADER if header and k == 0 else "") + encode_graph6(g) + "\n")
