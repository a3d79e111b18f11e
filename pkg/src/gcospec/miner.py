"""Brute-force search over small-graph catalogs.

Catalogs come from an internal exhaustive generator (n <= 7) or from graph6
files. On top of them: cospectral / generalized / rooted mate discovery and
the definitional deck-equality reconstruction oracle.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from .control import automorphisms
from .cospec import (
    charpoly,
    is_cospectral,
    is_generalized_cospectral,
    is_rooted_generalized_cospectral,
    rooted_signature,
)
from .graph import Graph, RootedGraph, canonical_form, complement, deck, overgraph
from .graph6 import decode_graph6, encode_graph6, read_graph6_file

MAX_INTERNAL_N = 7
LEVELS = ("cospectral", "generalized", "rooted")


class RecordError(ValueError):
    pass


@lru_cache(maxsize=None)
def enumerate_graphs(n: int) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    Built by adding a vertex with every possible neighborhood to each class on
    ``n - 1`` vertices; every graph is an overgraph of any of its cards.
    """
    if not 1 <= n <= MAX_INTERNAL_N:
        raise ValueError(f"internal enumeration supports 1 <= n <= {MAX_INTERNAL_N}")
    if n == 1:
        return (Graph(1, (0,)),)
    seen = set()
    for g in enumerate_graphs(n - 1):
        for mask in range(1 << (n - 1)):
            b = [(mask >> i) & 1 for i in range(n - 1)]
            seen.add(canonical_form(overgraph(g, b)))
    return tuple(sorted(seen))


@dataclass(frozen=True)
class CatalogSource:
    n: int | None = None
    path: str | None = None

    def __post_init__(self):
        if self.n is None and self.path is None:
            raise ValueError("catalog needs an order n or a graph6 path")

    def graphs(self) -> tuple[Graph, ...]:
        if self.path is None:
            return enumerate_graphs(self.n)
        return _file_catalog(self.path, self.n)


@lru_cache(maxsize=None)
def _file_catalog(path: str, n: int | None) -> tuple[Graph, ...]:
    reps = {canonical_form(g) for g in read_graph6_file(path) if n is None or g.n == n}
    return tuple(sorted(reps))


@dataclass(frozen=True)
class MateRecord:
    g6_a: str
    g6_b: str
    level: str
    charpoly: tuple[int, ...]
    root_a: int | None = None
    root_b: int | None = None

    def verify(self) -> bool:
        g, h = decode_graph6(self.g6_a), decode_graph6(self.g6_b)
        if charpoly(g).coeffs != tuple(self.charpoly):
            return False
        if self.level == "cospectral":
            return is_cospectral(g, h)
        if self.level == "generalized":
            return is_generalized_cospectral(g, h)
        if self.level == "rooted":
            if self.root_a is None or self.root_b is None:
                return False
            rg, rh = RootedGraph(g, self.root_a), RootedGraph(h, self.root_b)
            return bool(is_rooted_generalized_cospectral(rg, rh).rooted_generalized)
        return False

    def to_json(self) -> str:
        d = asdict(self)
        d["charpoly"] = list(self.charpoly)
        if self.level != "rooted":
            del d["root_a"], d["root_b"]
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> MateRecord:
        d = json.loads(line)
        return cls(d["g6_a"], d["g6_b"], d["level"], tuple(d["charpoly"]), d.get("root_a"), d.get("root_b"))


def _sort_key(r: MateRecord):
    return (r.g6_a, r.g6_b, r.root_a if r.root_a is not None else -1, r.root_b if r.root_b is not None else -1)


def root_orbit_representatives(g: Graph) -> list[int]:
    orbit_of = {}
    for p in automorphisms(g):
        for v in range(g.n):
            orbit_of.setdefault(v, set()).add(p[v])
    reps, covered = [], set()
    for v in range(g.n):
        if v not in covered:
            reps.append(v)
            covered |= orbit_of[v]
    return reps


def find_mates(source: CatalogSource, level: str) -> list[MateRecord]:
    """All nonisomorphic pairs in the catalog that are mates at ``level``.

    For the rooted level, the objects are rooted graphs up to isomorphism,
    so two roots of the same graph in different automorphism orbits count.
    """
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    graphs = source.graphs()
    buckets: dict[tuple, list] = defaultdict(list)
    if level == "rooted":
        for g in graphs:
            if g.n < 1:
                continue
            for r in root_orbit_representatives(g):
                buckets[rooted_signature(RootedGraph(g, r))].append((g, r))
    else:
        for g in graphs:
            key = (charpoly(g),) if level == "cospectral" else (charpoly(g), charpoly(complement(g)))
            buckets[key].append((g, None))

    records = []
    for members in buckets.values():
        for (g, r), (h, s) in combinations(members, 2):
            a, b = encode_graph6(g), encode_graph6(h)
            if (a, r if r is not None else -1) > (b, s if s is not None else -1):
                a, b, r, s = b, a, s, r
            records.append(MateRecord(a, b, level, charpoly(g).coeffs, r, s))
    return sorted(records, key=_sort_key)


def rooted_cospectral_pairs(graphs: Iterable[Graph]) -> Iterator[tuple[RootedGraph, RootedGraph]]:
    """Every ordered pair of labeled rooted graphs sharing the four-polynomial signature.

    Includes self-pairs and pairs of roots exchanged by an automorphism.
    """
    buckets: dict[tuple, list[RootedGraph]] = defaultdict(list)
    for g in graphs:
        for r in range(g.n):
            rg = RootedGraph(g, r)
            buckets[rooted_signature(rg)].append(rg)
    for key in sorted(buckets, key=lambda k: tuple(p.coeffs for p in k)):
        members = buckets[key]
        for rg in members:
            for rh in members:
                yield rg, rh


def deck_key(g: Graph) -> tuple:
    return tuple(sorted(deck(g).items()))


@lru_cache(maxsize=None)
def _deck_index(source: CatalogSource) -> dict[tuple, tuple[Graph, ...]]:
    index: dict[tuple, list[Graph]] = defaultdict(list)
    for h in source.graphs():
        index[deck_key(h)].append(h)
    return {k: tuple(v) for k, v in index.items()}


def reconstruction_oracle(g: Graph, source: CatalogSource | None = None) -> list[Graph]:
    """All catalog graphs with the same deck as ``g`` (``g``'s class included)."""
    if source is None:
        source = CatalogSource(n=g.n)
    if source.n is not None and source.n != g.n:
        raise ValueError(f"catalog order {source.n} does not match n={g.n}")
    found = list(_deck_index(source).get(deck_key(g), ()))
    if any(h.n != g.n for h in found):
        raise ValueError("catalog mixes vertex counts")
    cf = canonical_form(g)
    if cf not in found:
        found.append(cf)
    return found


def persist_records(records: Iterable[MateRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")


def load_records(path: str | Path) -> list[MateRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = MateRecord.from_json(line)
                ok = rec.verify()
            except (ValueError, KeyError, TypeError) as exc:
                raise RecordError(f"line {lineno}: unreadable record ({exc})") from None
            if not ok:
                raise RecordError(f"line {lineno}: record fails re-verification at level {rec.level!r}")
            out.append(rec)
    return out
