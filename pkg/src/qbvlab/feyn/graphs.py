"""Connected, at least trivalent multigraphs with labeled legs."""

from __future__ import annotations

import hashlib
import os
import tempfile
from itertools import combinations_with_replacement, permutations, product
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .canon import PLAIN, DecGraph, canonical_key

__all__ = [
    "core_graph",
    "enumerate_graphs",
    "graph_to_text",
    "graphs_to_text",
    "graphs_from_text",
    "is_connected",
    "cache_dir",
    "cache_key",
    "cached_graphs",
]


def core_graph(nv: int, edges: Sequence[Tuple[int, int]], legs: Sequence[int]) -> DecGraph:
    """Undecorated graph; ``legs[l-1]`` is the vertex of leg ``l``."""
    es = tuple((min(u, v), max(u, v), PLAIN, PLAIN, 0) for u, v in edges)
    ls = tuple((v, PLAIN, 0) for v in legs)
    return DecGraph(nv, es, ls)


def is_connected(nv: int, edges) -> bool:
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(nv)}) == 1


def _shape_key(nv: int, edges, counts) -> tuple:
    best = None
    for s in permutations(range(nv)):
        es = tuple(sorted((min(s[u], s[v]), max(s[u], s[v])) for u, v in edges))
        cs = tuple(counts[s.index(i)] for i in range(nv))
        k = (es, cs)
        if best is None or k < best:
            best = k
    return best


def _leg_assignments(counts: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    n = sum(counts)

    def rec(i, left):
        if i == n:
            yield ()
            return
        for v, c in enumerate(left):
            if c:
                left[v] -= 1
                for tail in rec(i + 1, left):
                    yield (v,) + tail
                left[v] += 1

    yield from rec(0, list(counts))


def enumerate_graphs(g: int, n: int) -> List[DecGraph]:
    """One canonical representative per isomorphism class, deterministic order."""
    if g < 0 or n < 0 or 2 * g + n < 3:
        raise ValueError("need 2g + n >= 3")
    found: Dict[tuple, DecGraph] = {}
    for nv in range(1, 2 * g - 2 + n + 1):
        ne = nv + g - 1
        if ne < 0:
            continue
        pairs = [(u, v) for u in range(nv) for v in range(u, nv)]
        shapes = {}
        for edges in combinations_with_replacement(pairs, ne):
            if not is_connected(nv, edges):
                continue
            val = [0] * nv
            for u, v in edges:
                val[u] += 1
                val[v] += 1
            need = [max(0, 3 - x) for x in val]
            spare = n - sum(need)
            if spare < 0:
                continue
            for extra in product(range(spare + 1), repeat=nv):
                if sum(extra) != spare:
                    continue
                counts = tuple(a + b for a, b in zip(need, extra))
                shapes.setdefault(_shape_key(nv, edges, counts), (edges, counts))
        for edges, counts in shapes.values():
            for legs in _leg_assignments(counts):
                cg = core_graph(nv, edges, legs)
                k = canonical_key(cg)
                if k not in found:
                    es, ls = k
                    found[k] = DecGraph(nv, es, ls)
    return [found[k] for k in sorted(found, key=lambda k: (found[k].nv, k))]


def graph_to_text(gr: DecGraph) -> str:
    lines = [f"{gr.nv} {gr.ne} {gr.n} {gr.loop_order}"]
    lines += [f"{e[0]} {e[1]}" for e in gr.edges]
    lines += [f"leg {l} -> {leg[0]}" for l, leg in enumerate(gr.legs, start=1)]
    return "\n".join(lines)


def graphs_to_text(graphs: Sequence[DecGraph]) -> str:
    return "\n\n".join(graph_to_text(x) for x in graphs) + "\n"


def graphs_from_text(text: str) -> List[DecGraph]:
    out = []
    if not text.strip():
        return out
    for block in text.strip().split("\n\n"):
        rows = [r.strip() for r in block.strip().splitlines() if r.strip()]
        nv, ne, n, _g = map(int, rows[0].split())
        edges = [tuple(map(int, r.split())) for r in rows[1 : 1 + ne]]
        legs = [0] * n
        for r in rows[1 + ne : 1 + ne + n]:
            _, l, _, v = r.split()
            legs[int(l) - 1] = int(v)
        out.append(core_graph(nv, edges, legs))
    return out


_CACHE_FORMAT = "graphs-v1"


def cache_dir() -> Path:
    return Path(os.environ.get("QBV_CACHE", ".qbv-cache"))


def cache_key(g: int, n: int) -> str:
    return hashlib.sha256(f"{_CACHE_FORMAT}:g={g}:n={n}".encode()).hexdigest()[:24]


def cached_graphs(g: int, n: int, directory: Optional[Path] = None) -> List[DecGraph]:
    """:func:`enumerate_graphs` through an on-disk cache of the text format.

    Readers never see partial files: a writer renames a finished temporary
    file into place.
    """
    directory = Path(directory) if directory is not None else cache_dir()
    path = directory / f"{cache_key(g, n)}.txt"
    if path.exists():
        return graphs_from_text(path.read_text())
    graphs = enumerate_graphs(g, n)
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(graphs_to_text(graphs) if graphs else "")
    os.replace(tmp, path)
    return graphs
