"""Decorated graphs, their orientation words and canonical forms.

A decorated graph stores, per internal edge, the tuple
``(u, v, attr_u, attr_v, dec)`` and per leg ``(vertex, attr, dec)``.  The
half-edge attributes are ``(in_pair, exponent)``: whether the half-edge is an
index of the E symbol at its vertex, and (target side only) its v-power.
Half-edges are named ``(e, 0)``, ``(e, 1)`` and ``("L", l)``.

A basis vector is a graph together with an ordering of its odd items.  Each
side supplies its standard ordering (:meth:`Side.word`) and the action of
graph isomorphisms on items; the sign of a vector relative to the standard
ordering is the parity of the permutation between the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

__all__ = [
    "DecGraph",
    "Side",
    "canonicalize",
    "canonical_key",
    "perm_parity",
    "half_edges_at",
    "vertex_pair",
]

Attr = Tuple[int, int]
PLAIN: Attr = (0, 0)


@dataclass(frozen=True)
class DecGraph:
    nv: int
    edges: Tuple[Tuple, ...]
    legs: Tuple[Tuple, ...]

    @property
    def n(self) -> int:
        return len(self.legs)

    @property
    def ne(self) -> int:
        return len(self.edges)

    @property
    def loop_order(self) -> int:
        return self.ne - self.nv + 1

    def attr(self, h) -> Attr:
        if h[0] == "L":
            return self.legs[h[1] - 1][1]
        e, end = h
        return self.edges[e][2 + end]

    def vertex_of(self, h) -> int:
        if h[0] == "L":
            return self.legs[h[1] - 1][0]
        e, end = h
        return self.edges[e][end]

    def star(self, v: int) -> List:
        return half_edges_at(self, v)

    def valence(self, v: int) -> int:
        return len(self.star(v))


def half_edges_at(g: DecGraph, v: int) -> List:
    out = []
    for e, (a, b, *_rest) in enumerate(g.edges):
        if a == v:
            out.append((e, 0))
        if b == v:
            out.append((e, 1))
    for l, (w, *_rest) in enumerate(g.legs, start=1):
        if w == v:
            out.append(("L", l))
    return out


def vertex_pair(g: DecGraph, v: int) -> Optional[frozenset]:
    """Half-edges carrying the E indices at ``v`` (``None`` for a ``c`` vertex)."""
    hs = [h for h in half_edges_at(g, v) if g.attr(h)[0]]
    if not hs:
        return None
    if len(hs) != 2:
        raise ValueError(f"vertex {v} marks {len(hs)} half-edges")
    return frozenset(hs)


class Side:
    """Side-specific conventions for edge decorations and odd items."""

    name = "plain"

    def flip_dec(self, dec):
        return dec

    def flip_sign(self, dec) -> int:
        return 1

    def word(self, g: DecGraph) -> List:
        return []

    def map_item(self, item, vmap, emap, flips, g: DecGraph):
        return item


def perm_parity(perm: Sequence[int]) -> int:
    """+1 for an even permutation of ``range(len(perm))``, -1 otherwise."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _descriptors(g: DecGraph, sigma, side: Side):
    descs = []
    for e, (u, v, au, av, dec) in enumerate(g.edges):
        d0 = (sigma[u], sigma[v], au, av, dec)
        d1 = (sigma[v], sigma[u], av, au, side.flip_dec(dec))
        if d1 < d0:
            descs.append((d1, e, True))
        else:
            descs.append((d0, e, False))
    descs.sort()
    legs = tuple((sigma[w], a, dec) for (w, a, dec) in g.legs)
    return descs, legs


def _key(descs, legs):
    return (tuple(d for d, _, _ in descs), legs)


def canonical_key(g: DecGraph, side: Side | None = None):
    side = side or Side()
    best = None
    for sigma in permutations(range(g.nv)):
        descs, legs = _descriptors(g, sigma, side)
        k = _key(descs, legs)
        if best is None or k < best:
            best = k
    return best


def _sign(word: List, g: DecGraph, sigma, emap, flips, target: DecGraph, side: Side) -> int:
    std = side.word(target)
    if len(std) != len(word):
        raise ValueError("orientation word does not match the graph")
    pos = {it: i for i, it in enumerate(std)}
    perm = [pos[side.map_item(it, sigma, emap, flips, g)] for it in word]
    s = perm_parity(perm)
    for e, f in enumerate(flips):
        if f:
            s *= side.flip_sign(g.edges[e][4])
    return s


def canonicalize(g: DecGraph, side: Side, word: List | None = None,
                 check_automorphisms: bool = True) -> Tuple[Optional[DecGraph], int]:
    """Canonical representative of ``(g, word)`` and the sign relating them.

    ``word`` defaults to the standard word of ``g``.  Returns ``(None, 0)``
    when an automorphism of the decorated graph reverses the orientation.
    """
    if word is None:
        word = side.word(g)
    best, best_sigmas = None, []
    for sigma in permutations(range(g.nv)):
        descs, legs = _descriptors(g, sigma, side)
        k = _key(descs, legs)
        if best is None or k < best:
            best, best_sigmas = k, [(sigma, descs)]
        elif k == best:
            best_sigmas.append((sigma, descs))
    edges, legs = best
    canon = DecGraph(g.nv, edges, legs)
    signs = set()
    for sigma, descs in best_sigmas:
        emap = [0] * g.ne
        flips = [False] * g.ne
        for i, (_, e, f) in enumerate(descs):
            emap[e] = i
            flips[e] = f
        signs.add(_sign(word, g, sigma, emap, flips, canon, side))
        if not check_automorphisms:
            break
    if len(signs) > 1:
        return None, 0
    sign = signs.pop()
    if check_automorphisms and not _automorphisms_even(canon, side):
        return None, 0
    return canon, sign


def _automorphisms_even(c: DecGraph, side: Side) -> bool:
    # generators fixing the vertices: swapping equal edges, flipping symmetric loops
    ident = tuple(range(c.nv))
    word = side.word(c)
    base = list(range(c.ne))
    for i in range(c.ne - 1):
        if c.edges[i] == c.edges[i + 1]:
            emap = list(base)
            emap[i], emap[i + 1] = i + 1, i
            if _sign(word, c, ident, emap, [False] * c.ne, c, side) < 0:
                return False
    for i, (u, v, au, av, dec) in enumerate(c.edges):
        if u == v and au == av and side.flip_dec(dec) == dec:
            flips = [False] * c.ne
            flips[i] = True
            if _sign(word, c, ident, base, flips, c, side) < 0:
                return False
    return True
