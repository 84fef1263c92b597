"""The two graph complexes.

Source side: graphs whose core vertices carry BV basis elements, and whose
edges and legs carry strings of Delta's (bivalent vertices).  Its odd items
are E vertices, the segments of every edge string and the segments and
Delta's of every leg string.  The differential contracts bare edges between
distinct vertices and absorbs end Delta's into the neighbouring vertex.

Target side: graphs whose core vertices carry elements ``x (x) v^m`` of the
Q-construction (the v-powers sit on half-edges) and whose edges carry strings
``u^{k_1} ... u^{k_r}``.  Its odd items are E vertices and u's.  The
differential applies the internal differential at vertices and the binary and
ternary compositions along edges and edge strings.

Differentials follow one rule: the odd items taking part in an operation are
moved to the front of the word in operation order, the operation is applied,
and an odd result is put at the front.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .. import bv, qbv
from ..linalg import GradedComplex, SparseMatrix
from .canon import DecGraph, Side, canonicalize, half_edges_at, perm_parity
from .graphs import enumerate_graphs

__all__ = [
    "FeynSide",
    "AFeynSide",
    "FEYN",
    "AFEYN",
    "WorkGraph",
    "top_weight",
    "feyn_basis",
    "afeyn_basis",
    "feyn_degree",
    "feyn_weight",
    "afeyn_degree",
    "afeyn_weight",
    "afeyn_vexp",
    "feyn_diff",
    "afeyn_diff",
    "build_complex",
    "build_feyn_bv",
    "build_afeyn_qbv",
    "default_truncation",
]


def top_weight(g: int, n: int) -> int:
    return 6 * g - 6 + 2 * n


class FeynSide(Side):
    name = "feyn_bv"

    def word(self, g: DecGraph) -> List:
        out = [("v", v) for v in range(g.nv) if _has_pair(g, v)]
        for e, edge in enumerate(g.edges):
            out += [("s", e, p) for p in range(2 * edge[4] + 1)]
        for l, leg in enumerate(g.legs, start=1):
            out += [("l", l, p) for p in range(2 * leg[2])]
        return out

    def map_item(self, item, vmap, emap, flips, g):
        if item[0] == "v":
            return ("v", vmap[item[1]])
        if item[0] == "s":
            _, e, p = item
            if flips[e]:
                p = 2 * g.edges[e][4] - p
            return ("s", emap[e], p)
        return item


class AFeynSide(Side):
    name = "afeyn_qbv"

    def flip_dec(self, dec):
        return tuple(reversed(dec))

    def flip_sign(self, dec) -> int:
        s = 1
        for k in dec:
            s *= qbv.tau_sign(k)
        return s

    def word(self, g: DecGraph) -> List:
        out = [("v", v) for v in range(g.nv) if _has_pair(g, v)]
        for e, edge in enumerate(g.edges):
            out += [("u", e, i) for i in range(len(edge[4]))]
        return out

    def map_item(self, item, vmap, emap, flips, g):
        if item[0] == "v":
            return ("v", vmap[item[1]])
        _, e, i = item
        if flips[e]:
            i = len(g.edges[e][4]) - 1 - i
        return ("u", emap[e], i)


FEYN = FeynSide()
AFEYN = AFeynSide()


def _has_pair(g: DecGraph, v: int) -> bool:
    return any(g.attr(h)[0] for h in half_edges_at(g, v))


# -- mutable graphs ----------------------------------------------------------

class WorkGraph:
    """Mutable graph with stable vertex and edge ids and an explicit word."""

    def __init__(self, g: DecGraph, word: List):
        self.verts = list(range(g.nv))
        self.edges = {e: list(edge) for e, edge in enumerate(g.edges)}
        self.legs = [list(leg) for leg in g.legs]
        self.word = list(word)

    def copy(self) -> "WorkGraph":
        w = WorkGraph.__new__(WorkGraph)
        w.verts = list(self.verts)
        w.edges = {e: list(edge) for e, edge in self.edges.items()}
        w.legs = [list(leg) for leg in self.legs]
        w.word = list(self.word)
        return w

    def star(self, v) -> List:
        out = []
        for e in sorted(self.edges):
            a, b = self.edges[e][0], self.edges[e][1]
            if a == v:
                out.append((e, 0))
            if b == v:
                out.append((e, 1))
        out += [("L", l) for l, leg in enumerate(self.legs, start=1) if leg[0] == v]
        return out

    def attr(self, h):
        if h[0] == "L":
            return self.legs[h[1] - 1][1]
        return self.edges[h[0]][2 + h[1]]

    def set_attr(self, h, a):
        if h[0] == "L":
            self.legs[h[1] - 1][1] = a
        else:
            self.edges[h[0]][2 + h[1]] = a

    def move_vertex(self, old, new):
        for edge in self.edges.values():
            if edge[0] == old:
                edge[0] = new
            if edge[1] == old:
                edge[1] = new
        for leg in self.legs:
            if leg[0] == old:
                leg[0] = new
        self.verts.remove(old)

    def front(self, items: List) -> int:
        """Move ``items`` (in this order) to the front of the word; returns the sign."""
        rest = [it for it in self.word if it not in items]
        new = list(items) + rest
        pos = {it: i for i, it in enumerate(self.word)}
        s = perm_parity([pos[it] for it in new])
        self.word = new
        return s

    def freeze(self) -> Tuple[DecGraph, List]:
        vmap = {v: i for i, v in enumerate(sorted(self.verts))}
        emap = {e: i for i, e in enumerate(sorted(self.edges))}
        edges = []
        for e in sorted(self.edges):
            u, v, au, av, dec = self.edges[e]
            u, v = vmap[u], vmap[v]
            if u > v:
                u, v, au, av = v, u, av, au
                dec = dec[::-1] if isinstance(dec, tuple) else dec
                flipped = True
            else:
                flipped = False
            edges.append((u, v, au, av, dec, flipped))
        legs = tuple((vmap[v], a, dec) for v, a, dec in self.legs)
        g = DecGraph(len(vmap), tuple(x[:5] for x in edges), legs)
        word = []
        for it in self.word:
            if it[0] == "v":
                word.append(("v", vmap[it[1]]))
            elif it[0] in ("s", "u"):
                e = emap[it[1]]
                p = it[2]
                if edges[e][5]:
                    p = (2 * edges[e][4] - p) if it[0] == "s" else (len(edges[e][4]) - 1 - p)
                word.append((it[0], e, p))
            else:
                word.append(it)
        return g, word, [x[5] for x in edges]


def _bv_at(w: WorkGraph, v) -> bv.BVBasis:
    star = w.star(v)
    pair = [h for h in star if w.attr(h)[0]]
    return bv.BVBasis(frozenset(star), frozenset(pair) if pair else None)


def _q_at(w: WorkGraph, v) -> qbv.QPoly:
    x = _bv_at(w, v)
    return qbv.make_poly(x, {h: w.attr(h)[1] for h in x.labels})


def _apply_vertex(w: WorkGraph, v, pair, exps=None):
    for h in w.star(v):
        e = exps.get(h, 0) if exps is not None else w.attr(h)[1]
        w.set_attr(h, (1 if pair and h in pair else 0, e))


def _emit(out: Dict, w: WorkGraph, coeff, side: Side):
    g, word, flipped = w.freeze()
    if side is AFEYN:
        for e, f in enumerate(flipped):
            if f:
                coeff *= side.flip_sign(g.edges[e][4])
    c, s = canonicalize(g, side, word)
    if c is None:
        return
    v = out.get(c, 0) + s * coeff
    if v:
        out[c] = v
    else:
        out.pop(c, None)


# -- source side -------------------------------------------------------------

def feyn_degree(g: DecGraph) -> int:
    return -len(FEYN.word(g))


def feyn_weight(g: DecGraph) -> int:
    w = 2 * sum(1 for v in range(g.nv) if _has_pair(g, v))
    w += 2 * sum(edge[4] for edge in g.edges) + 2 * sum(leg[2] for leg in g.legs)
    return w


def _feyn_absorb(w: WorkGraph, seg, mid, vert, h, end_first: bool):
    # contract segment ``seg`` joining vertex ``vert`` (half-edge ``h``) and the Delta ``mid``
    x = _bv_at(w, vert)
    odd = [("v", vert)] if x.pair else []
    items = [seg] + (odd + [mid] if end_first else [mid] + odd)
    s = w.front(items)
    w.word = w.word[len(items):]
    return s, bv.insert_delta(x, h)


def feyn_diff(g: DecGraph) -> Dict[DecGraph, Fraction]:
    """Differential of a canonical source basis vector (standard word)."""
    out: Dict[DecGraph, Fraction] = {}
    base = WorkGraph(g, FEYN.word(g))
    for e, (a, b, _au, _av, k) in enumerate(g.edges):
        if k == 0 and a != b:
            w = base.copy()
            xa, xb = _bv_at(w, a), _bv_at(w, b)
            items = [("s", e, 0)] + [("v", t) for t, x in ((a, xa), (b, xb)) if x.pair]
            s = w.front(items)
            w.word = w.word[len(items):]
            res = bv.compose_basis(xa, (e, 0), xb, (e, 1))
            del w.edges[e]
            w.move_vertex(b, a)
            for y, c in res.items():
                w2 = w.copy()
                _apply_vertex(w2, a, y.pair)
                if y.pair:
                    w2.word = [("v", a)] + w2.word
                _emit(out, w2, s * c, FEYN)
        if k >= 1:
            for end in (0, 1):
                w = base.copy()
                vert = (a, b)[end]
                if end == 0:
                    s, res = _feyn_absorb(w, ("s", e, 0), ("s", e, 1), vert, (e, 0), True)
                    w.word = [(it[0], it[1], it[2] - 2) if it[0] == "s" and it[1] == e else it for it in w.word]
                else:
                    s, res = _feyn_absorb(w, ("s", e, 2 * k), ("s", e, 2 * k - 1), vert, (e, 1), False)
                w.edges[e][4] = k - 1
                for y, c in res.items():
                    w2 = w.copy()
                    _apply_vertex(w2, vert, y.pair)
                    w2.word = [("v", vert)] + w2.word
                    _emit(out, w2, s * c, FEYN)
    for l, (vert, _a, k) in enumerate(g.legs, start=1):
        if k >= 1:
            w = base.copy()
            s, res = _feyn_absorb(w, ("l", l, 0), ("l", l, 1), vert, ("L", l), True)
            w.word = [(it[0], it[1], it[2] - 2) if it[0] == "l" and it[1] == l else it for it in w.word]
            w.legs[l - 1][2] = k - 1
            for y, c in res.items():
                w2 = w.copy()
                _apply_vertex(w2, vert, y.pair)
                w2.word = [("v", vert)] + w2.word
                _emit(out, w2, s * c, FEYN)
    return out


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _pair_choices(g: DecGraph, v: int) -> List:
    return [frozenset(p) for p in combinations(half_edges_at(g, v), 2)]


def _with_attrs(g: DecGraph, attrs: Dict, edecs=None, ldecs=None) -> DecGraph:
    edges = tuple(
        (u, v, attrs.get((e, 0), (0, 0)), attrs.get((e, 1), (0, 0)), edecs[e] if edecs else dec)
        for e, (u, v, _au, _av, dec) in enumerate(g.edges)
    )
    legs = tuple(
        (v, attrs.get(("L", l), (0, 0)), ldecs[l - 1] if ldecs else dec)
        for l, (v, _a, dec) in enumerate(g.legs, start=1)
    )
    return DecGraph(g.nv, edges, legs)


def _vertex_pairs(core: DecGraph, n_odd: int) -> Iterator[Dict]:
    # choose ``n_odd`` vertices carrying an E symbol, and its two indices
    for verts in combinations(range(core.nv), n_odd):
        for pairs in product(*[_pair_choices(core, v) for v in verts]):
            attrs = {}
            for p in pairs:
                for h in p:
                    attrs[h] = (1, 0)
            yield attrs


def feyn_basis(g: int, n: int, W: int, graphs=None) -> List[DecGraph]:
    if W < 0 or W % 2:
        raise ValueError("weight must be even and >= 0")
    graphs = graphs if graphs is not None else enumerate_graphs(g, n)
    found = set()
    units = W // 2
    for core in graphs:
        for n_odd in range(min(units, core.nv) + 1):
            for attrs in _vertex_pairs(core, n_odd):
                for dist in _compositions(units - n_odd, core.ne + core.n):
                    cand = _with_attrs(core, attrs, dist[: core.ne], dist[core.ne :])
                    c, _ = canonicalize(cand, FEYN)
                    if c is not None:
                        found.add(c)
    return sorted(found, key=_sort_key)


def _sort_key(g: DecGraph):
    return (g.nv, repr(g.edges), repr(g.legs))


# -- target side -------------------------------------------------------------

def afeyn_degree(g: DecGraph) -> int:
    d = 0
    for v in range(g.nv):
        hs = half_edges_at(g, v)
        d += 2 * len(hs) - 6 - 2 * sum(g.attr(h)[1] for h in hs)
        if any(g.attr(h)[0] for h in hs):
            d -= 1
    d += sum(2 * k - 1 for edge in g.edges for k in edge[4])
    return d


def afeyn_weight(g: DecGraph) -> int:
    w = 0
    for v in range(g.nv):
        hs = half_edges_at(g, v)
        w += 2 * len(hs) - 6 - 2 * sum(g.attr(h)[1] for h in hs)
        if any(g.attr(h)[0] for h in hs):
            w -= 2
    w += 2 * sum(k for edge in g.edges for k in edge[4])
    return w


def afeyn_vexp(g: DecGraph) -> int:
    total = sum(edge[2][1] + edge[3][1] for edge in g.edges)
    return total + sum(leg[1][1] for leg in g.legs)


def default_truncation(W: int) -> int:
    """Bound on the total v-power for the full target model paired with source weight ``W``."""
    return W // 2


def _strings(total: int) -> Iterator[Tuple[int, ...]]:
    # ordered tuples of positive integers summing to ``total``
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _strings(total - first):
            yield (first,) + rest


def _edge_strings(total: int, ne: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    for dist in _compositions(total, ne):
        yield from product(*[list(_strings(t)) for t in dist])


def afeyn_basis(g: int, n: int, Wp: int, vmax: Optional[int] = None, graphs=None,
                model: str = "reduced") -> List[DecGraph]:
    """Target basis of weight ``Wp``.

    ``model="full"`` allows every string of u-powers on every edge and needs
    the bound ``vmax`` on the total v-power.  ``model="reduced"`` keeps edges
    that are bare or carry a single ``u``; these span a subcomplex with the
    same cohomology, and the weight alone bounds its v-powers.
    """
    if model not in ("full", "reduced"):
        raise ValueError(f"unknown model {model!r}")
    if model == "full" and vmax is None:
        raise ValueError("the full model needs a bound on the total v-power")
    graphs = graphs if graphs is not None else enumerate_graphs(g, n)
    found = set()
    for core in graphs:
        base = sum(2 * len(half_edges_at(core, v)) - 6 for v in range(core.nv))
        hes = [(e, end) for e in range(core.ne) for end in (0, 1)] + [("L", l) for l in range(1, core.n + 1)]
        for n_odd in range(core.nv + 1):
            for attrs in _vertex_pairs(core, n_odd):
                vexp = 0
                while True:
                    twice_k = Wp - base + 2 * n_odd + 2 * vexp
                    if model == "reduced" and twice_k > 2 * core.ne:
                        break
                    if model == "full" and vexp > vmax:
                        break
                    vexp += 1
                    if twice_k < 0 or twice_k % 2:
                        continue
                    K = twice_k // 2
                    if model == "full":
                        strings = list(_edge_strings(K, core.ne))
                    else:
                        strings = [
                            tuple((1,) if e in with_u else () for e in range(core.ne))
                            for with_u in map(set, combinations(range(core.ne), K))
                        ]
                    if not strings:
                        continue
                    for exps in _compositions(vexp - 1, len(hes)):
                        at = {h: (attrs.get(h, (0, 0))[0], x) for h, x in zip(hes, exps)}
                        for ed in strings:
                            cand = _with_attrs(core, at, ed)
                            c, _ = canonicalize(cand, AFEYN)
                            if c is not None:
                                found.add(c)
    return sorted(found, key=_sort_key)


_T0, _T1, _TM = ("t", 0), ("t", 1), ("t", 2)


def _u(k, first, second) -> Tuple[int, qbv.QU]:
    return qbv.make_u(k, first, second)


def _set_q(w: WorkGraph, v, y: qbv.QPoly):
    _apply_vertex(w, v, y.x.pair, dict(y.mono))


def afeyn_diff(g: DecGraph) -> Dict[DecGraph, Fraction]:
    """Differential of a canonical target basis vector (standard word)."""
    out: Dict[DecGraph, Fraction] = {}
    base = WorkGraph(g, AFEYN.word(g))
    odd_v = lambda w, v, x: [("v", v)] if x.x.pair else []

    def finish(w, vert, res, sign):
        for y, c in res.items():
            w2 = w.copy()
            _set_q(w2, vert, y)
            if y.x.pair:
                w2.word = [("v", vert)] + w2.word
            _emit(out, w2, sign * c, AFEYN)

    # internal differential at vertices
    for v in range(g.nv):
        w = base.copy()
        x = _q_at(w, v)
        items = odd_v(w, v, x)
        s = w.front(items)
        w.word = w.word[len(items):]
        finish(w, v, qbv.diff_basis(x), s)

    for e, (a, b, _au, _av, ks) in enumerate(g.edges):
        r = len(ks)
        if r == 0 and a != b:
            w = base.copy()
            xa, xb = _q_at(w, a), _q_at(w, b)
            items = odd_v(w, a, xa) + odd_v(w, b, xb)
            s = w.front(items)
            w.word = w.word[len(items):]
            res = qbv.compose2_basis(xa, (e, 0), xb, (e, 1))
            del w.edges[e]
            w.move_vertex(b, a)
            finish(w, a, res, s)
        if r >= 1:
            # first u into the vertex at end 0
            w = base.copy()
            x = _q_at(w, a)
            items = odd_v(w, a, x) + [("u", e, 0)]
            s = w.front(items)
            w.word = [(it[0], it[1], it[2] - 1) if it[0] == "u" and it[1] == e else it for it in w.word[len(items):]]
            su, u = _u(ks[0], _T0, (e, 0))
            w.edges[e][4] = ks[1:]
            finish(w, a, qbv.compose2_basis(x, (e, 0), u, _T0), s * su)
            # last u into the vertex at end 1
            w = base.copy()
            x = _q_at(w, b)
            items = [("u", e, r - 1)] + odd_v(w, b, x)
            s = w.front(items)
            w.word = w.word[len(items):]
            su, u = _u(ks[-1], (e, 1), _T1)
            w.edges[e][4] = ks[:-1]
            finish(w, b, qbv.compose2_basis(u, _T1, x, (e, 1)), s * su)
        for i in range(r - 1):
            w = base.copy()
            items = [("u", e, i), ("u", e, i + 1)]
            s = w.front(items)
            rest = [(it[0], it[1], it[2] - 1) if it[0] == "u" and it[1] == e and it[2] > i + 1 else it
                    for it in w.word[2:]]
            s1, u1 = _u(ks[i], _T0, _TM)
            s2, u2 = _u(ks[i + 1], ("t", 3), _T1)
            for y, c in qbv.compose2_basis(u1, _TM, u2, ("t", 3)).items():
                # read the merged power from _T0 to _T1
                c *= qbv.tau_sign(y.k) if y.first != _T0 else 1
                w2 = w.copy()
                w2.edges[e][4] = ks[:i] + (y.k,) + ks[i + 2 :]
                w2.word = [("u", e, i)] + rest
                _emit(out, w2, s * s1 * s2 * c, AFEYN)
        if r == 1 and a != b:
            w = base.copy()
            xa, xb = _q_at(w, a), _q_at(w, b)
            items = odd_v(w, a, xa) + [("u", e, 0)] + odd_v(w, b, xb)
            s = w.front(items)
            w.word = w.word[len(items):]
            su, u = _u(ks[0], _T0, _T1)
            res = qbv.compose3_basis(xa, (e, 0), u, _T0, _T1, xb, (e, 1))
            del w.edges[e]
            w.move_vertex(b, a)
            finish(w, a, res, s * su)
    return out


# -- assembling complexes ----------------------------------------------------

def build_complex(label, basis: List[DecGraph], degree: Callable, diff: Callable) -> GradedComplex:
    bases: Dict[int, List[DecGraph]] = {}
    for b in basis:
        bases.setdefault(degree(b), []).append(b)
    index = {d: {b: i for i, b in enumerate(bs)} for d, bs in bases.items()}
    diffs: Dict[int, SparseMatrix] = {}
    for d, bs in bases.items():
        tgt = index.get(d + 1, {})
        cols = []
        for b in bs:
            col = {}
            for t, c in diff(b).items():
                if t not in tgt:
                    raise KeyError(f"differential leaves the basis at degree {d + 1}: {t}")
                col[tgt[t]] = c
            cols.append(col)
        if d + 1 in bases or any(cols):
            diffs[d] = SparseMatrix.from_columns(len(bases.get(d + 1, [])), cols)
    return GradedComplex(label, bases, diffs)


def build_feyn_bv(g: int, n: int, W: int, graphs=None) -> GradedComplex:
    if 2 * g + n < 3:
        raise ValueError("need 2g + n >= 3")
    if W not in (0, 2):
        raise ValueError("the truncated BV operad is exact only for weights 0 and 2")
    basis = feyn_basis(g, n, W, graphs)
    return build_complex((g, n, W, FEYN.name), basis, feyn_degree, feyn_diff)


def build_afeyn_qbv(g: int, n: int, Wp: int, vmax: Optional[int] = None, graphs=None,
                    model: str = "reduced") -> GradedComplex:
    if 2 * g + n < 3:
        raise ValueError("need 2g + n >= 3")
    top = top_weight(g, n)
    if Wp not in (top, top - 2):
        raise ValueError(f"target weight must be {top} or {top - 2}")
    if vmax is None and model == "full":
        vmax = default_truncation(top - Wp)
    basis = afeyn_basis(g, n, Wp, vmax, graphs, model)
    return build_complex((g, n, Wp, AFEYN.name), basis, afeyn_degree, afeyn_diff)
