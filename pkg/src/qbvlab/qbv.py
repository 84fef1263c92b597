"""The Q-construction over the truncated BV operad.

In arity ``r >= 3`` a basis element is ``x (x) v^m`` with ``x`` a BV basis
element and ``m`` a monomial in the variables ``v_a`` (one per label); in
arity 2 it is a power ``u^k`` with an ordered pair of slots.  Coefficient
dictionaries ``{basis: coeff}`` are the working currency; :class:`QElement`
wraps them for callers who want arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Tuple

from . import bv
from .bv import BVBasis, LabelError
from .labels import label_key, sort_labels

__all__ = [
    "QPoly",
    "QU",
    "QElement",
    "make_u",
    "set_unit_tau",
    "tau_sign",
    "make_poly",
    "q_degree",
    "q_weight",
    "q_labels",
    "q_diff",
    "q_relabel",
    "q_compose2",
    "q_compose3",
    "diff_basis",
    "compose2_basis",
    "compose3_basis",
    "relabel_basis",
    "HomotopyReport",
    "verify_homotopy_relations",
    "element_orbit_reps",
]

Mono = Tuple[Tuple[Hashable, int], ...]


def mono(exps: Mapping) -> Mono:
    return tuple(sorted(((k, e) for k, e in exps.items() if e), key=lambda t: label_key(t[0])))


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


@dataclass(frozen=True)
class QPoly:
    x: BVBasis
    mono: Mono = ()

    def __post_init__(self):
        if self.x.arity < 3:
            raise ValueError("polynomial elements live in arity >= 3")
        for k, e in self.mono:
            if k not in self.x.labels or e <= 0:
                raise ValueError(f"bad monomial entry {k!r}^{e}")

    @property
    def labels(self):
        return self.x.labels

    def exponent(self, label) -> int:
        for k, e in self.mono:
            if k == label:
                return e
        return 0

    def render(self) -> str:
        if not self.mono:
            return f"{self.x.render()}*1"
        return self.x.render() + "*" + "*".join(f"v{k}" + (f"^{e}" if e > 1 else "") for k, e in self.mono)

    __repr__ = render


@dataclass(frozen=True)
class QU:
    """``u^k`` on the ordered slot pair ``(first, second)``; stored with ``first < second``."""

    k: int
    first: Hashable
    second: Hashable

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("u-power must be >= 0")
        if self.first == self.second:
            raise ValueError("u needs two distinct slots")

    @property
    def labels(self):
        return frozenset((self.first, self.second))

    def render(self) -> str:
        return f"u^{self.k}({self.first}->{self.second})"

    __repr__ = render


_UNIT_TAU = -1


def set_unit_tau(sign: int) -> int:
    """Choose how the transposition acts on ``u^0``; returns the previous choice.

    The default ``-1`` continues ``tau u^k = (-1)^(k+1) u^k`` down to ``k = 0``.
    With ``+1`` the unit is fixed, and relations involving ``u^0`` then fail.
    """
    global _UNIT_TAU
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    old, _UNIT_TAU = _UNIT_TAU, sign
    _clear_caches()
    return old


def tau_sign(k: int) -> int:
    """Sign of the transposition on ``u^k``."""
    if k == 0:
        return _UNIT_TAU
    return 1 if k % 2 else -1


def make_u(k: int, first, second) -> Tuple[int, QU]:
    """Canonical form of ``u^k`` read from ``first`` to ``second``, with the sign."""
    if label_key(first) <= label_key(second):
        return 1, QU(k, first, second)
    return tau_sign(k), QU(k, second, first)


def make_poly(x: BVBasis, exps: Mapping | None = None) -> QPoly:
    return QPoly(x, mono(exps or {}))


def q_labels(e) -> frozenset:
    return e.labels


def q_degree(e) -> int:
    if isinstance(e, QU):
        return 2 * e.k - 1
    r = e.x.arity
    return bv.bv_degree(e.x) + 2 * r - 6 - 2 * mono_degree(e.mono)


def q_weight(e) -> int:
    if isinstance(e, QU):
        return 2 * e.k
    r = e.x.arity
    return 2 * r - 6 - bv.bv_weight(e.x) - 2 * mono_degree(e.mono)


def _parity(e) -> int:
    # parity of the Q degree; shifts are even, so this is the BV parity on polys
    if isinstance(e, QU):
        return 1
    return 1 if e.x.pair else 0


def _acc(out: dict, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


# -- differential -----------------------------------------------------------

def _diff_basis(e) -> Dict:
    if isinstance(e, QU):
        return {}
    out: Dict = {}
    sign = -1 if e.x.pair else 1
    exps = dict(e.mono)
    for j, ej in e.mono:
        new = dict(exps)
        new[j] = ej - 1
        m = mono(new)
        for y, c in bv.insert_delta(e.x, j).items():
            _acc(out, QPoly(y, m), sign * ej * c)
    return out


# -- relabeling -------------------------------------------------------------

def relabel_basis(e, mapping: Mapping) -> Tuple[int, object]:
    if isinstance(e, QU):
        return make_u(e.k, mapping.get(e.first, e.first), mapping.get(e.second, e.second))
    x = bv.relabel_basis(e.x, mapping)
    return 1, QPoly(x, mono({mapping.get(k, k): v for k, v in e.mono}))


# -- binary composition ------------------------------------------------------

def _oriented(u: QU, first) -> Tuple[int, int, Hashable]:
    """Sign, power and far slot of ``u`` read with ``first`` as its first slot."""
    if u.first == first:
        return 1, u.k, u.second
    if u.second == first:
        return tau_sign(u.k), u.k, u.first
    raise LabelError(f"slot {first!r} not in {u.render()}")


def _derive(exps: dict, a, k: int) -> Optional[int]:
    e = exps.get(a, 0)
    if e < k:
        return None
    exps[a] = e - k
    return factorial(e) // factorial(e - k)


def _poly_at_u(p: QPoly, a, u: QU, b) -> Dict:
    # mu_{a,b}(x (x) p, u) with b read as the first slot of u
    s, k, far = _oriented(u, b)
    if a not in p.labels:
        raise LabelError(f"slot {a!r} not in {p.render()}")
    if far in p.labels and far != a:
        raise LabelError(f"label clash {far!r}")
    exps = dict(p.mono)
    c = _derive(exps, a, k)
    if c is None:
        return {}
    mp = {a: far}
    exps = {mp.get(l, l): v for l, v in exps.items()}
    x = bv.relabel_basis(p.x, mp)
    sign = -s if p.x.pair else s
    return {QPoly(x, mono(exps)): sign * c}


def _compose2_basis(X, a, Y, b) -> Dict:
    if isinstance(X, QU) and isinstance(Y, QU):
        s1, k1, o1 = _oriented(X, a)
        s2, k2, o2 = _oriented(Y, b)
        # X read as o1 -> a: flip sign relative to a-first reading
        s1 *= tau_sign(k1)
        if o1 == o2:
            raise LabelError(f"label clash {o1!r}")
        s3, u = make_u(k1 + k2, o1, o2)
        return {u: -s1 * s2 * s3}
    if isinstance(Y, QU):
        return _poly_at_u(X, a, Y, b)
    if isinstance(X, QU):
        # graded symmetry: mu(U, P) = (-1)^{|U||P|} mu(P, U)
        out = _poly_at_u(Y, b, X, a)
        if Y.x.pair:
            out = {k: -v for k, v in out.items()}
        return out
    if X.exponent(a) or Y.exponent(b):
        bv._check_slots(X.labels, a, Y.labels, b)
        return {}
    out: Dict = {}
    m = X.mono + Y.mono
    sign = -1 if X.x.pair else 1
    for t, c in bv.insert_delta(X.x, a).items():
        for z, c2 in bv.compose_basis(t, a, Y.x, b).items():
            _acc(out, QPoly(z, mono(dict(m))), sign * c * c2)
    if not out:
        bv._check_slots(X.labels, a, Y.labels, b)
    return out


# -- ternary composition -----------------------------------------------------

def _compose3_basis(X, a, Y, b1, b2, Z, c) -> Dict:
    if not isinstance(Y, QU) or isinstance(X, QU) or isinstance(Z, QU):
        return {}
    if Y.labels != frozenset((b1, b2)):
        raise LabelError(f"slots {b1!r},{b2!r} do not match {Y.render()}")
    s, n, _ = _oriented(Y, b1)
    if n == 0:
        return {}
    alpha, gamma = X.exponent(a), Z.exponent(c)
    if alpha + gamma != n - 1:
        bv._check_slots(X.labels, a, Z.labels, c)
        return {}
    sign = s * (-1) ** (_parity(X) + gamma)
    coeff = sign * factorial(alpha) * factorial(gamma)
    exps = {k: v for k, v in X.mono if k != a}
    exps.update({k: v for k, v in Z.mono if k != c})
    m = mono(exps)
    return {QPoly(z, m): coeff * cz for z, cz in bv.compose_basis(X.x, a, Z.x, c).items()}


# -- memoized entry points ---------------------------------------------------

@lru_cache(maxsize=1 << 18)
def _diff_items(e) -> tuple:
    return tuple(_diff_basis(e).items())


@lru_cache(maxsize=1 << 20)
def _compose2_items(X, a, Y, b) -> tuple:
    return tuple(_compose2_basis(X, a, Y, b).items())


@lru_cache(maxsize=1 << 20)
def _compose3_items(X, a, Y, b1, b2, Z, c) -> tuple:
    return tuple(_compose3_basis(X, a, Y, b1, b2, Z, c).items())


def diff_basis(e) -> Dict:
    """Internal differential of a basis element."""
    return dict(_diff_items(e))


def compose2_basis(X, a, Y, b) -> Dict:
    """``mu_{a,b}(X, Y)`` for basis elements (degree +1)."""
    return dict(_compose2_items(X, a, Y, b))


def compose3_basis(X, a, Y, b1, b2, Z, c) -> Dict:
    """``mu_{a,b1,b2,c}(X, Y, Z)``: nonzero only for binary ``Y`` between two polys."""
    return dict(_compose3_items(X, a, Y, b1, b2, Z, c))


def _clear_caches() -> None:
    for f in (_diff_items, _compose2_items, _compose3_items):
        f.cache_clear()


# -- linear combinations -----------------------------------------------------

class QElement:
    """Finite linear combination of Q basis elements on one label set."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms: Dict = {}
        labels = None
        for k, v in (terms or {}).items():
            if not v:
                continue
            if labels is None:
                labels = k.labels
            elif k.labels != labels:
                raise LabelError("QElement terms must share one label set")
            self.terms[k] = Fraction(v)

    @classmethod
    def basis(cls, e, coeff=1) -> "QElement":
        return cls({e: coeff})

    @property
    def labels(self):
        for k in self.terms:
            return k.labels
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "QElement") -> "QElement":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return QElement(acc)

    def __sub__(self, other: "QElement") -> "QElement":
        return self + other * -1

    def __mul__(self, c) -> "QElement":
        return QElement({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "QElement":
        return self * -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, QElement):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: kv[0].render())
        return " + ".join(f"{v}*{k.render()}" for k, v in items)


def _bilinear(f, xs: Mapping, ys: Mapping) -> Dict:
    out: Dict = {}
    for kx, vx in xs.items():
        for ky, vy in ys.items():
            for k, c in f(kx, ky).items():
                _acc(out, k, vx * vy * c)
    return out


def q_diff(e: QElement) -> QElement:
    out: Dict = {}
    for k, v in e.terms.items():
        for t, c in diff_basis(k).items():
            _acc(out, t, v * c)
    return QElement(out)


def q_relabel(e: QElement, mapping: Mapping) -> QElement:
    labels = e.labels
    if labels is not None:
        if any(t not in mapping for t in labels) or len({mapping[t] for t in labels}) != len(labels):
            raise LabelError("relabeling must be a bijection on the label set")
    out: Dict = {}
    for k, v in e.terms.items():
        s, t = relabel_basis(k, mapping)
        _acc(out, t, s * v)
    return QElement(out)


def q_compose2(x: QElement, a, y: QElement, b) -> QElement:
    return QElement(_bilinear(lambda p, q: compose2_basis(p, a, q, b), x.terms, y.terms))


def q_compose3(x: QElement, a, y: QElement, b1, b2, z: QElement, c) -> QElement:
    out: Dict = {}
    for kx, vx in x.terms.items():
        for ky, vy in y.terms.items():
            for kz, vz in z.terms.items():
                for k, cc in compose3_basis(kx, a, ky, b1, b2, kz, c).items():
                    _acc(out, k, vx * vy * vz * cc)
    return QElement(out)


# -- relation sweep ----------------------------------------------------------

def _bv_orbit_reps(slots: List, spect: List) -> Iterator[Tuple[BVBasis, List[List]]]:
    """BV basis elements up to permutations of ``spect``, each with the blocks of
    spectators that remain interchangeable."""
    labels = list(slots) + list(spect)
    yield bv.C(labels), [list(spect)]
    for i in range(len(slots)):
        for j in range(i + 1, len(slots)):
            yield bv.E(labels, slots[i], slots[j]), [list(spect)]
    if spect:
        for s in slots:
            yield bv.E(labels, s, spect[0]), [[spect[0]], list(spect[1:])]
    if len(spect) >= 2:
        yield bv.E(labels, spect[0], spect[1]), [list(spect[:2]), list(spect[2:])]


def _nonincreasing(n: int, total: int, cap: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(total, cap), -1, -1):
        for rest in _nonincreasing(n - 1, total - first, first):
            yield (first,) + rest


def _monomials(free: List, blocks: List[List], max_deg: int, orbits: bool) -> Iterator[Dict]:
    def rec(groups, budget):
        if not groups:
            yield {}
            return
        kind, labs = groups[0]
        if kind == "free" or not orbits:
            for exps in product(range(budget + 1), repeat=len(labs)):
                s = sum(exps)
                if s <= budget:
                    for tail in rec(groups[1:], budget - s):
                        d = dict(zip(labs, exps))
                        d.update(tail)
                        yield d
        else:
            for tot in range(budget + 1):
                for exps in _nonincreasing(len(labs), tot, tot):
                    if sum(exps) != tot:
                        continue
                    for tail in rec(groups[1:], budget - tot):
                        d = dict(zip(labs, exps))
                        d.update(tail)
                        yield d

    groups = [("free", list(free))] + [("block", b) for b in blocks if b]
    yield from rec(groups, max_deg)


def element_orbit_reps(slots: List, spect: List, max_vdeg: int, max_upow: int, orbits: bool = True):
    """Basis elements carrying the composition slots ``slots`` and spectators ``spect``.

    With ``orbits`` only one element per orbit of permutations of ``spect`` is
    produced; all operations are equivariant, so relations need only be checked
    on these representatives.
    """
    r = len(slots) + len(spect)
    if r == 2:
        a, b = list(slots) + list(spect)
        for k in range(max_upow + 1):
            yield make_u(k, a, b)[1]
        return
    if orbits:
        reps = _bv_orbit_reps(slots, spect)
    else:
        reps = ((x, [list(spect)]) for x in bv.bv_basis(list(slots) + list(spect)))
    for x, blocks in reps:
        free = list(slots) if orbits else list(slots) + list(spect)
        for exps in _monomials(free, blocks if orbits else [], max_vdeg, orbits):
            yield make_poly(x, exps)


@dataclass
class HomotopyReport:
    checked: Dict[int, int]
    failures: Dict[int, List]

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def lines(self) -> List[str]:
        out = []
        for ar in sorted(self.checked):
            n_fail = len(self.failures.get(ar, []))
            status = "PASS" if not n_fail else f"FAIL ({n_fail})"
            out.append(f"arity {ar}: {self.checked[ar]} tuples  {status}")
        return out


def _add_into(acc: Dict, terms: Mapping, c=1):
    for k, v in terms.items():
        _acc(acc, k, c * v)


def _lin_diff(terms: Mapping) -> Dict:
    out: Dict = {}
    for k, v in terms.items():
        _add_into(out, diff_basis(k), v)
    return out


def _lin2(xs: Mapping, a, ys: Mapping, b) -> Dict:
    return _bilinear(lambda p, q: compose2_basis(p, a, q, b), xs, ys)


def _lin3(xs: Mapping, a, ys: Mapping, b1, b2, zs: Mapping, c) -> Dict:
    out: Dict = {}
    for kx, vx in xs.items():
        for ky, vy in ys.items():
            for kz, vz in zs.items():
                _add_into(out, compose3_basis(kx, a, ky, b1, b2, kz, c), vx * vy * vz)
    return out


def _sgn(*elems) -> int:
    return -1 if sum(_parity(e) for e in elems) % 2 else 1


def relation1(X) -> Dict:
    return _lin_diff(diff_basis(X))


def relation2(X, Y, a, b) -> Dict:
    out = _lin_diff(compose2_basis(X, a, Y, b))
    _add_into(out, _lin2(diff_basis(X), a, {Y: 1}, b))
    _add_into(out, _lin2({X: 1}, a, diff_basis(Y), b), _sgn(X))
    return out


def relation3(X, Y, Z, a, b1, b2, c) -> Dict:
    x, y, z = {X: 1}, {Y: 1}, {Z: 1}
    out: Dict = {}
    _add_into(out, _lin2(x, a, compose2_basis(Y, b2, Z, c), b1), _sgn(X))
    _add_into(out, _lin2(compose2_basis(X, a, Y, b1), b2, z, c))
    _add_into(out, _lin_diff(compose3_basis(X, a, Y, b1, b2, Z, c)))
    _add_into(out, _lin3(diff_basis(X), a, y, b1, b2, z, c))
    _add_into(out, _lin3(x, a, diff_basis(Y), b1, b2, z, c), _sgn(X))
    _add_into(out, _lin3(x, a, y, b1, b2, diff_basis(Z), c), _sgn(X, Y))
    return out


def relation4(X, Y, Z, W, a, b1, b2, c1, c2, d) -> Dict:
    x, y, z, w = {X: 1}, {Y: 1}, {Z: 1}, {W: 1}
    out: Dict = {}
    _add_into(out, _lin2(x, a, compose3_basis(Y, b2, Z, c1, c2, W, d), b1), _sgn(X))
    _add_into(out, _lin3(compose2_basis(X, a, Y, b1), b2, z, c1, c2, w, d))
    _add_into(out, _lin3(x, a, compose2_basis(Y, b2, Z, c1), b1, c2, w, d), _sgn(X))
    _add_into(out, _lin3(x, a, y, b1, b2, compose2_basis(Z, c2, W, d), c1), _sgn(X, Y))
    _add_into(out, _lin2(compose3_basis(X, a, Y, b1, b2, Z, c1), c2, w, d))
    return out


def relation5(X, Y, Z, V, W, a, b1, b2, c1, c2, d1, d2, e) -> Dict:
    x, y, v, w = {X: 1}, {Y: 1}, {V: 1}, {W: 1}
    out: Dict = {}
    _add_into(out, _lin3(x, a, y, b1, b2, compose3_basis(Z, c2, V, d1, d2, W, e), c1), _sgn(X, Y))
    _add_into(out, _lin3(x, a, compose3_basis(Y, b2, Z, c1, c2, V, d1), b1, d2, w, e), _sgn(X))
    _add_into(out, _lin3(compose3_basis(X, a, Y, b1, b2, Z, c1), c2, v, d1, d2, w, e))
    return out


_SLOTS = {
    1: [["a"]],
    2: [["a"], ["b"]],
    3: [["a"], ["b1", "b2"], ["c"]],
    4: [["a"], ["b1", "b2"], ["c1", "c2"], ["d"]],
    5: [["a"], ["b1", "b2"], ["c1", "c2"], ["d1", "d2"], ["e"]],
}

_RELATIONS = {1: relation1, 2: relation2, 3: relation3, 4: relation4, 5: relation5}


def _spectator_splits(n_elems: int, slot_counts: List[int], max_legs: int) -> Iterator[Tuple[int, ...]]:
    # arity of each element >= 2; total spectators (= output legs) <= max_legs
    mins = [max(0, 2 - s) for s in slot_counts]

    def rec(i, left):
        if i == n_elems:
            yield ()
            return
        for m in range(mins[i], left + 1):
            for tail in rec(i + 1, left - m):
                yield (m,) + tail

    yield from rec(0, max_legs)


def _slot_names(arity: int, pattern: int) -> List[List]:
    slots = _SLOTS[arity]
    if pattern == 0:
        return slots
    flat = [s for grp in slots for s in grp]
    # reversed label order exercises the orientation code paths
    rename = {s: f"z{len(flat) - i:02d}" for i, s in enumerate(flat)}
    return [[rename[s] for s in grp] for grp in slots]


def _admissible(arity: int, binary: Tuple[bool, ...]) -> bool:
    """False when every term of the relation vanishes by the definition of the
    ternary operation (its middle argument binary, its outer ones not)."""
    if arity == 4:
        return binary[1] or binary[2]
    if arity == 5:
        return binary == (False, True, False, True, False)
    return True


def _choices_by_degree(elems) -> List[List]:
    out: List[List] = []
    for e in elems:
        d = 0 if isinstance(e, QU) else mono_degree(e.mono)
        while len(out) <= d:
            out.append([])
        out[d].append(e)
    return out


def _bounded_product(choices: List[List[List]], budget: int):
    # tuples whose polynomial degrees add up to at most ``budget``
    if not choices:
        yield ()
        return
    for d, group in enumerate(choices[0]):
        if d > budget:
            break
        for tail in _bounded_product(choices[1:], budget - d):
            for e in group:
                yield (e,) + tail


def iter_relation_tuples(arity: int, max_legs: int, max_vdeg: int, max_upow: int,
                         orbits: bool = True, patterns=(0, 1), prune: bool = True):
    """Argument tuples for the relation of the given arity.

    ``max_vdeg`` bounds the total polynomial degree of the tuple.  With
    ``prune`` the relations of arity 4 and 5, which contain no differential,
    are checked with polynomials supported on composition slots only (no
    operation there touches the variables of the other labels) and on the
    arity patterns where some term can be nonzero.
    """
    slot_counts = [len(s) for s in _SLOTS[arity]]
    factor = prune and arity >= 4
    for pattern in patterns:
        slots = _slot_names(arity, pattern)
        flat = [s for grp in slots for s in grp]
        for split in _spectator_splits(arity, slot_counts, max_legs):
            binary = tuple(s + m == 2 for s, m in zip(slot_counts, split))
            if prune and not _admissible(arity, binary):
                continue
            spects, nxt = [], 1
            for m in split:
                spects.append(list(range(nxt, nxt + m)))
                nxt += m
            choices = []
            for i in range(arity):
                elems = element_orbit_reps(slots[i], spects[i], max_vdeg, max_upow, orbits)
                if factor:
                    own = set(slots[i])
                    elems = [e for e in elems if isinstance(e, QU) or all(k in own for k, _ in e.mono)]
                choices.append(_choices_by_degree(elems))
            for elems in _bounded_product(choices, max_vdeg):
                yield elems, flat


def verify_homotopy_relations(max_arity: int = 8, max_vdeg: int = 3, max_upow: int = 4,
                              arities: Iterable[int] = (1, 2, 3, 4, 5), orbits: bool = True,
                              prune: bool = True, max_failures: int = 5) -> HomotopyReport:
    """Check the homotopy-operad relations on every tuple of basis elements.

    ``max_arity`` bounds the number of external legs of each tuple, ``max_vdeg``
    the total polynomial degree of the tuple and ``max_upow`` the u-power of
    each binary argument.  The report keeps the first few
    counterexamples per relation arity.
    """
    checked: Dict[int, int] = {}
    failures: Dict[int, List] = {}
    for ar in arities:
        rel = _RELATIONS[ar]
        n, bad = 0, []
        for elems, flat in iter_relation_tuples(ar, max_arity, max_vdeg, max_upow, orbits, prune=prune):
            n += 1
            res = rel(*elems, *flat) if ar > 1 else rel(*elems)
            if res and len(bad) < max_failures:
                bad.append((elems, {k: Fraction(v) for k, v in res.items()}))
        checked[ar] = n
        failures[ar] = bad
    return HomotopyReport(checked, failures)
