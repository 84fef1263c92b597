"""The weight <= 2 quotient of the cyclic BV operad.

Basis on a label set ``A``: the commutative generator ``c_A`` (weight 0,
degree 0; for ``|A| = 2`` this is the unit) and the symbols ``E_ij = E_ji``
(weight 2, degree -1; for ``|A| = 2`` this is the BV operator Delta).
Everything of weight >= 4 is set to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, Mapping, Optional, Tuple

from .labels import label_key, sort_labels

__all__ = [
    "BVBasis",
    "BVElement",
    "LabelError",
    "C",
    "E",
    "one",
    "delta",
    "bv_degree",
    "bv_weight",
    "compose_basis",
    "bv_compose",
    "bv_relabel",
    "bv_diff",
    "insert_delta",
    "bv_basis",
]


class LabelError(ValueError):
    """Missing or clashing labels in a composition or relabeling."""


@dataclass(frozen=True)
class BVBasis:
    labels: FrozenSet[Hashable]
    pair: Optional[FrozenSet[Hashable]] = None

    def __post_init__(self):
        if len(self.labels) < 2:
            raise ValueError("BV basis elements have arity >= 2")
        if self.pair is not None and (len(self.pair) != 2 or not self.pair <= self.labels):
            raise ValueError("E indices must be two distinct labels of the element")

    @property
    def kind(self) -> str:
        if len(self.labels) == 2:
            return "Delta" if self.pair else "One"
        return "E" if self.pair else "C"

    @property
    def is_odd(self) -> bool:
        return self.pair is not None

    @property
    def arity(self) -> int:
        return len(self.labels)

    def indices(self) -> Tuple:
        return tuple(sort_labels(self.pair)) if self.pair else ()

    def render(self) -> str:
        labs = ",".join(str(x) for x in sort_labels(self.labels))
        if self.pair is None:
            return f"c{{{labs}}}" if self.arity > 2 else f"1{{{labs}}}"
        i, j = self.indices()
        return f"E{{{labs};{i},{j}}}"

    def __repr__(self) -> str:
        return self.render()


def C(labels: Iterable) -> BVBasis:
    return BVBasis(frozenset(labels))


def E(labels: Iterable, i, j) -> BVBasis:
    if i == j:
        raise ValueError("E_ij needs i != j")
    return BVBasis(frozenset(labels), frozenset((i, j)))


def one(a, b) -> BVBasis:
    return BVBasis(frozenset((a, b)))


def delta(a, b) -> BVBasis:
    return BVBasis(frozenset((a, b)), frozenset((a, b)))


def bv_degree(x: BVBasis) -> int:
    return -1 if x.pair else 0


def bv_weight(x: BVBasis) -> int:
    return 2 if x.pair else 0


def bv_basis(labels: Iterable) -> Iterator[BVBasis]:
    """All basis elements on a label set: ``c`` then every ``E_ij``."""
    labs = sort_labels(labels)
    yield C(labs)
    for p in range(len(labs)):
        for q in range(p + 1, len(labs)):
            yield E(labs, labs[p], labs[q])


def _check_slots(A, a, B, b):
    if a not in A:
        raise LabelError(f"slot {a!r} not among {sort_labels(A)}")
    if b not in B:
        raise LabelError(f"slot {b!r} not among {sort_labels(B)}")
    clash = (A - {a}) & (B - {b})
    if clash:
        raise LabelError(f"label clash {sort_labels(clash)}")


def compose_basis(x: BVBasis, a, y: BVBasis, b) -> Dict[BVBasis, int]:
    """``x o_{a,b} y`` on basis elements, as ``{basis: coefficient}``."""
    A, B = x.labels, y.labels
    _check_slots(A, a, B, b)
    new = (A - {a}) | (B - {b})
    if x.pair and y.pair:
        return {}
    if not x.pair and not y.pair:
        return {BVBasis(new): 1}
    if x.pair:
        pair, far_side = x.pair, B - {b}
        slot = a
    else:
        pair, far_side = y.pair, A - {a}
        slot = b
    if slot in pair:
        (other,) = pair - {slot}
        return {BVBasis(new, frozenset((other, k))): 1 for k in far_side}
    return {BVBasis(new, pair): 1}


class BVElement:
    """Finite linear combination of :class:`BVBasis` on a common label set."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[BVBasis, Fraction] | None = None):
        self.terms: Dict[BVBasis, Fraction] = {}
        labels = None
        for k, v in (terms or {}).items():
            if not v:
                continue
            if labels is None:
                labels = k.labels
            elif k.labels != labels:
                raise LabelError("BVElement terms must share one label set")
            self.terms[k] = Fraction(v)

    @classmethod
    def basis(cls, x: BVBasis, coeff=1) -> "BVElement":
        return cls({x: coeff})

    @property
    def labels(self) -> Optional[FrozenSet]:
        for k in self.terms:
            return k.labels
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BVElement") -> "BVElement":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return BVElement(acc)

    def __sub__(self, other: "BVElement") -> "BVElement":
        return self + other * -1

    def __mul__(self, c) -> "BVElement":
        return BVElement({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BVElement):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*{k.render()}" for k, v in sorted(self.terms.items(), key=lambda kv: kv[0].render()))


def bv_compose(x: BVElement, a, y: BVElement, b) -> BVElement:
    acc: Dict[BVBasis, Fraction] = {}
    for kx, vx in x.terms.items():
        for ky, vy in y.terms.items():
            for k, c in compose_basis(kx, a, ky, b).items():
                acc[k] = acc.get(k, 0) + vx * vy * c
    return BVElement(acc)


def relabel_basis(x: BVBasis, mapping: Mapping) -> BVBasis:
    m = lambda t: mapping.get(t, t)
    new = frozenset(m(t) for t in x.labels)
    if len(new) != len(x.labels):
        raise LabelError("relabeling is not injective")
    return BVBasis(new, frozenset(m(t) for t in x.pair) if x.pair else None)


def bv_relabel(x: BVElement, mapping: Mapping) -> BVElement:
    labels = x.labels
    if labels is not None:
        missing = [t for t in labels if t not in mapping]
        if missing:
            raise LabelError(f"bijection undefined on {sort_labels(missing)}")
        if len({mapping[t] for t in labels}) != len(labels):
            raise LabelError("map is not a bijection")
    return BVElement({relabel_basis(k, mapping): v for k, v in x.terms.items()})


def bv_diff(x: BVElement) -> BVElement:
    """Internal differential; BV is a homology operad, so this is zero."""
    return BVElement()


def insert_delta(x: BVBasis, slot) -> Dict[BVBasis, int]:
    """``x o_slot Delta`` with the output slot keeping the name ``slot``."""
    if slot not in x.labels:
        raise LabelError(f"slot {slot!r} not in {x.render()}")
    if x.pair:
        return {}
    return {BVBasis(x.labels, frozenset((slot, k))): 1 for k in x.labels if k != slot}
