"""The morphism from the dual BV cooperad to the Q-construction, on cogenerators.

``f`` sends ``Delta*`` to ``u``, ``c_A*`` to ``c_A (x) p_A`` and every ``E_ij*``
to zero.  The chain-map property reduces to two families of identities, one
for ``c_A*`` and one for ``E_ij*``; both are evaluated here with the
operations of :mod:`qbvlab.qbv`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Hashable, Iterator, Optional, Sequence, Tuple

from . import bv, psi
from .labels import FreshLabel, sort_labels
from .qbv import (
    QElement,
    make_poly,
    make_u,
    q_compose2,
    q_compose3,
    q_degree,
    q_diff,
    q_weight,
)

__all__ = [
    "Cogenerator",
    "delta_star",
    "c_star",
    "e_star",
    "f_image",
    "poly_element",
    "chain_map_c_residual",
    "chain_map_e_residual",
    "verify_chain_map_c",
    "verify_chain_map_e",
    "verify_f_range",
]


@dataclass(frozen=True)
class Cogenerator:
    kind: str  # "Delta*", "c*" or "E*"
    labels: FrozenSet[Hashable]
    pair: Optional[FrozenSet[Hashable]] = None

    @property
    def degree(self) -> int:
        return 0 if self.kind == "c*" else 1

    @property
    def weight(self) -> int:
        return 0 if self.kind == "c*" else 2

    def render(self) -> str:
        labs = ",".join(str(x) for x in sort_labels(self.labels))
        if self.kind == "E*":
            i, j = sort_labels(self.pair)
            return f"E*{{{labs};{i},{j}}}"
        return f"{self.kind}{{{labs}}}"


def delta_star(a=1, b=2) -> Cogenerator:
    return Cogenerator("Delta*", frozenset((a, b)), frozenset((a, b)))


def c_star(labels: Sequence) -> Cogenerator:
    labels = frozenset(labels)
    if len(labels) < 3:
        raise ValueError("c* needs at least three labels")
    return Cogenerator("c*", labels)


def e_star(labels: Sequence, i, j) -> Cogenerator:
    labels = frozenset(labels)
    if len(labels) < 3 or i == j or not {i, j} <= labels:
        raise ValueError("E* needs |A| >= 3 and i != j in A")
    return Cogenerator("E*", labels, frozenset((i, j)))


def poly_element(x: bv.BVBasis, p: psi.SymPoly) -> QElement:
    """``x (x) p`` as a Q element."""
    terms = {}
    for exps, c in p.terms.items():
        terms[make_poly(x, dict(zip(p.variables, exps)))] = c
    return QElement(terms)


def _p(labels: Sequence) -> psi.SymPoly:
    labels = sort_labels(labels)
    return psi.p_polynomial(len(labels), labels)


def f_image(x: Cogenerator) -> QElement:
    if x.kind == "Delta*":
        a, b = sort_labels(x.labels)
        s, u = make_u(1, a, b)
        return QElement.basis(u, s)
    if x.kind == "c*":
        return poly_element(bv.C(x.labels), _p(x.labels))
    return QElement()


def _two_block_splits(A: Sequence) -> Iterator[Tuple[Tuple, Tuple]]:
    # ordered splittings A = A1 + A2 with both parts of size >= 2
    A = tuple(A)
    for k in range(2, len(A) - 1):
        for a1 in combinations(A, k):
            yield a1, tuple(t for t in A if t not in a1)


def chain_map_c_residual(A: Sequence) -> QElement:
    """``d f(c_A*) + 1/2 sum mu(f(c*_{A1+alpha}), f(c*_{A2+beta}))``."""
    A = tuple(A)
    alpha, beta = FreshLabel("alpha"), FreshLabel("beta")
    total = q_diff(f_image(c_star(A)))
    half = Fraction(1, 2)
    for a1, a2 in _two_block_splits(A):
        left = f_image(c_star(a1 + (alpha,)))
        right = f_image(c_star(a2 + (beta,)))
        total = total + q_compose2(left, alpha, right, beta) * half
    return total


def verify_chain_map_c(A: Sequence) -> bool:
    if len(set(A)) < 3:
        raise ValueError("|A| >= 3 required")
    return chain_map_c_residual(A).is_zero()


def chain_map_e_residual(A: Sequence, i, j) -> QElement:
    """Both contributions of ``E_ij*``: one arity-two factor (binary
    composition) or an arity-two middle factor (ternary composition)."""
    A = tuple(A)
    if len(set(A)) < 3 or i == j or i not in A or j not in A:
        raise ValueError("need |A| >= 3 and i != j in A")
    alpha, beta1, beta2, gamma = (FreshLabel(s) for s in ("alpha", "beta1", "beta2", "gamma"))
    total = QElement()
    for k in (i, j):
        # E_ij* -> c*_{A-k+alpha} (x) Delta*_{beta1,k}
        rest = tuple(t for t in A if t != k) + (alpha,)
        s, u = make_u(1, beta1, k)
        total = total + q_compose2(f_image(c_star(rest)), alpha, QElement.basis(u, s), beta1)
    half = Fraction(1, 2)
    s, u = make_u(1, beta1, beta2)
    mid = QElement.basis(u, s)
    for a1, a2 in _two_block_splits(A):
        if (i in a1) == (j in a1):
            continue
        left = f_image(c_star(a1 + (alpha,)))
        right = f_image(c_star(a2 + (gamma,)))
        total = total + q_compose3(left, alpha, mid, beta1, beta2, right, gamma) * half
    return total


def verify_chain_map_e(A: Sequence, i, j) -> bool:
    return chain_map_e_residual(A, i, j).is_zero()


def residual_as_polynomials(res: QElement) -> dict:
    """Split a residual by BV basis element into polynomials ``{x: SymPoly}``."""
    out: dict = {}
    for e, c in res.terms.items():
        out.setdefault(e.x, {})[e.mono] = c
    polys = {}
    for x, monos in out.items():
        variables = sort_labels(x.labels)
        terms = {}
        for m, c in monos.items():
            d = dict(m)
            terms[tuple(d.get(v, 0) for v in variables)] = c
        polys[x] = psi.SymPoly(tuple(variables), terms)
    return polys


def e_case_agrees(A: Sequence, i, j) -> bool:
    """The operadic residual for ``E_ij*`` equals ``c_A`` times the polynomial
    residual of the p-identity, term by term."""
    res = residual_as_polynomials(chain_map_e_residual(A, i, j))
    poly = psi.p_identity_residual(A, i, j)
    cA = bv.C(A)
    if set(res) - {cA}:
        return False
    return res.get(cA, psi.SymPoly(tuple(sort_labels(A)), {})) == poly


def c_case_agrees(A: Sequence) -> bool:
    """The coefficient of each ``E_ab`` in the ``c_A*`` residual is the
    polynomial residual of the p-identity for ``(a, b)``."""
    A = tuple(A)
    res = residual_as_polynomials(chain_map_c_residual(A))
    for a, b in combinations(A, 2):
        x = bv.E(A, a, b)
        got = res.pop(x, psi.SymPoly(tuple(sort_labels(A)), {}))
        if got != psi.p_identity_residual(A, a, b):
            return False
    return not res


def verify_f_range(max_arity: int) -> dict:
    """Per-arity verdicts for both cogenerator families plus the weight and
    degree bookkeeping of ``f``."""
    out = {}
    for n in range(3, max_arity + 1):
        A = tuple(range(1, n + 1))
        ok_c = verify_chain_map_c(A) and c_case_agrees(A)
        ok_e = all(verify_chain_map_e(A, i, j) and e_case_agrees(A, i, j) for i, j in combinations(A, 2))
        img = f_image(c_star(A))
        ok_w = all(q_weight(e) == 0 and q_degree(e) == 0 for e in img.terms)
        out[n] = {"c": ok_c, "E": ok_e, "weight": ok_w}
    return out
