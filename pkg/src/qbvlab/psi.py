"""Genus-zero psi-class intersection numbers and the polynomials p_n.

Multi-indices are tuples ``(i_0, i_1, ...)`` counting how many times each
``tau_k`` occurs; ``<tau^i>_0`` is the integral over the moduli space of stable
genus-zero curves with ``|i|`` markings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import factorial, prod
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .labels import FreshLabel, label_key, sort_labels

__all__ = [
    "MultiIndex",
    "normalize",
    "lambda_of",
    "mi_factorial",
    "mi_size",
    "add_taus",
    "splittings",
    "tau_bracket",
    "bracket",
    "check_recursion_asym",
    "check_recursion_sym",
    "sym_identity_via_asym",
    "multi_indices",
    "verify_recursions",
    "SymPoly",
    "p_polynomial",
    "p_polynomial_by_permutations",
    "check_p_identity",
    "p_identity_residual",
]

MultiIndex = Tuple[int, ...]

_FACT = [factorial(k) for k in range(65)]


def fact(k: int) -> int:
    return _FACT[k] if k < 65 else factorial(k)


def normalize(i: Sequence[int]) -> MultiIndex:
    i = list(i)
    if any(x < 0 for x in i):
        raise ValueError(f"negative entry in multi-index {tuple(i)}")
    while i and i[-1] == 0:
        i.pop()
    return tuple(i)


def mi_size(i: Sequence[int]) -> int:
    return sum(i)


def mi_factorial(i: Sequence[int]) -> int:
    return prod(fact(x) for x in i)


def lambda_of(i: Sequence[int]) -> MultiIndex:
    """The sorted list of psi-exponents: ``k`` repeated ``i_k`` times."""
    return tuple(k for k, c in enumerate(i) for _ in range(c))


def add_taus(i: Sequence[int], *ks: int) -> MultiIndex:
    """Multi-index of ``tau_{k_1} ... tau_{k_m} tau^i``."""
    out = list(i)
    for k in ks:
        if k >= len(out):
            out.extend([0] * (k + 1 - len(out)))
        out[k] += 1
    return normalize(out)


def splittings(i: Sequence[int]) -> Iterator[Tuple[MultiIndex, MultiIndex]]:
    """All componentwise ``(i', i'')`` with ``i' + i'' = i``."""
    for left in product(*(range(c + 1) for c in i)):
        yield normalize(left), normalize(tuple(c - a for c, a in zip(i, left)))


@lru_cache(maxsize=None)
def _tau(i: MultiIndex) -> Fraction:
    lam = lambda_of(i)
    n = len(lam)
    if sum(lam) != n - 3:
        return Fraction(0)
    return Fraction(fact(n - 3), prod(fact(x) for x in lam))


def tau_bracket(i: Sequence[int]) -> Fraction:
    """``<tau^i>_0``; requires at least three markings."""
    i = normalize(i)
    if mi_size(i) < 3:
        raise ValueError(f"<tau^i>_0 needs |i| >= 3, got {tuple(i)}")
    return _tau(i)


def bracket(i: Sequence[int]) -> Fraction:
    """Like :func:`tau_bracket` but unstable brackets (fewer than 3 points) are 0."""
    i = normalize(i)
    if mi_size(i) < 3:
        return Fraction(0)
    return _tau(i)


def check_recursion_asym(a: int, b: int, c: int, i: Sequence[int]) -> bool:
    i = normalize(i)
    lhs = bracket(add_taus(i, a + 1, b, c)) / mi_factorial(i)
    rhs = Fraction(0)
    for i1, i2 in splittings(i):
        rhs += (
            bracket(add_taus(i1, a, 0))
            * bracket(add_taus(i2, b, c, 0))
            / (mi_factorial(i1) * mi_factorial(i2))
        )
    return lhs == rhs


def check_recursion_sym(a: int, b: int, j: Sequence[int]) -> bool:
    j = normalize(j)
    if not j or j[0] < 1:
        raise ValueError("the symmetric recursion needs j_0 >= 1")
    lhs = (bracket(add_taus(j, a + 1, b)) + bracket(add_taus(j, a, b + 1))) / mi_factorial(j)
    rhs = Fraction(0)
    for j1, j2 in splittings(j):
        rhs += (
            bracket(add_taus(j1, a, 0))
            * bracket(add_taus(j2, b, 0))
            / (mi_factorial(j1) * mi_factorial(j2))
        )
    return lhs == rhs


def sym_identity_via_asym(a: int, b: int, j: Sequence[int]) -> Tuple[Fraction, Fraction]:
    """Both sides of the symmetric identity, each side rebuilt from the asymmetric one.

    With ``j = i + e_0`` the left side is ``(1/j!)`` times the sum of the two
    asymmetric left sides (``c = 0``, roles of ``a`` and ``b`` swapped), and the
    right side is the sum of the two asymmetric right sides divided by ``j_0``.
    Returns ``(lhs, rhs)`` computed this way.
    """
    j = normalize(j)
    if not j or j[0] < 1:
        raise ValueError("needs j_0 >= 1")
    i = normalize((j[0] - 1,) + tuple(j[1:]))
    ifac, jfac = mi_factorial(i), mi_factorial(j)

    def asym_rhs(x: int, y: int) -> Fraction:
        s = Fraction(0)
        for i1, i2 in splittings(i):
            s += (
                bracket(add_taus(i1, x, 0))
                * bracket(add_taus(i2, y, 0, 0))
                / (mi_factorial(i1) * mi_factorial(i2))
            )
        return s

    lhs = (
        bracket(add_taus(i, a + 1, b, 0)) + bracket(add_taus(i, b + 1, a, 0))
    ) / jfac
    # asymmetric identity: bracket(tau_{x+1} tau_y tau_0 tau^i) = i! * asym_rhs(x, y)
    rhs = (asym_rhs(a, b) + asym_rhs(b, a)) * ifac / jfac
    return lhs, rhs


def multi_indices(size: int, max_pos: int) -> Iterator[MultiIndex]:
    """Every multi-index with ``|i| = size`` and entries at positions ``<= max_pos``."""
    def rec(pos, left):
        if pos == max_pos:
            yield (left,)
            return
        for c in range(left + 1):
            for tail in rec(pos + 1, left - c):
                yield (c,) + tail
    for i in rec(0, size):
        yield normalize(i)


def verify_recursions(max_n: int = 8, max_abc: int = 4) -> Dict[str, Tuple[int, int]]:
    """Exhaustive check of both recursions, bracket sizes up to ``max_n``.

    Returns ``{name: (checked, failed)}`` for the asymmetric identity, the
    symmetric one and the derivation of the latter from the former.
    """
    out = {"asym": [0, 0], "sym": [0, 0], "sym_from_asym": [0, 0]}
    top = max(max_n - 3, 0)
    for a, b, c in product(range(max_abc + 1), repeat=3):
        for m in range(max_n - 2):
            for i in multi_indices(m, top):
                out["asym"][0] += 1
                out["asym"][1] += not check_recursion_asym(a, b, c, i)
    for a, b in product(range(max_abc + 1), repeat=2):
        for m in range(1, max_n - 1):
            for j in multi_indices(m, top):
                if not j or j[0] < 1:
                    continue
                out["sym"][0] += 1
                out["sym"][1] += not check_recursion_sym(a, b, j)
                lhs, rhs = sym_identity_via_asym(a, b, j)
                out["sym_from_asym"][0] += 1
                out["sym_from_asym"][1] += lhs != rhs
    return {k: tuple(v) for k, v in out.items()}


@dataclass
class SymPoly:
    """Polynomial with rational coefficients in labelled variables ``v_label``."""

    variables: Tuple = ()
    terms: Dict[Tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        n = len(self.variables)
        clean = {}
        for e, c in self.terms.items():
            if len(e) != n:
                raise ValueError("exponent vector length does not match variables")
            if c:
                clean[tuple(e)] = Fraction(c)
        self.terms = clean

    @classmethod
    def constant(cls, c, variables: Sequence = ()) -> "SymPoly":
        return cls(tuple(variables), {(0,) * len(variables): Fraction(c)})

    @classmethod
    def from_monomials(cls, variables: Sequence, monos: Dict[Tuple[Tuple, ...], Fraction]) -> "SymPoly":
        """Build from ``{((label, exp), ...): coeff}``."""
        variables = tuple(variables)
        pos = {v: k for k, v in enumerate(variables)}
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for mono, c in monos.items():
            e = [0] * len(variables)
            for lab, k in mono:
                e[pos[lab]] += k
            key = tuple(e)
            terms[key] = terms.get(key, 0) + c
        return cls(variables, terms)

    def monomials(self) -> Dict[Tuple[Tuple, int], Fraction]:
        """``{((label, exp), ...): coeff}`` with zero exponents dropped."""
        return {
            tuple((v, k) for v, k in zip(self.variables, e) if k): c for e, c in self.terms.items()
        }

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self.terms)

    def _aligned(self, variables: Tuple) -> Dict[Tuple[int, ...], Fraction]:
        pos = [variables.index(v) for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for k, p in zip(e, pos):
                new[p] = k
            out[tuple(new)] = c
        return out

    def _union(self, other: "SymPoly") -> Tuple:
        return tuple(sort_labels(set(self.variables) | set(other.variables)))

    def __add__(self, other: "SymPoly") -> "SymPoly":
        vs = self._union(other)
        acc = self._aligned(vs)
        for e, c in other._aligned(vs).items():
            acc[e] = acc.get(e, 0) + c
        return SymPoly(vs, acc)

    def __neg__(self) -> "SymPoly":
        return SymPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + (-other)

    def __mul__(self, other) -> "SymPoly":
        if not isinstance(other, SymPoly):
            return SymPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        vs = self._union(other)
        a, b = self._aligned(vs), other._aligned(vs)
        acc: Dict[Tuple[int, ...], Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return SymPoly(vs, acc)

    __rmul__ = __mul__

    def derivative(self, var, times: int = 1) -> "SymPoly":
        if var not in self.variables:
            return SymPoly(self.variables, {})
        k = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[k] >= times:
                ne = list(e)
                ne[k] -= times
                out[tuple(ne)] = c * prod(range(e[k] - times + 1, e[k] + 1))
        return SymPoly(self.variables, out)

    def set_zero(self, *vars_) -> "SymPoly":
        """Substitute ``v = 0`` and drop those variables."""
        drop = [k for k, v in enumerate(self.variables) if v in vars_]
        keep = [k for k in range(len(self.variables)) if k not in drop]
        out = {}
        for e, c in self.terms.items():
            if any(e[k] for k in drop):
                continue
            key = tuple(e[k] for k in keep)
            out[key] = out.get(key, 0) + c
        return SymPoly(tuple(self.variables[k] for k in keep), out)

    def relabel(self, mapping) -> "SymPoly":
        new_vars = [mapping.get(v, v) for v in self.variables]
        if len(set(new_vars)) != len(new_vars):
            raise ValueError("relabeling is not injective")
        monos = {
            tuple((mapping.get(v, v), k) for v, k in mono): c for mono, c in self.monomials().items()
        }
        return SymPoly.from_monomials(sort_labels(new_vars), monos)

    def coefficient(self, exps: Dict) -> Fraction:
        e = tuple(exps.get(v, 0) for v in self.variables)
        return self.terms.get(e, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymPoly):
            return NotImplemented
        return (self - other).is_zero()

    def render(self, prefix: str = "v") -> str:
        """Canonical text, e.g. ``-(v1+v2+v3+v4)`` for an all-negative sum."""
        if not self.terms:
            return "0"
        order = sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        parts = []
        for e in order:
            c = self.terms[e]
            mono = "*".join(
                f"{prefix}{v}" + (f"^{k}" if k > 1 else "") for v, k in zip(self.variables, e) if k
            )
            parts.append((c, mono))
        if len(parts) > 1 and all(c < 0 for c, _ in parts):
            return "-(" + _join_terms([(-c, m) for c, m in parts]) + ")"
        return _join_terms(parts)

    def to_json(self) -> dict:
        order = sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        return {
            "variables": [str(v) for v in self.variables],
            "terms": [{"exponents": list(e), "coeff": _frac_str(self.terms[e])} for e in order],
        }


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _join_terms(parts) -> str:
    out = ""
    for k, (c, mono) in enumerate(parts):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_frac_str(a)}*{mono}"
        else:
            body = _frac_str(a)
        if k == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += sign + body
    return out


def _exponent_vectors(n: int, total: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _exponent_vectors(n - 1, total - first):
            yield (first,) + rest


@lru_cache(maxsize=64)
def _p_terms(n: int) -> Dict[Tuple[int, ...], Fraction]:
    sign = -1 if (n - 3) % 2 else 1
    terms = {}
    for e in _exponent_vectors(n, n - 3):
        counts = [0] * (max(e) + 1)
        for k in e:
            counts[k] += 1
        # each distinct exponent arrangement arises i! times in the S_n sum
        c = sign * tau_bracket(counts) / prod(fact(k) for k in e)
        if c:
            terms[e] = c
    return terms


def p_polynomial(n: int, labels: Sequence | None = None) -> SymPoly:
    """The symmetric polynomial ``p_n`` in ``v_label`` for the given ``n`` labels."""
    if n < 3:
        raise ValueError(f"p_n is defined for n >= 3, got {n}")
    labels = tuple(range(1, n + 1)) if labels is None else tuple(labels)
    if len(labels) != n or len(set(labels)) != n:
        raise ValueError("labels must be n distinct entries")
    order = sort_labels(labels)
    perm = [labels.index(v) for v in order]
    terms = {tuple(e[k] for k in perm): c for e, c in _p_terms(n).items()}
    return SymPoly(tuple(order), terms)


def p_polynomial_by_permutations(n: int) -> SymPoly:
    """``p_n`` from the literal double sum over multi-indices and all of ``S_n``.

    Slow (``n!`` terms); used as an independent check on :func:`p_polynomial`.
    """
    from itertools import permutations

    if n < 3:
        raise ValueError("n >= 3 required")
    sign = -1 if (n - 3) % 2 else 1
    acc: Dict[Tuple[int, ...], Fraction] = {}
    for i in _exponent_vectors(n - 2, n):  # i_0..i_{n-3}; larger psi powers cannot occur
        lam = lambda_of(i)
        if sum(lam) != n - 3:
            continue
        coeff = Fraction(fact(n - 3), mi_factorial(i) * prod(fact(x) for x in lam) ** 2)
        for sigma in permutations(range(n)):
            e = [0] * n
            for alpha, k in enumerate(lam):
                e[sigma[alpha]] = k
            key = tuple(e)
            acc[key] = acc.get(key, 0) + sign * coeff
    return SymPoly(tuple(range(1, n + 1)), acc)


def _split_pairs(A: Sequence, i, j) -> Iterator[Tuple[Tuple, Tuple]]:
    """Ordered splittings ``A = A1 + A2`` with ``i`` in A1, ``j`` in A2, both of size >= 2."""
    rest = [a for a in A if a not in (i, j)]
    for r in range(len(rest) + 1):
        for chosen in combinations(rest, r):
            a1 = (i,) + chosen
            a2 = (j,) + tuple(a for a in rest if a not in chosen)
            if len(a1) >= 2 and len(a2) >= 2:
                yield a1, a2


def p_identity_residual(A: Sequence, i, j) -> SymPoly:
    """``(d_i + d_j) p_A + sum p_{A1+alpha} p_{A2+beta}|_{alpha=beta=0}``."""
    A = tuple(A)
    if len(A) < 3:
        raise ValueError("|A| >= 3 required")
    if i == j or i not in A or j not in A:
        raise ValueError("need i != j, both in A")
    pA = p_polynomial(len(A), A)
    total = pA.derivative(i) + pA.derivative(j)
    alpha, beta = FreshLabel("alpha"), FreshLabel("beta")
    for a1, a2 in _split_pairs(A, i, j):
        left = p_polynomial(len(a1) + 1, a1 + (alpha,)).set_zero(alpha)
        right = p_polynomial(len(a2) + 1, a2 + (beta,)).set_zero(beta)
        total = total + left * right
    return total


def check_p_identity(A: Sequence, i, j) -> bool:
    return p_identity_residual(A, i, j).is_zero()
