"""Exact sparse linear algebra over the rationals.

Matrices are stored sparsely with :class:`fractions.Fraction` entries.  Rank
is computed by fraction-free integer elimination (rows are cleared of
denominators, eliminated by cross-multiplication and divided by their content
after every step), with a sparsity-first pivot order.  A mod-p rank is
available as a fast cross-check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Hashable, Iterable, List, Mapping, Tuple

__all__ = [
    "SparseMatrix",
    "GradedComplex",
    "MalformedComplex",
    "rank",
    "rank_modp",
    "random_prime",
    "cohomology_dims",
    "verify_d_squared",
    "euler_characteristic",
    "kernel_basis",
]


class MalformedComplex(ValueError):
    """Raised when differential shapes disagree with the bases."""


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, rows: List[List]) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ent = {(i, j): Fraction(v) for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(nr, nc, ent)

    @classmethod
    def from_columns(cls, nrows: int, columns: List[Mapping[int, Fraction]]) -> "SparseMatrix":
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    ent[(i, j)] = Fraction(v)
        return cls(nrows, len(columns), ent)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def row_dicts(self) -> List[Dict[int, Fraction]]:
        out: List[Dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return SparseMatrix(self.rows, other.cols, acc)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc.get(k, 0) - v
        return SparseMatrix(self.rows, self.cols, acc)

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out


def _integer_rows(m: SparseMatrix) -> List[Dict[int, int]]:
    rows = []
    for r in m.row_dicts():
        if not r:
            continue
        den = 1
        for v in r.values():
            den = lcm(den, v.denominator)
        rows.append({j: int(v * den) for j, v in r.items()})
    return rows


def _column_order(rows: List[Dict[int, int]]) -> Dict[int, int]:
    # sparse columns first: cheap pivots, less fill-in
    counts: Dict[int, int] = {}
    for r in rows:
        for j in r:
            counts[j] = counts.get(j, 0) + 1
    order = sorted(counts, key=lambda j: (counts[j], j))
    return {j: pos for pos, j in enumerate(order)}


def _rank_integer(rows: List[Dict[int, int]]) -> int:
    if not rows:
        return 0
    pos = _column_order(rows)
    rows = [{pos[j]: v for j, v in r.items()} for r in rows]
    rows.sort(key=len)
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {j: v // g for j, v in row.items()}
                pivots[lead] = row
                break
            a = row[lead]
            p = piv[lead]
            g = gcd(a, p)
            fa, fp = p // g, a // g
            new = {j: v * fa for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - fp * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            if new:
                c = 0
                for v in new.values():
                    c = gcd(c, v)
                    if c == 1:
                        break
                if c > 1:
                    new = {j: v // c for j, v in new.items()}
            row = new
    return len(pivots)


def _rank_mod(rows: List[Dict[int, int]], p: int) -> int:
    if not rows:
        return 0
    pos = _column_order(rows)
    work = []
    for r in rows:
        d = {pos[j]: v % p for j, v in r.items() if v % p}
        if d:
            work.append(d)
    work.sort(key=len)
    pivots: Dict[int, Dict[int, int]] = {}
    for row in work:
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {j: v * inv % p for j, v in row.items()}
                break
            f = row[lead]
            for j, v in piv.items():
                w = (row.get(j, 0) - f * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return len(pivots)


def random_prime(rng: random.Random | None = None, bits: int = 31) -> int:
    """A random prime in ``(2**(bits-1), 2**bits)`` (Miller-Rabin, deterministic bases)."""
    rng = rng or random.Random()
    while True:
        n = rng.randrange(2 ** (bits - 1) + 1, 2**bits, 2)
        if _is_prime(n):
            return n


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rank_modp(m: SparseMatrix, p: int) -> int:
    """Rank of ``m`` reduced modulo the prime ``p``; a lower bound for the rational rank."""
    rows = []
    for r in m.row_dicts():
        if not r:
            continue
        den = 1
        for v in r.values():
            den = lcm(den, v.denominator)
        if den % p == 0:
            raise ValueError(f"prime {p} divides a denominator")
        rows.append({j: int(v * den) for j, v in r.items()})
    return _rank_mod(rows, p)


def rank(m: SparseMatrix, method: str = "exact", prime: int | None = None) -> int:
    """Rank of ``m`` over Q.

    ``method="exact"`` runs fraction-free elimination.  ``method="modp"`` returns
    the rank modulo one large prime (equal to the rational rank unless the prime
    is unlucky).  ``method="checked"`` computes both and returns the exact value.
    """
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return 0
    if method == "modp":
        return rank_modp(m, prime or random_prime(random.Random(m.rows * 7919 + m.cols)))
    rows = _integer_rows(m)
    # eliminate along the shorter side
    if m.cols < len(rows):
        rows = _integer_rows(m.transpose())
    exact = _rank_integer(rows)
    if method == "checked":
        # draws from the module RNG, so a seeded run is reproducible
        p = prime or random_prime(random.Random(random.getrandbits(64)))
        if rank_modp(m, p) > exact:
            raise ArithmeticError("mod-p rank exceeds exact rank")
    elif method != "exact":
        raise ValueError(f"unknown rank method {method!r}")
    return exact


def kernel_basis(m: SparseMatrix) -> List[List[Fraction]]:
    """Basis of the null space of ``m`` by reduced row echelon form.

    Dense; intended for small matrices.  Each vector has a 1 at its free column.
    """
    rows = [r for r in m.to_dense() if any(r)]
    pivots: List[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    out = []
    for free in (c for c in range(m.cols) if c not in pivots):
        vec = [Fraction(0)] * m.cols
        vec[free] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -rows[i][free]
        out.append(vec)
    return out


@dataclass
class GradedComplex:
    """A finite cochain complex with explicit bases.

    ``differentials[d]`` is the matrix of the map from degree ``d`` to degree
    ``d + 1``: shape ``(len(bases[d + 1]), len(bases[d]))``.
    """

    label: Tuple
    bases: Dict[int, List[Hashable]]
    differentials: Dict[int, SparseMatrix] = field(default_factory=dict)

    def dim(self, d: int) -> int:
        return len(self.bases.get(d, ()))

    def degrees(self) -> List[int]:
        return sorted(d for d, b in self.bases.items() if b)

    def differential(self, d: int) -> SparseMatrix:
        m = self.differentials.get(d)
        if m is None:
            return SparseMatrix.zero(self.dim(d + 1), self.dim(d))
        return m

    def check_shapes(self) -> None:
        for d, m in self.differentials.items():
            if m.shape != (self.dim(d + 1), self.dim(d)):
                raise MalformedComplex(
                    f"d^({d}) has shape {m.shape}, bases give {(self.dim(d + 1), self.dim(d))}"
                )

    def index(self, d: int) -> Dict[Hashable, int]:
        return {b: i for i, b in enumerate(self.bases.get(d, ()))}


def verify_d_squared(c: GradedComplex) -> bool:
    for d, m in c.differentials.items():
        nxt = c.differentials.get(d + 1)
        if nxt is None or m.is_zero() or nxt.is_zero():
            continue
        if nxt.cols != m.rows:
            return False
        if not (nxt @ m).is_zero():
            return False
    return True


def cohomology_dims(c: GradedComplex, method: str = "exact") -> Dict[int, int]:
    """Nonzero cohomology dimensions ``{degree: dim H^degree}``."""
    c.check_shapes()
    degs = set(c.degrees())
    ranks: Dict[int, int] = {}
    for d in degs | {d - 1 for d in degs}:
        m = c.differentials.get(d)
        ranks[d] = rank(m, method) if m is not None else 0
    out = {}
    for d in sorted(degs):
        h = c.dim(d) - ranks.get(d, 0) - ranks.get(d - 1, 0)
        if h < 0:
            raise MalformedComplex(f"negative cohomology in degree {d}: d^2 != 0?")
        if h:
            out[d] = h
    return out


def euler_characteristic(dims: Mapping[int, int]) -> int:
    return sum((-1) ** (d % 2) * n for d, n in dims.items())
