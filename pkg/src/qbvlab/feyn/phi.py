"""The comparison map from the BV graph complex to the Q graph complex.

``Phi`` is the identity on vertex decorations.  An edge carrying ``k``
Delta's goes to ``sum_j (-1)^(k-j) / (j! (k-j)!) v^j (x) u (x) v^(k-j)`` and a
leg carrying ``k`` Delta's goes to ``v^k / k!`` (or ``v^k`` with
``leg_normalization="literal"``).  The source orientation word maps to the
target one block by block: an edge block has odd length and becomes the edge's
``u``; a leg block has even length and disappears.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, List, Optional

from .. import qbv
from ..linalg import (
    GradedComplex,
    SparseMatrix,
    cohomology_dims,
    euler_characteristic,
    kernel_basis,
    rank,
    verify_d_squared,
)
from .canon import DecGraph, canonicalize
from .complexes import (
    AFEYN,
    afeyn_diff,
    afeyn_weight,
    build_afeyn_qbv,
    build_feyn_bv,
    feyn_weight,
    top_weight,
)

__all__ = [
    "LEG_NORMALIZATIONS",
    "phi_image",
    "phi_blocks",
    "phi_matrix",
    "mapping_cone",
    "PhiReport",
    "verify_phi",
    "CohomologyComparison",
    "compare_cohomology",
    "edge_image",
    "PhiEReport",
    "verify_phiE_truncated",
    "leg_chain_ratios",
]

LEG_NORMALIZATIONS = ("factorial", "literal")


def _leg_coeff(k: int, leg_normalization: str) -> Fraction:
    if leg_normalization == "factorial":
        return Fraction(1, factorial(k))
    if leg_normalization == "literal":
        return Fraction(1)
    raise ValueError(f"unknown leg normalization {leg_normalization!r}")


def _edge_terms(k: int):
    for j in range(k + 1):
        yield j, k - j, Fraction((-1) ** (k - j), factorial(j) * factorial(k - j))


def phi_image(g: DecGraph, leg_normalization: str = "factorial") -> Dict[DecGraph, Fraction]:
    """Image of a canonical source basis vector in canonical target vectors."""
    legs = []
    coeff = Fraction(1)
    for v, (pair, _), k in g.legs:
        legs.append((v, (pair, k), 0))
        coeff *= _leg_coeff(k, leg_normalization)
    out: Dict[DecGraph, Fraction] = {}
    for choice in product(*[list(_edge_terms(e[4])) for e in g.edges]):
        c = coeff
        edges = []
        for (u, v, au, av, _), (a, b, w) in zip(g.edges, choice):
            edges.append((u, v, (au[0], a), (av[0], b), (1,)))
            c *= w
        canon, s = canonicalize(DecGraph(g.nv, tuple(edges), tuple(legs)), AFEYN)
        if canon is None:
            continue
        val = out.get(canon, 0) + s * c
        if val:
            out[canon] = val
        else:
            out.pop(canon, None)
    return out


def phi_blocks(source: GradedComplex, target: GradedComplex, shift: int,
               leg_normalization: str = "factorial") -> Dict[int, SparseMatrix]:
    """``{d: matrix from source degree d to target degree d + shift}``."""
    blocks = {}
    for d, basis in source.bases.items():
        index = target.index(d + shift)
        cols = []
        for b in basis:
            col = {}
            for t, c in phi_image(b, leg_normalization).items():
                if t not in index:
                    raise KeyError(f"image leaves the target basis in degree {d + shift}: {t}")
                col[index[t]] = c
            cols.append(col)
        blocks[d] = SparseMatrix.from_columns(target.dim(d + shift), cols)
    return blocks


def _block_matrix(blocks: Dict[int, SparseMatrix], source: GradedComplex, target: GradedComplex,
                  shift: int) -> SparseMatrix:
    col_off, off = {}, 0
    for d in sorted(source.bases):
        col_off[d] = off
        off += source.dim(d)
    row_off, roff = {}, 0
    for d in sorted(target.bases):
        row_off[d] = roff
        roff += target.dim(d)
    ent = {}
    for d, m in blocks.items():
        if not m.entries:
            continue
        r0, c0 = row_off[d + shift], col_off[d]
        for (i, j), v in m.entries.items():
            ent[(r0 + i, c0 + j)] = v
    return SparseMatrix(roff, off, ent)


def phi_matrix(g: int, n: int, W: int, leg_normalization: str = "factorial",
               model: str = "reduced", source=None, target=None) -> SparseMatrix:
    """Matrix of the comparison map on the degree-ordered concatenated bases."""
    top = top_weight(g, n)
    source = source or build_feyn_bv(g, n, W)
    target = target or build_afeyn_qbv(g, n, top - W, model=model)
    return _block_matrix(phi_blocks(source, target, top, leg_normalization), source, target, top)


def mapping_cone(source: GradedComplex, target: GradedComplex, blocks: Dict[int, SparseMatrix],
                 shift: int) -> GradedComplex:
    """Cone of a chain map, in target degrees: ``C^m = S^(m+1-shift) + T^m``."""
    degs = {d - 1 + shift for d in source.bases} | set(target.bases)
    bases = {m: [("s", b) for b in source.bases.get(m + 1 - shift, [])] + [("t", b) for b in target.bases.get(m, [])]
             for m in degs}
    diffs = {}
    for m in degs:
        sd = m + 1 - shift
        ns, nt = source.dim(sd), target.dim(m)
        ns1, nt1 = source.dim(sd + 1), target.dim(m + 1)
        ent = {}
        for (i, j), v in source.differential(sd).entries.items():
            ent[(i, j)] = -v
        phi = blocks.get(sd)
        if phi is not None:
            for (i, j), v in phi.entries.items():
                ent[(ns1 + i, j)] = v
        for (i, j), v in target.differential(m).entries.items():
            ent[(ns1 + i, ns + j)] = v
        diffs[m] = SparseMatrix(ns1 + nt1, ns + nt, ent)
    return GradedComplex(("cone",) + tuple(target.label), bases, diffs)


@dataclass
class PhiReport:
    g: int
    n: int
    W: int
    chain_map: bool
    weight: bool
    quasi_iso: bool
    source_dims: Dict[int, int] = field(default_factory=dict)
    target_dims: Dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.chain_map and self.weight and self.quasi_iso


def verify_phi(g: int, n: int, W: int, leg_normalization: str = "factorial", model: str = "reduced",
               source: Optional[GradedComplex] = None, target: Optional[GradedComplex] = None) -> PhiReport:
    """Chain-map identity, weight complementarity and acyclicity of the cone."""
    top = top_weight(g, n)
    source = source or build_feyn_bv(g, n, W)
    target = target or build_afeyn_qbv(g, n, top - W, model=model)
    blocks = phi_blocks(source, target, top, leg_normalization)
    chain = True
    for d in source.bases:
        lhs = target.differential(d + top) @ blocks[d]
        nxt = blocks.get(d + 1, SparseMatrix.zero(target.dim(d + 1 + top), source.dim(d + 1)))
        rhs = nxt @ source.differential(d)
        if not (lhs - rhs).is_zero():
            chain = False
            break
    weight = True
    for basis in source.bases.values():
        for b in basis:
            if any(afeyn_weight(t) != top - feyn_weight(b) for t in phi_image(b, leg_normalization)):
                weight = False
    src_h, tgt_h = cohomology_dims(source), cohomology_dims(target)
    quasi = chain and not cohomology_dims(mapping_cone(source, target, blocks, top))
    return PhiReport(g, n, W, chain, weight, quasi, src_h, tgt_h)


@dataclass
class CohomologyComparison:
    g: int
    n: int
    W: int
    source: Dict[int, int]  # k -> dim H^{-k} of the BV side, weight W
    target: Dict[int, int]  # k -> dim H^{top-k} of the Q side, weight top-W
    source_euler: int
    target_euler: int

    @property
    def equal(self) -> bool:
        return self.source == self.target

    def render(self) -> str:
        ks = sorted(set(self.source) | set(self.target))
        lines = [f"(g,n)=({self.g},{self.n}) W={self.W}", "k  source  target"]
        lines += [f"{k}  {self.source.get(k, 0)}  {self.target.get(k, 0)}" for k in ks]
        lines.append("EQUAL" if self.equal else "DIFFERENT")
        return "\n".join(lines)


def compare_cohomology(g: int, n: int, W: int, model: str = "reduced", source=None, target=None) -> CohomologyComparison:
    """Cohomology of both sides in complementary degrees and weights."""
    if 2 * g + n < 3:
        raise ValueError("need 2g + n >= 3")
    if W not in (0, 2):
        raise ValueError("W must be 0 or 2")
    top = top_weight(g, n)
    source = source or build_feyn_bv(g, n, W)
    target = target or build_afeyn_qbv(g, n, top - W, model=model)
    hs, ht = cohomology_dims(source), cohomology_dims(target)
    return CohomologyComparison(
        g, n, W,
        {-d: v for d, v in hs.items()},
        {top - d: v for d, v in ht.items()},
        euler_characteristic(hs),
        (-1) ** (top % 2) * euler_characteristic(ht),
    )


# -- the local edge complex ---------------------------------------------------

# one internal edge between two trivalent c vertices; legs 1,2 and 3,4
def _edge_graph(a: int, ks, b: int) -> DecGraph:
    return DecGraph(2, ((0, 1, (0, a), (0, b), tuple(ks)),),
                    ((0, (0, 0), 0), (0, (0, 0), 0), (1, (0, 0), 0), (1, (0, 0), 0)))


def _strings(total: int):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _strings(total - first):
            yield (first,) + rest


def _local(vec: Dict[DecGraph, Fraction], coords: Dict[DecGraph, tuple]) -> Dict[tuple, Fraction]:
    return {coords[g]: c for g, c in vec.items()}


def _canon_vec(terms) -> Dict[DecGraph, Fraction]:
    out: Dict[DecGraph, Fraction] = {}
    for graph, c in terms:
        canon, s = canonicalize(graph, AFEYN)
        if canon is not None and c:
            out[canon] = out.get(canon, 0) + s * c
    return {k: v for k, v in out.items() if v}


def edge_image(k: int) -> Dict[DecGraph, Fraction]:
    """``phi_E(Delta^k)`` placed on the test edge, in canonical vectors."""
    return _canon_vec((_edge_graph(a, (1,), b), c) for a, b, c in _edge_terms(k))


def _edge_diff(g: DecGraph) -> Dict[DecGraph, Fraction]:
    # the part of the target differential internal to the edge decoration
    return {t: c for t, c in afeyn_diff(g).items()
            if t.nv == 2 and not any(a[0] for e in t.edges for a in e[2:4])
            and not any(leg[1][0] for leg in t.legs)}


@dataclass
class PhiEReport:
    N: int
    strata: Dict[int, int]          # stratum -> dim H
    represented: Dict[int, bool]    # stratum -> phi_E(Delta^n) is a nonzero class
    cone_kernels: Dict[int, bool]   # stratum -> kernel is the alternating vector
    legs_iso: bool
    d_squared: bool

    @property
    def passed(self) -> bool:
        return (self.d_squared and self.legs_iso and all(v == 1 for v in self.strata.values())
                and all(self.represented.values()) and all(self.cone_kernels.values()))


def verify_phiE_truncated(N: int, leg_normalization: str = "factorial") -> PhiEReport:
    """Cohomology of the edge decorations ``v^a (x) u^k1 ... u^kr (x) v^b``
    truncated to ``a + b + sum k <= N``; stratum ``a + b - sum k + 1``."""
    if N < 1:
        raise ValueError("N >= 1 required")
    coords: Dict[DecGraph, tuple] = {}
    by_stratum: Dict[int, List[DecGraph]] = {}
    for K in range(N + 1):
        for ks in _strings(K):
            for a in range(N - K + 1):
                for b in range(N - K - a + 1):
                    canon, _ = canonicalize(_edge_graph(a, ks, b), AFEYN)
                    if canon is None or canon in coords:
                        continue
                    coords[canon] = (a, ks, b)
                    by_stratum.setdefault(a + b - K + 1, []).append(canon)
    strata, represented, kernels = {}, {}, {}
    d_sq = True
    from .complexes import afeyn_degree, build_complex
    for n in range(0, N):
        basis = by_stratum.get(n, [])
        cx = build_complex(("edge", n), basis, afeyn_degree, _edge_diff)
        d_sq = d_sq and verify_d_squared(cx)
        strata[n] = sum(cohomology_dims(cx).values())
        img = edge_image(n)
        deg = afeyn_degree(next(iter(img)))
        index = cx.index(deg)
        col = {index[t]: c for t, c in img.items()}
        cocycle = not any(_edge_diff_vec(img).values())
        before = cx.differential(deg - 1)
        with_img = SparseMatrix(before.rows, before.cols + 1,
                                {**before.entries, **{(i, before.cols): c for i, c in col.items()}})
        represented[n] = cocycle and rank(with_img) == rank(before) + 1
        kernels[n] = _cone_kernel_is_alternating(n)
    legs_iso = all(_leg_coeff(k, leg_normalization) != 0 for k in range(N))
    return PhiEReport(N, strata, represented, kernels, legs_iso, d_sq)


def _edge_diff_vec(vec: Dict[DecGraph, Fraction]) -> Dict[DecGraph, Fraction]:
    out: Dict[DecGraph, Fraction] = {}
    for g, c in vec.items():
        for t, x in _edge_diff(g).items():
            out[t] = out.get(t, 0) + c * x
    return {k: v for k, v in out.items() if v}


def _cone_kernel_is_alternating(n: int) -> bool:
    # d_E from span{e_{n,a}} (a single u^1) to span{v^a (x) v^(n-1-a)} (no u)
    es = [_canon_vec([(_edge_graph(a, (1,), n - a), Fraction(1, factorial(a) * factorial(n - a)))])
          for a in range(n + 1)]
    fs = [canonicalize(_edge_graph(a, (), n - 1 - a), AFEYN)[0] for a in range(n)]
    index = {f: i for i, f in enumerate(fs)}
    cols = []
    for e in es:
        col: Dict[int, Fraction] = {}
        for t, c in _edge_diff_vec(e).items():
            col[index[t]] = col.get(index[t], 0) + c
        cols.append(col)
    ker = kernel_basis(SparseMatrix.from_columns(len(fs), cols))
    if len(ker) != 1:
        return False
    vec = ker[0]
    scale = vec[0]
    return scale != 0 and all(vec[a] == scale * (-1) ** a for a in range(n + 1))


def leg_chain_ratios(kmax: int, leg_normalization: str = "factorial") -> List[Fraction]:
    """Ratios between the two sides of the chain-map identity on a leg carrying
    ``k`` Delta's, for ``k = 1..kmax``; the identity holds for every ``k``
    exactly when all ratios coincide."""
    x = qbv.make_poly(qbv.bv.C((1, 2, 3)))
    out = []
    for k in range(1, kmax + 1):
        # the Q side differential of phi_L(Delta^k) at leg 1
        img = qbv.QPoly(x.x, qbv.mono({1: k}))
        dv = qbv.diff_basis(img)
        lower = qbv.QPoly(qbv.bv.E((1, 2, 3), 1, 2), qbv.mono({1: k - 1}))
        lhs = dv.get(lower, 0) * _leg_coeff(k, leg_normalization)
        # phi_L of the absorbed string Delta^(k-1), with the absorbed Delta in the vertex
        absorbed = qbv.bv.insert_delta(x.x, 1).get(lower.x, 0)
        rhs = absorbed * _leg_coeff(k - 1, leg_normalization)
        out.append(Fraction(lhs) / rhs)
    return out
