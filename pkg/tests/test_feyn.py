import pytest

from qbvlab.feyn import canon, complexes as cx, graphs
from qbvlab.feyn.canon import DecGraph, canonicalize
from qbvlab.linalg import cohomology_dims, verify_d_squared


@pytest.mark.parametrize("g,n,count", [(0, 3, 1), (0, 4, 4), (0, 5, 26), (1, 1, 1), (1, 2, 3),
                                       (2, 0, 3), (2, 1, 7), (1, 3, 15)])
def test_graph_counts(g, n, count):
    assert len(graphs.enumerate_graphs(g, n)) == count


def test_graph_count_06():
    assert len(graphs.enumerate_graphs(0, 6)) == 236


def test_enumeration_rejects_unstable():
    for g, n in [(0, 2), (1, 0), (0, 0)]:
        with pytest.raises(ValueError):
            graphs.enumerate_graphs(g, n)


def test_04_trees_are_leg_partitions():
    gs = graphs.enumerate_graphs(0, 4)
    parts = set()
    for gr in gs:
        if gr.nv == 2:
            side = frozenset(l for l, leg in enumerate(gr.legs, start=1) if leg[0] == 0)
            parts.add(frozenset((side, frozenset({1, 2, 3, 4}) - side)))
    assert len(parts) == 3


def test_graphs_are_valid():
    for gr in graphs.enumerate_graphs(1, 3):
        assert gr.loop_order == 1
        assert all(gr.valence(v) >= 3 for v in range(gr.nv))
        assert graphs.is_connected(gr.nv, [(e[0], e[1]) for e in gr.edges])


def test_text_round_trip():
    gs = graphs.enumerate_graphs(1, 2)
    text = graphs.graphs_to_text(gs)
    assert text.splitlines()[0] == "1 1 2 1"
    assert graphs.graphs_from_text(text) == gs


def test_cache_round_trip(tmp_path):
    a = graphs.cached_graphs(0, 5, tmp_path)
    assert len(list(tmp_path.iterdir())) == 1
    assert graphs.cached_graphs(0, 5, tmp_path) == a == graphs.enumerate_graphs(0, 5)
    assert graphs.cache_key(0, 5) != graphs.cache_key(5, 0)


def _theta():
    e = (0, 1, canon.PLAIN, canon.PLAIN, 0)
    return DecGraph(2, (e, e, e), ())


def test_odd_automorphism_gives_zero():
    assert canonicalize(_theta(), cx.FEYN) == (None, 0)


def test_canonical_signs():
    g = graphs.enumerate_graphs(0, 5)[-1]
    c, s = canonicalize(g, cx.FEYN)
    assert (c, s) == (g, 1)
    word = cx.FEYN.word(g)
    if len(word) >= 2:
        swapped = [word[1], word[0]] + word[2:]
        assert canonicalize(g, cx.FEYN, swapped) == (g, -1)


def test_relabeling_composes_signs():
    # relabel vertices of a decorated graph twice and compare with the canonical sign
    g = cx.feyn_basis(0, 5, 2)[40]
    perm = list(range(g.nv))[::-1]
    edges = tuple((perm[u], perm[v], au, av, k) for u, v, au, av, k in g.edges)
    legs = tuple((perm[v], a, k) for v, a, k in g.legs)
    h = DecGraph(g.nv, edges, legs)
    c, s = canonicalize(h, cx.FEYN, [(("v", perm[it[1]]) if it[0] == "v" else it) for it in cx.FEYN.word(g)])
    assert c == g and s == 1


def test_feyn_03():
    c = cx.build_feyn_bv(0, 3, 0)
    assert {d: len(b) for d, b in c.bases.items()} == {0: 1}
    assert cohomology_dims(c) == {0: 1}


def test_feyn_04_basis():
    c = cx.build_feyn_bv(0, 4, 0)
    assert {d: len(b) for d, b in c.bases.items()} == {0: 1, -1: 3}
    assert verify_d_squared(c)


def test_feyn_11_weight2_contents():
    basis = cx.feyn_basis(1, 1, 2)
    assert len(basis) == 3
    assert any(b.edges[0][2][0] or b.edges[0][3][0] or b.legs[0][1][0] for b in basis)
    assert any(b.legs[0][2] == 1 for b in basis)


def test_loop_with_one_delta_vanishes_on_both_sides():
    # flipping the loop reverses three odd items on one side and negates
    # v (x) u (x) 1 - 1 (x) u (x) v on the other
    loop = DecGraph(1, ((0, 0, canon.PLAIN, canon.PLAIN, 1),), ((0, canon.PLAIN, 0),))
    assert canonicalize(loop, cx.FEYN) == (None, 0)
    from qbvlab.feyn.phi import phi_image
    assert phi_image(loop) == {}


def test_weight_and_degree_bookkeeping():
    for W in (0, 2):
        c = cx.build_feyn_bv(1, 2, W)
        for d, basis in c.bases.items():
            assert all(cx.feyn_weight(b) == W and cx.feyn_degree(b) == d for b in basis)
        top = cx.top_weight(1, 2)
        t = cx.build_afeyn_qbv(1, 2, top - W)
        for d, basis in t.bases.items():
            assert all(cx.afeyn_weight(b) == top - W and cx.afeyn_degree(b) == d for b in basis)


def test_afeyn_03():
    t = cx.build_afeyn_qbv(0, 3, 0)
    assert {d: len(b) for d, b in t.bases.items()} == {0: 1}


def test_afeyn_04_top_weight_contents():
    t = cx.build_afeyn_qbv(0, 4, 2)
    assert {d: len(b) for d, b in t.bases.items()} == {1: 3, 2: 1}
    assert all(b.edges[0][4] == (1,) for b in t.bases[1])


def test_afeyn_weight_range():
    with pytest.raises(ValueError):
        cx.build_afeyn_qbv(0, 4, 6)
    with pytest.raises(ValueError):
        cx.build_feyn_bv(0, 4, 4)
    with pytest.raises(ValueError):
        cx.afeyn_basis(0, 4, 2, model="full")


@pytest.mark.parametrize("g,n", [(0, 4), (1, 1), (1, 2), (2, 0)])
@pytest.mark.parametrize("W", [0, 2])
def test_full_model_matches_reduced(g, n, W):
    top = cx.top_weight(g, n)
    full = cx.build_afeyn_qbv(g, n, top - W, model="full")
    red = cx.build_afeyn_qbv(g, n, top - W)
    assert verify_d_squared(full)
    assert sum(map(len, full.bases.values())) > sum(map(len, red.bases.values()))
    assert cohomology_dims(full) == cohomology_dims(red)


@pytest.mark.parametrize("g,n", [(0, 4), (1, 1)])
def test_truncation_is_stable(g, n):
    top = cx.top_weight(g, n)
    for W in (0, 2):
        base = cohomology_dims(cx.build_afeyn_qbv(g, n, top - W, model="full"))
        more = cohomology_dims(cx.build_afeyn_qbv(g, n, top - W, model="full", vmax=W // 2 + 1))
        assert base == more


def test_differential_leaving_basis_is_reported():
    basis = cx.feyn_basis(0, 4, 0)
    with pytest.raises(KeyError):
        cx.build_complex(("x",), [b for b in basis if b.nv == 2], cx.feyn_degree,
                         lambda b: {basis[0]: 1})
