import pytest

from affine_heaps.exceptions import ConditionViolated, InfiniteEnumeration, InvalidWalk
from affine_heaps.heaps import (
    Cycle,
    Edge,
    FiniteDigraph,
    Heap,
    Path,
    Piece,
    compose,
    enumerate_heaps,
    enumerate_trivial_heaps,
    inversion_lemma_lhs,
    inversion_lemma_rhs,
    is_pyramid,
    is_trivial,
    maxima,
    minima,
    psi_cycles,
    psi_cycles_inverse,
    pyramid_series_lhs,
    pyramid_series_rhs,
    segment_weight,
)
from affine_heaps.monodimer import G, dimer, md_universe, md_weight, monomer, signed_trivial_sum
from affine_heaps.oracle import enumerate_walks
from affine_heaps.verify import PSI_GRAPH, PSI_PATH

T = (6, 0, 8)


def heap(*pieces):
    return Heap.from_pieces(pieces)


def test_compose_examples():
    h = heap(Piece(1, 2), Piece(2, 3), Piece(5, 5))
    assert compose(h, Heap()) == h
    assert compose(Heap(), h) == h
    assert len(compose(heap(Piece(1, 2)), heap(Piece(4, 5))).layers) == 1
    assert len(compose(heap(Piece(1, 2)), heap(Piece(2, 3))).layers) == 2


def test_compose_associative():
    a, b, c = heap(Piece(1, 3)), heap(Piece(3, 4), Piece(0, 0)), heap(Piece(0, 1), Piece(4, 4))
    assert (a * b) * c == a * (b * c)


def test_commuting_pieces_give_equal_heaps():
    assert heap(Piece(1, 2), Piece(4, 5)) == heap(Piece(4, 5), Piece(1, 2))
    assert heap(Piece(1, 2), Piece(2, 3)) != heap(Piece(2, 3), Piece(1, 2))


def test_extremes():
    e = Heap()
    assert minima(e) == maxima(e) == []
    assert is_trivial(e) and not is_pyramid(e)
    one = heap(Piece(2, 4))
    assert is_pyramid(one) and is_trivial(one)
    h1 = heap(Piece(1, 2), Piece(4, 5), Piece(2, 4))
    assert is_pyramid(h1)
    assert sorted(minima(h1)) == [Piece(1, 2), Piece(4, 5)]
    assert maxima(h1) == [Piece(2, 4)]


def test_remove_extremes():
    h = heap(Piece(1, 2), Piece(1, 2))
    assert h.remove_maximal(Piece(1, 2)) == heap(Piece(1, 2))
    assert h.remove_minimal(Piece(1, 2)) == heap(Piece(1, 2))


def test_enumerate_bound_excludes_everything():
    got = list(enumerate_heaps([Piece(1, 2), Piece(3, 5)], segment_weight, (1, 1, 1)))
    assert got == [(Heap(), (0, 0, 0))]


def test_enumerate_small_md_universe():
    universe = [monomer(0, "L"), monomer(0, "R"), monomer(1, "L"), monomer(1, "R"), dimer(0)]
    heaps = [h for h, _ in enumerate_heaps(universe, md_weight, (2, 0, 1))]
    # empty, 5 single pieces, 4 ordered stacks at site 0, 4 commuting pairs at sites 0 and 1
    assert len(heaps) == len(set(heaps)) == 14
    assert sum(1 for h in heaps if len(h) == 2 and is_trivial(h)) == 4


def test_enumerate_rejects_weightless_piece():
    with pytest.raises(InfiniteEnumeration):
        list(enumerate_heaps([Piece(0, 0)], lambda p: (0, 0, 0), (2, 2, 2)))


def test_trivial_heaps_match_monodimer():
    trunc = (5, 0, 6)
    total = {}
    for h, (dx, _, dq) in enumerate_trivial_heaps(md_universe("md", 6), md_weight, trunc):
        total[(dx, 0, dq)] = total.get((dx, 0, dq), 0) + (-1) ** len(h)
    expected = signed_trivial_sum("md", trunc)
    assert {k: v for k, v in total.items() if v} == expected.terms


def test_inversion_lemma_examples():
    u = md_universe("md_star", 3)
    t = (5, 0, 6)
    lhs = inversion_lemma_lhs(u, u, md_weight, t)
    assert lhs == inversion_lemma_rhs(u, u, md_weight, t)
    assert inversion_lemma_lhs([], [], md_weight, t) == inversion_lemma_rhs([], [], md_weight, t)
    assert inversion_lemma_lhs([], [], md_weight, t).terms == {(0, 0, 0): 1}
    m = [p for p in u if p in (monomer(0, "L"), monomer(0, "R"), dimer(0))]
    assert inversion_lemma_lhs(u, m, md_weight, t) == inversion_lemma_rhs(u, m, md_weight, t)


@pytest.mark.parametrize("universe, weight", [
    ([], segment_weight),
    ([Piece(1, 1), Piece(1, 2), Piece(2, 3), Piece(3, 3)], segment_weight),
    (md_universe("md", 3), md_weight),
])
def test_pyramid_series(universe, weight):
    t = (5, 4, 6)
    assert pyramid_series_lhs(universe, weight, t) == pyramid_series_rhs(universe, weight, t)


def test_psi_base_cases():
    g = FiniteDigraph.from_edges([("u", "v"), ("v", "w")])
    eta, h = psi_cycles(g, Path("u"))
    assert eta == Path("u") and h == Heap()
    p = Path.from_vertices("uvw")
    assert psi_cycles(g, p) == (p, Heap())
    assert psi_cycles_inverse(g, Path("u"), Heap()) == Path("u")


def test_psi_worked_example():
    eta, h = psi_cycles(PSI_GRAPH, Path.from_vertices(PSI_PATH))
    assert str(eta) == "ABCE"
    assert sorted(str(c) for c in h.pieces()) == ["(ABF)", "(BFCG)", "(CED)"]
    assert str(psi_cycles_inverse(PSI_GRAPH, eta, h)) == PSI_PATH


def test_psi_rejects_bad_walks():
    with pytest.raises(InvalidWalk):
        psi_cycles(PSI_GRAPH, Path.from_vertices("AC"))


def test_psi_inverse_condition():
    eta = Path.from_vertices("AB")
    far = Cycle.from_edges([Edge("C", "E"), Edge("E", "D"), Edge("D", "C")])
    with pytest.raises(ConditionViolated):
        psi_cycles_inverse(PSI_GRAPH, eta, heap(far))


@pytest.mark.parametrize("length", range(0, 7))
def test_psi_round_trip_on_line_graph(length):
    for w in enumerate_walks("G", length, 6):
        path = w.to_path()
        eta, h = psi_cycles(G, path)
        assert eta.is_self_avoiding()
        assert psi_cycles_inverse(G, eta, h) == path
        assert len(eta.edges) + sum(len(c.edges) for c in h.pieces()) == length


def test_json_round_trip():
    h = heap(Piece(1, 2), Piece(2, 3, "L"), Piece(0, 0))
    assert Heap.from_dict(h.to_dict()) == h
