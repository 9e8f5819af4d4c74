import pytest

from affine_heaps.diagrams import size
from affine_heaps.exceptions import InvalidSequence, RectangularPpp, TrivialHeap, WrongType
from affine_heaps.heaps import Heap, Piece, enumerate_heaps, segment_weight
from affine_heaps.oracle import enumerate_diagrams, enumerate_ppp
from affine_heaps.ppp import (
    AltSequence,
    MarkedPpp,
    Ppp,
    classify_W,
    diagram_to_marked_ppp,
    f_inverse,
    f_to_heap,
    half_turn_heap,
    half_turn_sequence,
    in_H_tilde,
    is_rectangular,
    iter_sequences,
    leftmost_minimal,
    marked_ppp_to_diagram,
    psi0,
    psi1,
    rightmost_maximal,
    semi_pyramid,
    statistics,
)

INLINE = AltSequence(((2, 5), (5, 7), (3, 7), (1, 2), (1, 1)))
FIGURE = AltSequence(((5, 7), (7, 7), (2, 4), (1, 2), (2, 6)))


def heap(*pieces):
    return Heap.from_pieces(pieces)


def test_f_examples():
    assert f_to_heap(AltSequence(())) == Heap()
    h = f_to_heap(INLINE)
    assert len(h) == 5
    assert str(h) == "[1] [3,7] | [1,2] [5,7] | [2,5]"
    g = f_to_heap(FIGURE)
    assert str(g) == "[2,6] [7] | [1,2] [5,7] | [2,4]"


@pytest.mark.parametrize("seq", [AltSequence(()), INLINE, FIGURE])
def test_f_round_trip_examples(seq):
    assert f_inverse(f_to_heap(seq)) == seq


def test_f_inverse_exhaustive():
    universe = [Piece(a, b) for a in range(1, 5) for b in range(a, 5)]
    for h, _ in enumerate_heaps(universe, segment_weight, (16, 4, 16)):
        s = f_inverse(h)
        assert f_to_heap(s) == h
        assert len(s.pairs) == len(h)


def test_f_on_sequences():
    for s in iter_sequences(4, 5):
        assert f_inverse(f_to_heap(s)) == s


def test_invalid_sequence():
    with pytest.raises(InvalidSequence):
        AltSequence(((3, 2),))


def test_in_H_tilde():
    assert in_H_tilde(Heap())
    assert in_H_tilde(heap(Piece(2, 4)))
    assert in_H_tilde(f_to_heap(FIGURE))
    assert not in_H_tilde(heap(Piece(1, 1), Piece(3, 3)))
    g = f_to_heap(FIGURE)
    assert leftmost_minimal(g).a <= rightmost_maximal(g).b


def test_semi_pyramid():
    assert semi_pyramid(heap(Piece(2, 3), Piece(1, 2)))
    assert not semi_pyramid(heap(Piece(1, 2), Piece(2, 3)))


def test_statistics():
    assert statistics(Ppp(AltSequence(((1, 1),)))) == (1, 0, 1)
    assert statistics(Ppp(FIGURE)) == (5, 9, 26)
    rect = Ppp(AltSequence(((3, 3),) * 4))
    assert statistics(rect) == (4, 0, 12)
    assert is_rectangular(rect)


def test_enumerate_ppp_small():
    found = list(enumerate_ppp(3, 5))
    assert len(found) == len(set(found))
    assert all(statistics(p)[0] <= 3 and statistics(p)[2] <= 5 for p in found)
    assert Ppp(AltSequence(((1, 2), (2, 3)))) in found


@pytest.mark.parametrize("m", range(1, 8))
def test_width_one_count(m):
    assert sum(1 for p in enumerate_ppp(1, m)) == m * (m + 1) // 2


def test_marked_ppp_examples():
    single = MarkedPpp(Ppp(AltSequence(((1, 1),))), 1)
    d = marked_ppp_to_diagram(single)
    assert d.n == 1 and size(d) == 0
    with pytest.raises(RectangularPpp):
        marked_ppp_to_diagram(MarkedPpp(Ppp(AltSequence(((2, 2),) * 3)), 2))
    for j in range(5, 8):
        mp = MarkedPpp(Ppp(FIGURE), j)
        assert diagram_to_marked_ppp(marked_ppp_to_diagram(mp)) == mp


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_diagram_to_marked_ppp_round_trip(n):
    for d in enumerate_diagrams(n, 7):
        mp = diagram_to_marked_ppp(d)
        width, _, area = statistics(mp.ppp)
        assert mp.ppp.half_perimeter == n
        assert size(d) == area - width
        assert marked_ppp_to_diagram(mp) == d
        assert MarkedPpp.from_dict(mp.to_dict()) == mp


def test_half_turn():
    for s in [INLINE, FIGURE]:
        assert half_turn_heap(f_to_heap(s)) == f_to_heap(half_turn_sequence(s))
        assert half_turn_sequence(half_turn_sequence(s)) == s


def test_classify_examples():
    with pytest.raises(TrivialHeap):
        classify_W(heap(Piece(1, 2), Piece(4, 4)))
    tower = heap(Piece(1, 2), Piece(1, 2))
    assert not classify_W(tower).in_W
    t0 = heap(Piece(1, 2), Piece(1, 1), Piece(2, 2))
    t1 = heap(Piece(1, 1), Piece(1, 2), Piece(2, 2))
    assert classify_W(t0).kind == "type0"
    assert classify_W(t1).kind == "type1"
    assert psi0(t0) == t1 and psi1(t1) == t0
    with pytest.raises(WrongType):
        psi1(t0)
    with pytest.raises(WrongType):
        psi0(tower)


def test_psi_pairing_exhaustive():
    universe = [Piece(a, b) for a in range(1, 5) for b in range(a, 5)]
    for h, _ in enumerate_heaps(universe, segment_weight, (6, 4, 12)):
        if len(h.layers) < 2:
            continue
        c = classify_W(h)
        if c.kind == "type0":
            g = psi0(h)
            assert classify_W(g).kind == "type1" and psi1(g) == h
            assert sorted(p.b for p in g.pieces()) == sorted(p.b for p in h.pieces())
        elif c.kind == "type1":
            assert psi0(psi1(h)) == h
