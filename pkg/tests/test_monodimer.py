import itertools

import pytest

from affine_heaps import qformulas as qf
from affine_heaps.diagrams import empty_diagram, is_finite, is_self_dual, size
from affine_heaps.exceptions import ExceptionalWalk, ForbiddenFactor, InvalidWalk, NoActiveSite
from affine_heaps.heaps import Heap, enumerate_trivial_heaps, is_trivial
from affine_heaps.monodimer import (
    G,
    G_PRIME,
    MarkedPyramid,
    Walk,
    dimer,
    hpart_sum,
    hword_sum,
    in_col,
    index_sum,
    involution_I,
    is_exceptional,
    md_universe,
    md_weight,
    monomer,
    phi,
    phi_inverse,
    projection_Pr,
    projection_Pr_inverse,
    signed_trivial_sum,
    upsilon,
    upsilon_inverse,
)
from affine_heaps.oracle import enumerate_diagrams, enumerate_walks
from affine_heaps.verify import _x12q17_diagram

T = (8, 0, 10)


def test_phi_of_empty_diagram():
    w = phi(empty_diagram(4))
    assert w == Walk(0, (("loop", "L"),) * 4)
    assert w.vertices() == [0, 0, 0, 0, 0]
    assert w.area() == 0
    assert phi_inverse(w) == empty_diagram(4)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_phi_properties(n):
    for d in enumerate_diagrams(n, 7):
        w = phi(d)
        assert len(w) == n
        assert w.area() == size(d)
        assert (w.start == 0) == is_finite(d)
        loops_at_zero_only = all(v == 0 for v, (kind, _) in zip(w.vertices(), w.steps) if kind == "loop")
        assert loops_at_zero_only == is_self_dual(d)
        assert phi_inverse(w) == d


@pytest.mark.parametrize("length", range(1, 7))
def test_phi_inverse_round_trip(length):
    for w in enumerate_walks("G", length, 8):
        if is_exceptional(w):
            with pytest.raises(ExceptionalWalk):
                phi_inverse(w)
        else:
            assert phi(phi_inverse(w)) == w


def test_phi_inverse_errors():
    with pytest.raises(ExceptionalWalk):
        phi_inverse(Walk(2, (("loop", "R"),) * 3))
    with pytest.raises(InvalidWalk):
        phi_inverse(Walk(0))
    with pytest.raises(InvalidWalk):
        phi_inverse(Walk(0, (("up", None),)))
    with pytest.raises(InvalidWalk):
        phi_inverse(Walk(0, (("loop", "R"),)))


def test_graph_variants():
    assert not G.relaxed and G_PRIME.relaxed


def test_upsilon_worked_instance():
    d = _x12q17_diagram()
    mp = upsilon(d)
    assert mp.exponent() == (12, 0, 17)
    assert upsilon_inverse(mp) == d
    assert not in_col(mp)


def test_upsilon_empty_rank_two():
    mp = upsilon(empty_diagram(2))
    assert mp.mark == 0
    assert mp.pyramid.pieces() == [monomer(0, "L"), monomer(0, "L")]
    assert mp.exponent() == (2, 0, 0)


def test_upsilon_round_trip_rank_three():
    for d in enumerate_diagrams(3, 5):
        mp = upsilon(d)
        assert mp.exponent() == (3, 0, size(d))
        assert upsilon_inverse(mp) == d
        assert MarkedPyramid.from_dict(mp.to_dict()) == mp


@pytest.mark.parametrize("model, closed_form", [
    ("md", qf.series_h),
    ("md_star", qf.series_j),
    ("dimers_only", qf.series_frak_h),
    ("L_at_zero_only", qf.series_cal_J),
])
def test_signed_trivial_sums(model, closed_form):
    assert signed_trivial_sum(model, T) == closed_form(T)


def test_involution_I_examples():
    assert involution_I(Heap.from_pieces([dimer(0)])) == Heap.from_pieces([monomer(0, "L"), monomer(1, "R")])
    assert involution_I(Heap.from_pieces([monomer(2, "L"), monomer(3, "R")])) == Heap.from_pieces([dimer(2)])
    with pytest.raises(NoActiveSite):
        involution_I(Heap.from_pieces([monomer(1, "R"), monomer(2, "L")]))


def test_involution_I_exhaustive():
    for t, _ in enumerate_trivial_heaps(md_universe("md", 8), md_weight, (8, 0, 8)):
        try:
            u = involution_I(t)
        except NoActiveSite:
            continue
        assert is_trivial(u)
        assert md_weight_total(u) == md_weight_total(t)
        assert len(u) - len(t) in (1, -1)
        assert involution_I(u) == t


def md_weight_total(h):
    return tuple(sum(c) for c in zip(*(md_weight(p) for p in h.pieces()))) if len(h) else (0, 0, 0)


def test_projection_examples():
    assert projection_Pr("0000") == ("", "")
    with pytest.raises(ForbiddenFactor):
        projection_Pr("LR0")
    assert projection_Pr_inverse(*projection_Pr("RL0")) == "RL"


def test_projection_exhaustive():
    for k in range(11):
        for letters in itertools.product("0LR", repeat=k):
            w = "".join(letters)
            if "LR" in w:
                continue
            u, v = projection_Pr(w)
            assert set(u) <= {"0", "R"} and set(v) <= {"0", "L"}
            assert projection_Pr_inverse(u, v) == w.rstrip("0")


def test_index_sum():
    assert index_sum("0R0L") == 4
    assert index_sum("") == 0


def test_word_and_partition_forms():
    assert hword_sum(T) == qf.series_h(T)
    assert hpart_sum(T) == qf.series_h(T)


def test_walk_json():
    w = phi(_x12q17_diagram())
    assert Walk.from_dict(w.to_dict()) == w
