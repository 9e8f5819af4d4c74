import pytest

from affine_heaps.diagrams import (
    AlternatingDiagram,
    chain_sequence,
    delta,
    delta_inverse,
    dual,
    empty_diagram,
    is_finite,
    is_self_dual,
    linear_extension,
    size,
    validate,
)
from affine_heaps.exceptions import (
    ChainTypeDomainMismatch,
    ExcludedUniformL,
    ExcludedUniformR,
    NotAlternating,
    NotFullyCommutative,
)
from affine_heaps.oracle import enumerate_diagrams, fc_levels
from affine_heaps.permutations import from_window, identity, inverse, inversion_number, is_finite as perm_finite
from affine_heaps.permutations import is_involution

BIG = from_window(8, [-6, 13, -4, -1, 0, 14, 19, 1])
SMALL = from_window(4, [6, -3, -1, 8])


def test_validate_examples():
    with pytest.raises(ExcludedUniformR):
        validate((1, 1, 1, 1), {i: "R" for i in range(4)}, 4)
    with pytest.raises(ExcludedUniformL):
        validate((2, 2, 2), {i: "L" for i in range(3)}, 3)
    assert validate((0, 0, 0, 0), {}, 4) == empty_diagram(4)
    d = validate((2, 1, 2, 1), {}, 4)
    assert d.chain_types == {}
    with pytest.raises(NotAlternating):
        validate((0, 2, 0), {}, 3)
    with pytest.raises(ChainTypeDomainMismatch):
        validate((2, 1, 2, 1), {0: "L"}, 4)
    with pytest.raises(ChainTypeDomainMismatch):
        validate((1, 1, 0, 0), {}, 4)


def test_delta_examples():
    assert delta(identity(5)) == empty_diagram(5)
    assert size(delta(BIG)) == 31
    assert size(delta(SMALL)) == 9
    assert delta_inverse(delta(BIG)) == BIG
    assert delta_inverse(empty_diagram(3)) == identity(3)


def test_delta_rejects_non_fc():
    with pytest.raises(NotFullyCommutative):
        delta(from_window(3, [3, 2, 1]))


@pytest.mark.parametrize("strategy", ["column", "level"])
def test_linear_extension_strategies(strategy):
    d = delta(BIG)
    assert delta_inverse(d, strategy) == BIG
    assert len(linear_extension(d, strategy)) == 31


def test_chain_alternates():
    d = delta(SMALL)
    for i in range(4):
        seq = chain_sequence(d, i)
        assert len(seq) == d.cols[i] + d.cols[(i + 1) % 4]


def test_size_finite_self_dual():
    e = empty_diagram(4)
    assert size(e) == 0 and is_finite(e) and is_self_dual(e)
    d = validate((2, 1, 2, 1), {}, 4)
    assert is_self_dual(d)
    assert dual(dual(delta(BIG))) == delta(BIG)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_delta_statistics_exhaustive(n):
    for level in fc_levels(n, 7):
        for s in level:
            d = delta(s)
            assert size(d) == inversion_number(s)
            assert is_finite(d) == perm_finite(s)
            assert is_self_dual(d) == is_involution(s)
            assert delta(inverse(s)) == dual(d)
            assert delta_inverse(d) == s


def test_enumerate_diagrams_rank_two():
    images = {delta(s) for level in fc_levels(2, 2) for s in level}
    assert set(enumerate_diagrams(2, 2)) == images


def test_json_round_trip():
    d = delta(BIG)
    assert AlternatingDiagram.from_dict(d.to_dict()) == d
