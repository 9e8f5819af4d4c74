import json
from math import comb

import pytest

from affine_heaps import qformulas as qf
from affine_heaps.diagrams import delta, empty_diagram, size
from affine_heaps.exceptions import DomainError
from affine_heaps.monodimer import Walk
from affine_heaps.oracle import (
    CountTable,
    enumerate_diagrams,
    enumerate_fc_elements,
    enumerate_ppp,
    enumerate_walks,
    fc_levels,
)


def test_finite_rank_three():
    t = enumerate_fc_elements(3, 10, "finite")
    assert t.rows == {0: 1, 1: 2, 2: 2}
    assert t.total() == 5


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_catalan_totals(n):
    assert enumerate_fc_elements(n, comb(n, 2), "finite").total() == comb(2 * n, n) // (n + 1)


def test_rank_two_affine():
    assert enumerate_fc_elements(2, 6).rows == {0: 1, **{k: 2 for k in range(1, 7)}}


def test_rejects_small_rank():
    with pytest.raises(DomainError):
        enumerate_fc_elements(1, 3)
    with pytest.raises(ValueError):
        enumerate_fc_elements(3, 3, "bogus")


def test_table_formats():
    t = CountTable(3, "finite", {0: 1, 1: 2, 2: 2})
    assert t.to_csv() == "length,count\n0,1\n1,2\n2,2\n"
    assert json.loads(t.to_json()) == {"n": 3, "class": "finite", "rows": {"0": 1, "1": 2, "2": 2}}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_diagram_counts_match_permutations(n):
    rows = enumerate_fc_elements(n, 6).rows
    by_size = {}
    for d in enumerate_diagrams(n, 6):
        by_size[size(d)] = by_size.get(size(d), 0) + 1
    assert by_size == rows
    assert empty_diagram(n) in set(enumerate_diagrams(n, 0))


def test_diagrams_rank_two_are_delta_images():
    assert set(enumerate_diagrams(2, 2)) == {delta(s) for level in fc_levels(2, 2) for s in level}


def test_walks_length_zero():
    assert list(enumerate_walks("G", 0, 3)) == [Walk(v) for v in range(4)]


def test_walks_length_two_from_zero():
    got = {w for w in enumerate_walks("G", 2, 3) if w.start == 0}
    assert got == {Walk(0, (("loop", "L"), ("loop", "L"))), Walk(0, (("up", None), ("down", None)))}


@pytest.mark.parametrize("variant, series", [("G", qf.walk_series_Ostar), ("Gprime", qf.walk_series_O)])
def test_walk_counts_match_series(variant, series):
    s = series((4, 0, 6))
    for length in range(1, 5):
        counts = {}
        for w in enumerate_walks(variant, length, 6):
            counts[w.area()] = counts.get(w.area(), 0) + 1
        assert counts == {k: v for k, v in s.q_polynomial(length).items() if v}


def test_walk_variants():
    with pytest.raises(ValueError):
        list(enumerate_walks("H", 1, 1))
    assert all(k != "loop" for w in enumerate_walks("noloops", 4, 4) for k, _ in w.steps)


@pytest.mark.parametrize("m", range(1, 6))
def test_ppp_width_one(m):
    assert sum(1 for _ in enumerate_ppp(1, m)) == m * (m + 1) // 2
