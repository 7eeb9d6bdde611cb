import pytest
from hypothesis import given, settings, strategies as st

from lcdbch.dims import (BchSpec, defining_set, dimension_closed_form, dimension_exact,
                         distance_lower_bound, range_table)
from lcdbch.errors import Uncovered
from lcdbch.leaders import CONJECTURAL, PROVEN


def test_examples():
    assert dimension_exact(BchSpec(3, 12, 103697)) == 9
    assert dimension_exact(BchSpec(5, 4, 11, lam=2)) == 248
    assert dimension_closed_form(BchSpec(5, 4, 11, lam=2)) == (248, PROVEN)
    assert dimension_exact(BchSpec(3, 4, 2)) == 81
    assert dimension_closed_form(BchSpec(3, 12, 103697))[0] == 9


def test_trivial_defining_set():
    T = defining_set(BchSpec(3, 4, 2))
    assert T.cardinality == 1 and list(T.indices) == [0]


def test_spec_validation():
    with pytest.raises(ValueError):
        BchSpec(3, 4, 1)
    with pytest.raises(ValueError):
        BchSpec(3, 4, 83)
    with pytest.raises(ValueError):
        BchSpec(3, 4, 5, lam=4)


@pytest.mark.parametrize("q, m, lam", [(3, 4, 1), (5, 4, 1), (3, 8, 1), (3, 6, 2), (5, 3, 2),
                                       (5, 3, 3), (7, 3, 4), (5, 5, 2)])
def test_defining_set_growth_and_dimension(q, m, lam):
    n = (q ** m + 1) // lam
    prev = 0
    for delta in range(2, min(n, 400) + 1):
        T = defining_set(BchSpec(q, m, delta, lam))
        assert T.cardinality >= prev
        assert T.mask[:delta - 1].all()
        prev = T.cardinality


@pytest.mark.parametrize("q, m, lam", [(3, 4, 1), (5, 4, 1), (7, 4, 1), (3, 8, 1), (3, 6, 2),
                                       (5, 6, 2), (5, 3, 2), (13, 3, 2)])
def test_large_rows_agree_with_exact(q, m, lam):
    for row in range_table(q, m, lam):
        for delta in {row.lo, row.hi, (row.lo + row.hi) // 2}:
            assert dimension_exact(BchSpec(q, m, delta, lam)) == row.k, (delta, row)


def test_range_table_m4():
    rows = range_table(3, 4)
    assert [(r.lo, r.hi, r.k) for r in rows] == [(18, 42, 1), (16, 17, 9), (15, 15, 17), (14, 14, 25)]
    assert {r.provenance for r in rows} == {PROVEN}


def test_range_table_provenance():
    # every row of (3, 6, 2) leans on a conjectured leader
    assert {r.provenance for r in range_table(3, 6, 2)} == {CONJECTURAL}
    assert {r.provenance for r in range_table(3, 12, 2)} == {PROVEN}


@pytest.mark.parametrize("q, m, lam", [(5, 3, 2), (5, 3, 3), (5, 4, 2), (7, 3, 2), (7, 3, 4),
                                       (3, 5, 2), (5, 5, 3), (11, 3, 3), (3, 6, 2)])
def test_small_interval_sweep(q, m, lam):
    top = q ** ((m + 1) // 2) // lam
    for delta in range(3, top + 2):
        spec = BchSpec(q, m, delta, lam)
        assert dimension_closed_form(spec)[0] == dimension_exact(spec), delta


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 4, 1), (5, 4, 1), (5, 3, 2), (5, 3, 3), (5, 4, 2), (3, 6, 2)]), st.data())
def test_closed_form_never_disagrees(params, data):
    q, m, lam = params
    n = (q ** m + 1) // lam
    spec = BchSpec(q, m, data.draw(st.integers(2, n)), lam)
    try:
        k, _ = dimension_closed_form(spec)
    except Uncovered:
        return
    assert k == dimension_exact(spec)


def test_uncovered():
    with pytest.raises(Uncovered):
        dimension_closed_form(BchSpec(3, 4, 5))
    with pytest.raises(Uncovered):
        dimension_closed_form(BchSpec(3, 4, 17, b=1))
    with pytest.raises(Uncovered):
        range_table(3, 5)


def test_distance_lower_bound():
    assert distance_lower_bound(BchSpec(3, 12, 103697)) == 207392
    assert distance_lower_bound(BchSpec(3, 4, 15)) == 28
    assert distance_lower_bound(BchSpec(3, 4, 15, b=1)) == 15
