import random

import pytest

from oblit.typeseq import ZERO, TypeSeq


def test_canonical_strips_trailing_zeros():
    assert TypeSeq((1, 0, 2, 0, 0)).entries == (1, 0, 2)
    assert TypeSeq((0, 0)).entries == ()
    assert not TypeSeq(())
    assert TypeSeq((1,))


def test_rejects_bad_entries():
    with pytest.raises(ValueError):
        TypeSeq((1, -1))
    with pytest.raises(TypeError):
        TypeSeq((1, True))
    with pytest.raises(TypeError):
        TypeSeq((1.0,))


def test_top_degree_and_norm():
    m = TypeSeq((2, 0, 1))
    assert m.top_degree == 4
    assert m.norm() == 3
    assert ZERO.top_degree is None
    assert ZERO.norm() == 0


def test_parse_and_text_roundtrip():
    assert TypeSeq.parse("1,1,1").entries == (1, 1, 1)
    assert TypeSeq.parse("").entries == ()
    assert TypeSeq.parse(" 1, 0 ,2 ").entries == (1, 0, 2)
    m = TypeSeq((3, 0, 1))
    assert TypeSeq.parse(m.text()) == m
    assert ZERO.text() == ""
    with pytest.raises(ValueError):
        TypeSeq.parse("1,x")


def test_entry_by_degree():
    m = TypeSeq((5, 0, 7))
    assert m.entry(2) == 5
    assert m.entry(3) == 0
    assert m.entry(4) == 7
    assert m.entry(9) == 0
    with pytest.raises(ValueError):
        m.entry(1)


def test_add_sub_leq():
    a = TypeSeq((1, 2))
    b = TypeSeq((0, 1, 3))
    assert a.add(b) == TypeSeq((1, 3, 3))
    assert a.add(b).sub(b) == a
    assert a.leq(a.add(b))
    assert not b.leq(a)
    with pytest.raises(ValueError):
        a.sub(b)


def test_endo_closed_form_examples():
    assert TypeSeq((1, 1, 1)).endo(2) == TypeSeq((6, 3, 1))
    assert TypeSeq((1, 1)).endo(1) == TypeSeq((2, 1))
    assert TypeSeq((1, 1, 1, 1)).endo(15) == TypeSeq((816, 136, 16, 1))
    # j = 0 is the identity
    m = TypeSeq((4, 0, 2))
    assert m.endo(0) == m


def test_endo_preserves_top_entry():
    m = TypeSeq((3, 1, 0, 2))
    for j in range(6):
        out = m.endo(j)
        assert out.top_degree == m.top_degree
        assert out.entry(m.top_degree) == m.entry(m.top_degree)


def test_endo_once_is_single_application():
    m = TypeSeq((1, 1, 1))
    assert m.endo_once() == m.endo(1)


def test_closed_forms_match_recursive_oracle():
    rng = random.Random(20260826)
    for _ in range(500):
        n = rng.randint(2, 8)
        entries = tuple(rng.randint(0, 5) for _ in range(n - 1))
        m = TypeSeq(entries)
        j = rng.randint(0, 20)
        # oracle: iterate the one-step polar j times
        cur = m
        norms = []
        for _ in range(j):
            norms.append(cur.norm())
            cur = cur.endo_once()
        assert m.endo(j) == cur
        assert m.norm_of_endo(j) == cur.norm()
        assert m.prefix_norm_sum(j) == sum(norms)


def test_prefix_norm_sum_edge_cases():
    m = TypeSeq((2, 1))
    assert m.prefix_norm_sum(0) == 0
    assert m.prefix_norm_sum(1) == m.norm()
    assert ZERO.prefix_norm_sum(10) == 0
