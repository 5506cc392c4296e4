import itertools
import json
import random
from math import prod

import pytest

from oblit.obliterate import (
    BaseCase,
    CertificateError,
    EvalOptions,
    Evaluator,
    Extract,
    LevelTooLow,
    PlanesFromPts,
    QuadricFastPath,
    StepBudgetExceeded,
    bound_f,
    cert_from_json,
    cert_to_json,
    coarse_bound_f,
    extract,
    planes_from_pts,
    quadric_bound,
    replay,
)
from oblit.rdbound import RdBoundFn, builtin_table
from oblit.typeseq import ZERO, TypeSeq

NEW = RdBoundFn(builtin_table("new"))
PRIOR = RdBoundFn(builtin_table("prior"))


# -- extract ------------------------------------------------------------------


def test_extract_examples():
    j, rest, product = extract(42, NEW, 0, TypeSeq((1, 1, 1, 1, 1)))
    assert (j, rest, product) == (2, TypeSeq((1, 1, 1)), 30)

    j, rest, product = extract(NEW.rd(24), NEW, 0, TypeSeq((1, 1, 1)))
    assert (j, rest, product) == (3, ZERO, 24)

    j, rest, product = extract(1, NEW, 0, TypeSeq((0, 0, 1)))
    assert (j, rest, product) == (1, ZERO, 4)


def test_extract_level_too_low():
    with pytest.raises(LevelTooLow):
        extract(1, NEW, 0, TypeSeq((0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1)))


def test_extract_strategies_differ_on_partial_break():
    # at level 1 the ceiling is 5: degree 4 is taken, degree 3 fails,
    # but a quadric would still fit if the scan kept going
    m = TypeSeq((1, 1, 1))
    j, rest, product = extract(1, NEW, 0, m)
    assert (j, product) == (1, 4)
    assert rest == TypeSeq((1, 1))
    j, rest, product = extract(1, NEW, 0, m, strategy="greedy-continue")
    assert (j, product) == (1, 4)  # 4*2 = 8 > 5, so no extra quadric here
    # ceiling 9 at level 4: only one of the two quartics fits (16 > 9),
    # so the break-on-partial scan stops while greedy-continue grabs a quadric
    m2 = TypeSeq((1, 0, 2))
    assert extract(4, NEW, 0, m2) == (1, TypeSeq((1, 0, 1)), 4)
    assert extract(4, NEW, 0, m2, strategy="greedy-continue") == (
        2, TypeSeq((0, 0, 1)), 8)


# -- planes_from_pts ----------------------------------------------------------


def test_planes_examples():
    assert planes_from_pts(2, TypeSeq((1, 1, 1))) == (TypeSeq((6, 3, 1)), 11)
    assert planes_from_pts(1, TypeSeq((1, 1))) == (TypeSeq((2, 1)), 3)
    assert planes_from_pts(5, ZERO) == (ZERO, 5)
    with pytest.raises(ValueError):
        planes_from_pts(0, TypeSeq((1,)))


# -- quadric closed form --------------------------------------------------------


def test_quadric_examples():
    level = NEW.rd(2**100)
    assert quadric_bound(level, NEW, 100) == 100
    assert quadric_bound(level, NEW, 360) == 48360
    assert quadric_bound(level, NEW, 101) == 201
    assert quadric_bound(level, NEW, 0) == 0


def test_quadric_matches_alternating_evaluator():
    opts = EvalOptions(quadric_fastpath=False)
    for level in (1, 2, 3, 5, 9, 16, 21, 60, 75, 120, 1000):
        for m2 in range(0, 201, 7):
            want = quadric_bound(level, NEW, m2)
            got = bound_f(level, NEW, 0, TypeSeq((m2,)), opts).value
            assert got == want, (level, m2)


# -- bound_f --------------------------------------------------------------------


def test_bound_f_desk_examples():
    assert bound_f(42, NEW, 0, TypeSeq((1, 1, 1, 1, 1))).value == 73
    assert bound_f(203, NEW, 0, TypeSeq((1,) * 6)).value == 154
    assert bound_f(4, NEW, 4, ZERO).value == 4


def test_bound_f_r7_chain():
    cert = bound_f(42, PRIOR, 0, TypeSeq((1, 1, 1, 1, 1)))
    assert cert.value == 73
    assert [type(s).__name__ for s in cert.steps] == [
        "Extract", "PlanesFromPts", "Extract", "PlanesFromPts",
        "Extract", "PlanesFromPts", "QuadricFastPath",
    ]
    products = [s.product for s in cert.steps if isinstance(s, Extract)]
    assert products == [30, 36, 48]
    outputs = [s.output for s in cert.steps if isinstance(s, PlanesFromPts)]
    assert outputs == [TypeSeq((6, 3, 1)), TypeSeq((9, 1)), TypeSeq((5,))]
    offsets = list(itertools.accumulate(
        s.offset for s in cert.steps if isinstance(s, PlanesFromPts)))
    assert offsets == [11, 38, 68]
    assert cert.stats.largest_product == 48


def test_bound_f_nontic_regimes():
    m = TypeSeq((1, 1, 1))
    assert NEW.rd(12) == 7 and NEW.rd(24) == 18
    for level in (1, 2, 6):
        assert bound_f(level, NEW, 0, m).value == 8
    for level in (7, 10, 17):
        assert bound_f(level, NEW, 0, m).value == 5
    for level in (18, 100, 10**20):
        assert bound_f(level, NEW, 0, m).value == 3


def test_bound_f_j_input_applies_planes_first():
    cert = bound_f(10**9, NEW, 2, TypeSeq((1, 1, 1)))
    first = cert.steps[0]
    assert isinstance(first, PlanesFromPts)
    assert first.j == 2 and first.output == TypeSeq((6, 3, 1))


def test_bound_f_level_too_low():
    with pytest.raises(LevelTooLow):
        bound_f(1, NEW, 0, TypeSeq((0,) * 10 + (1,)))


def test_bound_f_budget():
    opts = EvalOptions(quadric_fastpath=False, max_steps=10)
    with pytest.raises(StepBudgetExceeded) as info:
        bound_f(1, NEW, 0, TypeSeq((500,)), opts)
    assert info.value.stats.total_steps >= 10


def test_bound_f_memoizes():
    ev = Evaluator(NEW)
    a = ev.bound_f(42, 0, TypeSeq((1, 1, 1, 1, 1)))
    b = ev.bound_f(42, 0, TypeSeq((1, 1, 1, 1, 1)))
    assert a is b


def test_step_record_limit_elides():
    opts = EvalOptions(quadric_fastpath=False, step_record_limit=5)
    cert = bound_f(3, NEW, 0, TypeSeq((40,)), opts)
    assert cert.steps_elided
    assert len(cert.steps) == 5
    with pytest.raises(CertificateError):
        replay(cert, NEW)


# -- properties ------------------------------------------------------------------

SAMPLE_LEVELS = (1, 2, 5, 10, 10**3, 10**9)


def _sample_types():
    for entries in itertools.product(range(3), repeat=4):
        yield TypeSeq(entries)


def test_level_monotonicity():
    for m in _sample_types():
        values = [bound_f(lv, NEW, 0, m).value for lv in SAMPLE_LEVELS]
        assert all(a >= b for a, b in zip(values, values[1:])), m


def test_type_monotonicity():
    types = list(_sample_types())
    rng = random.Random(7)
    for _ in range(300):
        a, b = rng.choice(types), rng.choice(types)
        if not a.leq(b):
            continue
        for lv in (1, 10, 10**9):
            assert bound_f(lv, NEW, 0, a).value <= bound_f(lv, NEW, 0, b).value


def test_j_monotonicity():
    for m in _sample_types():
        for lv in (1, 10, 10**9):
            for j in (0, 1, 2):
                assert (
                    bound_f(lv, NEW, j, m).value
                    <= bound_f(lv, NEW, j + 1, m).value
                )


def test_lower_bound_and_saturation():
    for m in _sample_types():
        for lv in (1, 10, 10**9):
            assert bound_f(lv, NEW, 0, m).value >= m.norm()
        if m:
            full = prod((k + 2) ** e for k, e in enumerate(m.entries))
            level = NEW.rd(full)
            assert bound_f(level, NEW, 0, m).value == m.norm()


def test_coarse_dominance():
    for m in _sample_types():
        for lv in (1, 10, 10**9):
            assert bound_f(lv, NEW, 0, m).value <= coarse_bound_f(lv, NEW, 0, m)


def test_coarse_examples():
    assert coarse_bound_f(1, NEW, 0, TypeSeq((100,))) == 5050
    assert coarse_bound_f(1, NEW, 0, TypeSeq((4320,))) == 9333360
    assert coarse_bound_f(10, NEW, 3, ZERO) == 3
    quartics = coarse_bound_f(NEW.rd(4**50), NEW, 0, TypeSeq((0, 0, 360)))
    assert float(f"{quartics:.3g}") == 2.21e18
    with pytest.raises(LevelTooLow):
        coarse_bound_f(1, NEW, 0, TypeSeq((0,) * 10 + (1,)))


# -- certificates ------------------------------------------------------------------


def test_replay_reproduces_values():
    rng = random.Random(11)
    types = list(_sample_types())
    for _ in range(50):
        m = rng.choice(types)
        lv = rng.choice(SAMPLE_LEVELS)
        j = rng.randint(0, 2)
        cert = bound_f(lv, NEW, j, m)
        assert replay(cert, NEW) == cert.value


def test_replay_detects_tampering():
    cert = bound_f(42, NEW, 0, TypeSeq((1, 1, 1, 1, 1)))
    doc = cert_to_json(cert)
    doc["header"]["value"] = str(cert.value - 1)
    with pytest.raises(CertificateError):
        replay(cert_from_json(doc), NEW)
    doc = cert_to_json(cert)
    doc["steps"][0]["product"] = "9999"
    with pytest.raises(CertificateError):
        replay(cert_from_json(doc), NEW)


def test_json_roundtrip():
    cert = bound_f(42, PRIOR, 0, TypeSeq((1, 1, 1, 1, 1)))
    doc = json.loads(json.dumps(cert_to_json(cert)))
    back = cert_from_json(doc)
    assert back == cert
    assert replay(back, PRIOR) == 73


def test_certificate_value_at_least_norm():
    cert = bound_f(10**9, NEW, 0, TypeSeq((2, 1, 1)))
    assert cert.value >= cert.typeseq.norm()


def test_stats_steps_to_quadric():
    cert = bound_f(42, PRIOR, 0, TypeSeq((1, 1, 1, 1, 1)))
    assert cert.stats.steps_to_quadric == 6  # three extract/planes pairs
    pure = bound_f(42, PRIOR, 0, TypeSeq((7,)))
    assert pure.stats.steps_to_quadric == 0
