import pytest

from chartbench import zoo
from chartbench.harness import (
    EnumBounds,
    enumerate_charts,
    naive_enumerate,
    sweep,
)
from chartbench.model import brute_force_isomorphic, canonical_key, validate


def test_trivial_bounds_give_empty_chart():
    charts = enumerate_charts(EnumBounds(n=2))
    assert len(charts) == 1
    assert charts[0].vertices == () and charts[0].edges == ()


def test_n2_has_no_whites():
    charts = enumerate_charts(EnumBounds(n=2, max_white=2, max_black=2))
    assert all(c.count("white") == 0 for c in charts)


def test_free_edge_allowed_without_a3():
    charts = enumerate_charts(
        EnumBounds(n=2, max_black=2, policy=("A2",))
    )
    assert any(c.count("black") == 2 for c in charts)


def test_enumeration_is_deterministic_and_canonical():
    bounds = EnumBounds(n=3, max_white=2, max_black=2)
    a = enumerate_charts(bounds)
    b = enumerate_charts(bounds)
    assert [canonical_key(c) for c in a] == [canonical_key(c) for c in b]
    keys = [canonical_key(c) for c in a]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


@pytest.mark.parametrize(
    "bounds",
    [
        EnumBounds(n=2, max_black=2, policy=()),
        EnumBounds(n=3, max_white=1, max_black=2, policy=()),
        EnumBounds(n=3, max_white=2, max_black=2),
        EnumBounds(n=3, max_white=2, max_black=1, max_hoops=1, policy=()),
    ],
)
def test_naive_generator_agrees(bounds):
    fast = enumerate_charts(bounds)
    slow = naive_enumerate(bounds)
    assert len(fast) == len(slow)
    assert {canonical_key(c) for c in fast} == {canonical_key(c) for c in slow}


def test_canonical_key_matches_brute_force_on_pairs():
    charts = enumerate_charts(EnumBounds(n=3, max_white=2, max_black=2, policy=()))
    for i, a in enumerate(charts):
        for b in charts[i:]:
            assert (canonical_key(a) == canonical_key(b)) == brute_force_isomorphic(
                a, b
            )


def test_sweep_clean():
    charts = enumerate_charts(EnumBounds(n=3, max_white=2, max_black=2))
    report = sweep(charts, policy=("A2", "A3", "A4"))
    assert report.ok, report.violations
    assert report.checked == len(charts)


def test_sweep_flags_corrupted_chart():
    good = enumerate_charts(EnumBounds(n=3, max_white=2, max_black=2))
    bad = zoo.chart(
        3,
        {
            "w": "white",
            "b0": "black",
            "b1": "black",
            "b2": "black",
            "b3": "black",
            "b4": "black",
            "b5": "black",
        },
        [
            ("e0", 1, ("b0", 0), ("w", 0)),
            ("e1", 2, ("w", 1), ("b1", 0)),
            ("e2", 1, ("b2", 0), ("w", 2)),
            ("e3", 2, ("w", 3), ("b3", 0)),
            ("e4", 1, ("b4", 0), ("w", 4)),
            ("e5", 2, ("w", 5), ("b5", 0)),
        ],
    )
    report = sweep(list(good) + [bad], policy=())
    assert not report.ok
    assert len([v for v in report.violations if "axioms" in v]) == 1


def test_empty_sweep():
    report = sweep([])
    assert report.ok and report.checked == 0
