import itertools

import pytest
from hypothesis import given, settings, strategies as st

from chartbench import zoo
from chartbench.iocalc import (
    BoundaryProfile,
    ProfileDart,
    TriangleDiskData,
    all_domains,
    io_feasible,
    io_tally,
    make_domain,
    oracle_feasible,
    profile_from_payload,
    profile_to_payload,
    triangle_bound,
)
from chartbench.model import OperationError


def sec6_profile():
    """Worked annulus example: one inward arc fixed, three outward, only
    the plain outward edge may be terminal."""
    return BoundaryProfile(
        "k",
        (
            ProfileDart("e2", "out", True),
            ProfileDart("e3", "in", False),
            ProfileDart("a55", "out", False),
            ProfileDart("b55", "out", False),
        ),
    )


def test_whole_sphere_domain():
    c = zoo.oval_chart()
    dom = make_domain(c, c.face_keys(), 2)
    assert dom.boundary_edges == frozenset()
    inward, outward = io_tally(c, dom)
    assert inward == outward == 4  # label-2 edges: a44, b44, e4, e5


def test_domain_boundary_label_window():
    c = zoo.oval_chart()
    # a face with label-2 boundary is not admissible for k faraway
    f = next(f for f in c.faces() if "a44" in f.edge_ids() and len(f.cycle) == 2)
    with pytest.raises(OperationError):
        make_domain(zoo.chart(9, {}, []), ["sphere"], 99)
    dom = make_domain(c, [f.key], 2)  # boundary labels in {1,2}
    assert dom.boundary_edges


def test_tally_balanced_on_all_domains_small():
    for make in (zoo.oval_chart, zoo.lens_chart, zoo.cut_lens_chart):
        c = make()
        for dom in all_domains(c):
            inward, outward = io_tally(c, dom)
            assert inward == outward


def test_sec6_example_budget0_infeasible():
    res = io_feasible(sec6_profile(), 0)
    assert not res.feasible
    assert res.certificate == (2, 3)


def test_sec6_example_budget1_feasible():
    res = io_feasible(sec6_profile(), 1)
    assert res.feasible
    assert res.witness is not None
    assert oracle_feasible(sec6_profile(), 1)


def test_empty_profile_feasible():
    prof = BoundaryProfile("k", ())
    assert io_feasible(prof, 0).feasible


def test_lone_white_cannot_close():
    # no boundary darts but one interior white cannot saturate its slots
    prof = BoundaryProfile("k", ())
    res = io_feasible(prof, 1)
    assert res.feasible  # t = 0 already works; budget is an upper bound
    # two inward non-terminal darts force an interior white
    prof2 = BoundaryProfile(
        "k", (ProfileDart("x", "in", False), ProfileDart("y", "in", False))
    )
    assert not io_feasible(prof2, 0).feasible
    assert io_feasible(prof2, 1).feasible


def test_monotone_in_budget():
    prof = sec6_profile()
    feas = [io_feasible(prof, s).feasible for s in range(4)]
    for s in range(3):
        assert not feas[s] or feas[s + 1]


def _random_profiles():
    dirs = st.sampled_from(["in", "out"])
    dart = st.tuples(dirs, st.booleans())
    return st.lists(dart, min_size=0, max_size=8).map(
        lambda items: BoundaryProfile(
            "k",
            tuple(
                ProfileDart(f"d{i}", dr, ok) for i, (dr, ok) in enumerate(items)
            ),
        )
    )


@settings(max_examples=300, deadline=None)
@given(_random_profiles(), st.integers(min_value=0, max_value=2))
def test_feasibility_matches_oracle(profile, budget):
    assert io_feasible(profile, budget).feasible == oracle_feasible(profile, budget)


def test_joins_consume_darts():
    prof = BoundaryProfile(
        "k",
        (
            ProfileDart("p", "out", False),
            ProfileDart("q", "in", False),
            ProfileDart("r", "out", False),
        ),
        joins=(("p", "q"),),
    )
    res = io_feasible(prof, 0)
    assert not res.feasible  # r left alone
    assert io_feasible(prof, 1).feasible


def test_triangle_bound_cases():
    assert triangle_bound(TriangleDiskData(0, 1, 1, -1)) == 1
    assert triangle_bound(TriangleDiskData(1, 1, 1, -1, terminal_inside=True)) == 1
    assert triangle_bound(TriangleDiskData(0, 1, 1, 1)) == 0
    assert triangle_bound(TriangleDiskData(2, 1, 1, -1)) == 0
    assert triangle_bound(TriangleDiskData(1, -1, -1, 1, terminal_inside=True)) == 1


def test_profile_serialization_round_trip():
    prof = sec6_profile()
    payload = profile_to_payload(prof, budget=1)
    prof2, budget = profile_from_payload(payload)
    assert prof2 == prof and budget == 1
