import pytest

from chartbench import analysis, zoo
from chartbench.analysis import (
    Complexity,
    angled_disks,
    bw_vertices,
    census,
    classify_edge,
    closed_curves,
    complexity,
    gamma,
    gamma_cycles,
    interior_white_count,
    lemma31_violations,
    local_complexity,
    neighbors_anticlockwise,
    type_of,
)
from chartbench.model import OperationError


def test_gamma_of_empty():
    c = zoo.empty_chart(3)
    g = gamma(c, 1)
    assert g.edges == () and g.vertices == ()


def test_gamma_label_out_of_range():
    c = zoo.empty_chart(3)
    with pytest.raises(OperationError):
        gamma(c, 3)


def test_gamma_oval_counts():
    c = zoo.oval_chart()  # oval lives in label 2
    g = gamma(c, 2)
    cen = census(c, subgraph=g)
    assert (cen.w, cen.b) == (2, 2)
    assert len(g.components) == 1


def test_census_whole():
    c = zoo.oval_chart()
    cen = census(c)
    assert cen.as_tuple() == (2, 2, 0, 0)
    assert census(zoo.empty_chart()).as_tuple() == (0, 0, 0, 0)
    assert census(zoo.free_edge_chart()).f == 1


def test_classify_edge():
    c = zoo.oval_chart()
    assert classify_edge(c, "e4") == "terminal"
    assert classify_edge(c, "a44") == "internal"
    free = zoo.free_edge_chart()
    assert classify_edge(free, "e1") == "free"


def test_gamma_cycles_oval():
    c = zoo.oval_chart()
    cycles2 = gamma_cycles(c, 2)
    # the oval 2-gon is the only closed curve of label 2
    assert len(cycles2) == 1 and cycles2[0].k == 2
    # the three label-1 edges form three 2-gons pairwise
    cycles1 = gamma_cycles(c, 1)
    assert len(cycles1) == 3
    assert all(cy.k == 2 for cy in cycles1)


def test_closed_curves_classification():
    c = zoo.oval_chart()
    inv = closed_curves(c, 2)
    assert inv.hoops == () and inv.rings == () and inv.loops == ()
    h = zoo.hoop_chart(3, label=1)
    inv1 = closed_curves(h, 1)
    assert inv1.hoops == (0,) and inv1.simple_hoops == (0,)


def test_angled_disks_oval():
    c = zoo.oval_chart()
    disks = angled_disks(c, 2)
    assert len(disks) == 2  # both sides of the single 2-gon
    by_white = {interior_white_count(c, d) for d in disks}
    assert by_white == {0}
    # the inner side (label-1 chord only) has no feelers; the outer side
    # receives both terminal label-2 germs, which are feelers
    feeler_counts = sorted(len(d.feelers) for d in disks)
    assert feeler_counts == [0, 2]
    assert all(d.k == 2 for d in disks)
    assert all(d.special for d in disks)  # every feeler is terminal


def test_angled_disk_identity():
    c = zoo.oval_chart()
    for d in angled_disks(c, 2):
        inside = interior_white_count(c, d)
        boundary = d.k
        # w(D) = w(boundary) + w(interior)
        total = census(c, faces=d.faces).w
        assert total == boundary + inside


def test_type_of():
    assert type_of(zoo.empty_chart()) is None
    t = type_of(zoo.oval_chart())
    assert t is not None and (t.m, t.counts) == (1, (2,))
    t2 = type_of(zoo.lens_chart())
    assert (t2.m, t2.counts) == (1, (2,))


def test_complexity_order():
    assert complexity(zoo.empty_chart()) == Complexity(0, 0)
    assert Complexity(6, 0) < Complexity(7, -5)
    assert complexity(zoo.free_edge_chart()) == Complexity(0, -1)


def test_local_complexity_trivial():
    c = zoo.oval_chart()
    for d in angled_disks(c, 2):
        assert local_complexity(c, d) == (0, 0)


def test_bw_vertices_and_lemma31():
    c = zoo.oval_chart()
    # label 2: both whites carry a terminal label-2 edge
    assert set(bw_vertices(c, 2)) == {"w4", "w5"}
    # label 1: no terminal label-1 edges
    assert bw_vertices(c, 1) == []
    # clean chart: no violations (non-terminal pairs point the same way)
    assert lemma31_violations(c, 2) == []


def test_lemma31_violation_constructed():
    # white with a non-middle terminal (A2 off): its other two label-2
    # edges then have mixed orientation
    c = zoo.chart(
        3,
        {"w": "white", "v": "white", "p": "black", "q": "black"},
        [
            # w rotation: slots 0..5; label 2 at even slots, 1 at odd
            ("t", 2, ("w", 0), ("p", 0)),      # terminal, out at w (non-middle)
            ("s1", 1, ("w", 1), ("v", 4)),
            ("s2", 2, ("w", 2), ("v", 3)),     # out at w
            ("s3", 1, ("v", 2), ("w", 3)),
            ("s4", 2, ("v", 1), ("w", 4)),     # in at w -> mixed with s2
            ("s5", 1, ("v", 0), ("w", 5)),
            ("t2", 2, ("q", 0), ("v", 5)),
        ],
    )
    from chartbench.model import validate

    assert validate(c, policy=()).verdict, validate(c, policy=()).violations
    assert not validate(c, policy=("A2",)).verdict
    assert "w" in lemma31_violations(c, 2)


def test_neighbors_anticlockwise():
    c = zoo.oval_chart()
    # w4 rotation: [ec, a44, ea, e4, eb, b44]
    a, b = neighbors_anticlockwise(c, "e4", "w4")
    assert (a, b) == ("ea", "eb")
    with pytest.raises(OperationError):
        neighbors_anticlockwise(c, "ec", "b4")


def test_census_additivity_disks():
    c = zoo.oval_chart()
    d1, d2 = angled_disks(c, 2)
    whole = census(c)
    # the two closed sides cover the chart; boundary whites counted twice
    assert census(c, faces=d1.faces).w + census(c, faces=d2.faces).w == whole.w + d1.k
