import pytest

from chartbench import zoo
from chartbench.model import OperationError, transform
from chartbench.patterns import (
    Certificate,
    LabelExpr,
    OpenDart,
    PEdge,
    PseudoChart,
    catalog_ids,
    detector_suite,
    load_pattern,
    match,
    oracle_match,
    pattern_from_payload,
    pattern_key,
    pattern_to_payload,
    recheck_certificate,
    ro_family,
    transform_pattern,
    validate_pattern,
)


def test_catalog_has_enough_figures():
    ids = catalog_ids()
    assert len(ids) >= 15
    for pid in ("fig4a-oval", "fig4b-skew-theta", "fig5a", "fig5b", "fig11a", "fig11b"):
        assert pid in ids


def test_all_catalog_patterns_validate():
    for pid in catalog_ids():
        p = load_pattern(pid)
        assert validate_pattern(p) == [], pid


def test_unknown_pattern():
    with pytest.raises(OperationError):
        load_pattern("fig99")


def test_catalog_counts_match_figures():
    oval = load_pattern("fig4a-oval")
    assert oval.white_count() == 2
    assert sum(1 for v in oval.vertices if v.kind == "black") == 2
    theta = load_pattern("fig4b-skew-theta")
    assert theta.white_count() == 3
    for pid in ("fig5a", "fig5b"):
        p = load_pattern(pid)
        assert p.white_count() == 5
        assert sum(1 for v in p.vertices if v.kind == "black") == 3


def test_serialization_round_trip():
    for pid in catalog_ids():
        p = load_pattern(pid)
        assert pattern_from_payload(pattern_to_payload(p)) == p


def test_ro_family_sizes():
    for pid in ("fig4a-oval", "fig5a", "fig11b"):
        p = load_pattern(pid)
        fam = ro_family(p)
        assert len(fam) in (1, 2, 4)
        again = ro_family(p)
        assert {pattern_key(q) for q in fam} == {pattern_key(q) for q in again}


def test_transform_pattern_involutions():
    p = load_pattern("fig4a-oval")
    assert pattern_key(transform_pattern(transform_pattern(p, "rev"), "rev")) == pattern_key(p)
    assert pattern_key(transform_pattern(transform_pattern(p, "ref"), "ref")) == pattern_key(p)


def test_match_finds_staged_configurations():
    cb = zoo.seven_white_chart()
    ca = zoo.seven_white_a_chart()
    assert len(match(cb, load_pattern("fig11b"), symmetry=False)) == 1
    assert len(match(ca, load_pattern("fig11a"), symmetry=False)) == 1
    assert match(cb, load_pattern("fig11a"), symmetry=True) == []
    assert match(ca, load_pattern("fig11b"), symmetry=True) == []


def test_match_reflection_conjugation():
    c = zoo.oval_chart()
    p = load_pattern("fig4a-oval")
    lhs = match(transform(c, "reflect"), p, symmetry=False)
    rhs = match(c, transform_pattern(p, "ref"), symmetry=False)
    assert len(lhs) == len(rhs)


def test_match_equals_oracle_on_small_corpus():
    corpus = [zoo.oval_chart(), zoo.lens_chart(), zoo.cut_lens_chart()]
    small_patterns = ["fig4a-oval", "fig10a", "fig13a"]
    for c in corpus:
        for pid in small_patterns:
            p = load_pattern(pid)
            a = {e.signature() + (e.member,) for e in match(c, p, symmetry=True)}
            b = {e.signature() + (e.member,) for e in oracle_match(c, p, symmetry=True)}
            assert a == b, (pid,)


def test_detector_suite_empty_and_clean():
    assert detector_suite(zoo.empty_chart()) == []
    assert detector_suite(zoo.oval_chart()) == []


def test_detector_assumption2():
    c = zoo.special_oval_chart()  # has deliberate non-middle terminals
    certs = detector_suite(c)
    assert any(cert.rule == "Assumption 2" for cert in certs)
    for cert in certs:
        assert recheck_certificate(c, cert)


def test_detector_lemma32():
    # a single white whose label-1 edges close onto itself plus terminals
    c = zoo.chart(
        3,
        {"w": "white", "v": "white", "p": "black", "q": "black"},
        [
            ("t", 2, ("w", 0), ("p", 0)),
            ("s1", 1, ("w", 1), ("v", 4)),
            ("s2", 2, ("w", 2), ("v", 3)),
            ("s3", 1, ("v", 2), ("w", 3)),
            ("s4", 2, ("v", 1), ("w", 4)),
            ("s5", 1, ("v", 0), ("w", 5)),
            ("t2", 2, ("q", 0), ("v", 5)),
        ],
    )
    # labels 1 and 2 subgraphs each span both whites: no certificate there
    certs = detector_suite(c)
    assert all(cert.rule != "Lemma 3.2" for cert in certs)
    from chartbench.moves import apply_move, spec

    smaller = apply_move(c, spec("C-III", "forward", white="w", terminal="t"))
    certs2 = detector_suite(smaller)
    assert any(cert.rule == "Lemma 3.2" for cert in certs2)
    for cert in certs2:
        assert recheck_certificate(smaller, cert)


def test_detector_lemma53_on_staged_charts():
    certs = detector_suite(zoo.seven_white_chart())
    assert any(cert.rule == "Lemma 5.3-Fig 11(b)" for cert in certs)
    certs_a = detector_suite(zoo.seven_white_a_chart())
    assert any(cert.rule == "Lemma 5.3-Fig 11(a)" for cert in certs_a)


def test_mutations_rejected():
    p = load_pattern("fig11b")
    # flip one edge orientation
    e0 = p.edges[0]
    flipped = PseudoChart(
        id=p.id,
        vertices=p.vertices,
        edges=(PEdge(e0.id, e0.label, e0.head, e0.tail),) + p.edges[1:],
        opens=p.opens,
        regions=p.regions,
        uses_eps=p.uses_eps,
    )
    bad = validate_pattern(flipped)
    assert any(rule == "white-blocks" for rule, _ in bad)
    # shift one label
    shifted = PseudoChart(
        id=p.id,
        vertices=p.vertices,
        edges=(PEdge(e0.id, LabelExpr(e0.label.base + 1, 0), e0.tail, e0.head),)
        + p.edges[1:],
        opens=p.opens,
        regions=p.regions,
        uses_eps=p.uses_eps,
    )
    bad = validate_pattern(shifted)
    assert any(rule == "white-alternation" for rule, _ in bad)


def test_crossing_mutation_rejected():
    p = load_pattern("fig15b")
    assert validate_pattern(p) == []
    # squeeze the two strand labels together: |i - j| becomes 1
    edges = tuple(
        PEdge(e.id, LabelExpr(0, 0), e.tail, e.head) if e.id in ("tya", "tyb") else e
        for e in p.edges
    )
    q = PseudoChart(
        id=p.id,
        vertices=p.vertices,
        edges=edges,
        opens=p.opens,
        regions=p.regions,
        uses_eps=p.uses_eps,
    )
    bad = validate_pattern(q)
    assert any(rule == "crossing-labels" for rule, _ in bad)
