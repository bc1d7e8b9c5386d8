from chartbench.scenarios import run_all, run_scenario, scenario_ids


def test_scenario_ids_cover_the_suite():
    ids = scenario_ids()
    for required in (
        "sec6-example",
        "lemma5.3-fig11a",
        "lemma5.3-fig11b",
        "sec7-claim3",
        "sec10-claim2",
        "sec11-fig25",
        "sec12-case-i",
        "sec12-case-ii",
    ):
        assert required in ids


def test_all_scenarios_pass():
    for result in run_all():
        assert result.ok, (result.id, result.steps)


def test_scenarios_are_deterministic():
    a = run_scenario("lemma5.3-fig11b")
    b = run_scenario("lemma5.3-fig11b")
    assert a.steps == b.steps


def test_fig11b_certificate_quote():
    r = run_scenario("lemma5.3-fig11b")
    assert any("not middle at w2" in s for s in r.steps)


def test_fig25_certificate_quote():
    r = run_scenario("sec11-fig25")
    assert any("not middle at w4" in s for s in r.steps)


def test_sec6_certificate_values():
    r = run_scenario("sec6-example")
    assert any("(2, 3)" in s for s in r.steps)


def test_sec7_arithmetic():
    r = run_scenario("sec7-claim3")
    assert any("3 + 3 + 0 + 1 = 7" in s for s in r.steps)
