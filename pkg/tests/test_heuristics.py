import random

import pytest

from binomiality import PolySystem, detect_binomial_homogeneous, load_system
from binomiality.certificates import Presentation
from binomiality.heuristics import (BINOMIAL, INCONCLUSIVE, NOT_BINOMIAL, PipelineReport, RecipeOptions,
                                    RewriteRule, homogenize_and_detect, linear_pass, rule_from_binomial,
                                    run_recipe, substitute, substitute_presentation, substitution_search)
from binomiality.polynomial import mono_divides, same_up_to_scaling

MODIFICATION_PARAMS = ("k12", "k21", "k23", "k32", "k34", "k56", "k65", "k67", "k89", "k98", "k910", "k1112",
                 "k1211", "k1213")


def strs(ps):
    return [p.to_str() for p in ps]


def contains_up_to_scaling(gens, expected):
    return all(any(same_up_to_scaling(g, e) for g in gens) for e in expected)


# -- linear pass ------------------------------------------------------------

def test_linear_pass_isolates_linear_binomial(fixture_path):
    out = linear_pass(load_system(fixture_path("hidden_homogeneous.sys")))
    assert sorted(strs(out)) == sorted(["x - y", "x^2 + y^2 + z^2"])


def test_linear_pass_finds_binomials(fixture_path):
    out = linear_pass(load_system(fixture_path("affine_linear.sys")))
    assert strs(out) == ["a*b + 1/2", "x + 1/2", "y + 1/2"]


def test_linear_pass_leaves_reduced_binomials_alone():
    S = PolySystem.from_strings("xyz", ["x^2 - y", "x*z + 1"])
    assert linear_pass(S).generators == S.generators


# -- homogenize and detect --------------------------------------------------

def test_homogenized_failure_is_inconclusive(fixture_path):
    hd = homogenize_and_detect(load_system(fixture_path("affine_linear.sys")))
    assert hd.detection.verdict == "No"
    assert hd.verdict == INCONCLUSIVE


def test_homogenize_and_detect_simple():
    hd = homogenize_and_detect(PolySystem.from_strings("x", ["2*x + 1"]))
    assert hd.verdict == BINOMIAL and strs(hd.binomials) == ["x + 1/2"]
    assert hd.certificate.verify()
    hd = homogenize_and_detect(PolySystem.from_strings("xy", ["x^2 - 3*y^2"]))
    assert hd.verdict == BINOMIAL and strs(hd.binomials) == ["x^2 - 3*y^2"]


# -- substitution -----------------------------------------------------------

def test_substitute_simple_rule():
    S = PolySystem.from_strings("xy", ["x - y", "x^2"])
    rule = rule_from_binomial(S[0], 0, eliminate=(1, 0))
    assert strs(substitute(S, rule)) == ["x - y", "y^2"]


def test_non_terminating_rule_rejected():
    S = PolySystem.from_strings("xy", ["x - x*y", "x^2"])
    rule = rule_from_binomial(S[0], 0, eliminate=(1, 0))
    assert not rule.admissible()
    with pytest.raises(ValueError):
        substitute(S, rule)
    with pytest.raises(ValueError):
        substitute(S, RewriteRule((0, 1), (1, 0), 1, 1))  # not read off generator 1


def test_monomial_rule_kills_terms():
    S = PolySystem.from_strings("xy", ["x*y", "x^2*y + y^3"])
    rule = rule_from_binomial(S[0], 0)
    assert rule.target is None
    assert strs(substitute(S, rule)) == ["x*y", "y^3"]


def test_modification_substitutions_match_hand_elimination(fixture_path):
    S = load_system(fixture_path("modification.sys"))
    ring = S.ring

    def mono(text):
        return next(iter(ring.parse(text).terms))

    pres = Presentation.start(S)
    for idx, elim in ((5, "x4*x5"), (7, "x8"), (8, "x9")):
        pres = substitute_presentation(pres, rule_from_binomial(pres.generators[idx], idx, mono(elim)))
    gens = pres.generators

    def P(s):
        return ring.parse(s, MODIFICATION_PARAMS)

    assert gens[0] == P("-k12*x1 + k21*x2")
    assert gens[1] == P("k12*x1 - (k21 + k23)*x2 + k32*x3 + k67*x6")
    assert gens[2] == P("k23*x2 - (k32 + k34)*x3")
    assert gens[3] == P("k34*x3 - k67*x6")
    assert gens[4] == P("-k67*x6 + k1112*k1213/(k1211 + k1213)*x1*x7 + k89*k910/(k910 + k98)*x3*x7")
    assert gens[6] == P("k67*x6 - k1112*k1213/(k1211 + k1213)*x1*x7 - k89*k910/(k910 + k98)*x3*x7")
    assert pres.certificate().verify()


def test_modification_search_reaches_binomial_presentation(fixture_path):
    S = load_system(fixture_path("modification.sys"))
    rep = substitution_search(S)
    assert rep.verdict == BINOMIAL and len(rep.generators) == 7
    ring = S.ring

    def P(s):
        return ring.parse(s, MODIFICATION_PARAMS)

    f5 = P("-k67*x6 + (k1112*k1213*k21/(k12*(k1211 + k1213)) + k23*k89*k910/((k32 + k34)*(k910 + k98)))*x2*x7")
    expected = [P("-k12*x1 + k21*x2"), P("-k34*x3 + k67*x6"), P("k23*x2 - (k32 + k34)*x3"), f5,
                S[5], S[7], S[8]]
    assert contains_up_to_scaling(rep.generators, expected)
    assert rep.certificates[0].verify()


def test_all_binomial_input_unchanged():
    S = PolySystem.from_strings("xy", ["x - 2", "x*y - y^2"])
    rep = substitution_search(S)
    assert rep.verdict == BINOMIAL and rep.generators == list(S.generators) and rep.rounds == []


def test_rewriting_is_ideal_preserving_on_random_binomials(seed):
    r = random.Random(seed)
    ring_vars = "xyz"
    for _ in range(60):
        S = PolySystem.from_strings(ring_vars, [])
        ring = S.ring
        monos = [m for d in (1, 2) for m in ring.monomials_of_degree(d)] + [ring.one()]
        u, v = r.sample(monos, 2)
        b = ring.monomial(u) - ring.monomial(v, r.choice([1, 2, -3]))
        others = [sum((ring.monomial(m, r.randint(-2, 2)) for m in r.sample(monos, 3)), ring.zero())
                  for _ in range(2)]
        S = S.with_generators([b] + others)
        for elim in (u, v):
            rule = rule_from_binomial(b, 0, elim)
            if not rule.admissible():
                continue
            pres = substitute_presentation(Presentation.start(S), rule)
            assert pres.certificate().verify()
            # rewriting ran to its fixpoint: no surviving term is divisible by the source
            for g in pres.generators[1:]:
                assert not any(mono_divides(elim, m) for m in g.terms)


# -- recipe ------------------------------------------------------------------

def test_recipe_stage_one(fixture_path):
    rep = run_recipe(load_system(fixture_path("affine_linear.sys")))
    assert rep.verdict == BINOMIAL and [s.stage for s in rep.stages] == ["linear"]
    assert strs(rep.generators) == ["a*b + 1/2", "x + 1/2", "y + 1/2"]


def test_recipe_recovers_homogeneous_generators(fixture_path):
    S = load_system(fixture_path("hidden_homogeneous.sys"))
    rep = run_recipe(S)
    assert rep.verdict == BINOMIAL
    assert rep.stages[1].stage == "homogenize" and rep.stages[1].outcome == BINOMIAL
    assert contains_up_to_scaling(rep.binomials, [S.ring.parse("x - y"), S.ring.parse("2*x^2 + z^2")])
    assert rep.certificates[0].verify()


def test_recipe_sphere_is_proven(fixture_path):
    rep = run_recipe(load_system(fixture_path("sphere.sys")))
    assert rep.verdict == NOT_BINOMIAL


def test_recipe_inconclusive_keeps_partial_result():
    S = PolySystem.from_strings("xy", ["x^2 + y + 1"])
    rep = run_recipe(S)
    assert rep.verdict == INCONCLUSIVE
    assert rep.stages[-1].stage == "groebner" and rep.stages[-1].outcome == "skipped"
    assert rep.certificates[0].verify()
    rep = run_recipe(S, RecipeOptions(enable_gb_oracle=True))
    assert rep.verdict == NOT_BINOMIAL and rep.stages[-1].stage == "groebner"


def test_recipe_groebner_stage_settles_what_heuristics_miss():
    # x*(x + y) = 0 and y*(x + y) = 1 force x = 0, so the ideal is <x, y^2 - 1>
    S = PolySystem.from_strings("xy", ["x^2 + x*y", "x*y + y^2 - 1"])
    assert run_recipe(S).verdict == INCONCLUSIVE
    rep = run_recipe(S, RecipeOptions(enable_gb_oracle=True))
    assert rep.verdict == BINOMIAL and rep.stages[-1].stage == "groebner"
    assert strs(rep.generators) == ["y^2 - 1", "x"]
    assert rep.certificates[0].verify()


def test_recipe_matches_detector_on_homogeneous_input(seed):
    from test_oracle_agreement import random_homogeneous_system

    r = random.Random(seed + 7)
    for _ in range(60):
        S = random_homogeneous_system(r)
        want = detect_binomial_homogeneous(S).verdict
        rep = run_recipe(S)
        assert rep.verdict == (BINOMIAL if want == "Yes" else NOT_BINOMIAL)
        assert rep.certificates[0].verify()


def test_report_json_round_trip(fixture_path):
    for name in ("affine_linear.sys", "hidden_homogeneous.sys", "sphere.sys", "modification.sys"):
        rep = run_recipe(load_system(fixture_path(name)))
        again = PipelineReport.from_json(rep.to_json())
        assert again.to_json() == rep.to_json()
        assert again.verdict == rep.verdict and again.generators == rep.generators
