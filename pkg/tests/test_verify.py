import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qshuffle.exactalg import LaurentPoly, QVAR, RationalFunction
from qshuffle.quiver import builtin, normal_weights, kac_moody_cartan, quiver_from_dict, triple_quiver
from qshuffle.roots import Root
from qshuffle.shuffle import ShuffleAlgebra, q_binomial, q_int
from qshuffle.verify import (
    CheckReport,
    check_dims,
    check_drinfeld,
    check_kernel_derivation,
    check_qbinomial_pascal,
    check_row_recursion,
    check_row_values,
    check_row_x_independence,
    check_serre_cubic,
    check_serre_quartic_rational,
    check_serre_quartic_shuffle,
    combo_add,
    combo_mul,
    combo_scale,
    combo_weight,
    evaluate_combo,
    letter,
    quartic_display,
    quartic_swapped_residual_verbatim,
    reduce_quartic_words,
    run_suite,
    suite_verdict,
    supercommutator,
    symmetrized_row,
    _row_recursion_residual,
    _skewed_bullet_a2,
    _skewed_weights_a2,
    _super_algebra,
)


def qp(c, e):
    return LaurentPoly.term(c, [(QVAR, e)])


def bullet(name):
    return ShuffleAlgebra("bullet", builtin(name)[0])


# -- reports ----------------------------------------------------------------------


def test_report_shape_and_verdict_guard():
    r = CheckReport("x/y", {"a": 1}, "proved", "0", 3)
    assert r.to_dict() == {"id": "x/y", "params": {"a": 1}, "verdict": "proved",
                           "witness": "0", "ms": 3}
    with pytest.raises(AssertionError):
        CheckReport("x/y", {}, "maybe", None, 0)


# -- the word combination engine -----------------------------------------------------


def test_combo_arithmetic():
    a, b = letter("1"), letter("2")
    ab = combo_mul(a, b)
    assert ab == {("1", "2"): LaurentPoly.const(1)}
    s = combo_add(ab, combo_scale(ab, -1))
    assert s == {}
    assert combo_weight(combo_mul(ab, a)) == {"1": 2, "2": 1}
    assert combo_scale(ab, qp(1, 2)) == {("1", "2"): qp(1, 2)}


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from("012"), min_size=1, max_size=3),
       st.lists(st.sampled_from("012"), min_size=1, max_size=3))
def test_combo_weight_is_additive(u, v):
    a = {tuple(u): LaurentPoly.const(1)}
    b = {tuple(v): LaurentPoly.const(1)}
    w = combo_weight(combo_mul(a, b))
    for k in set(u) | set(v):
        assert w.get(k, 0) == u.count(k) + v.count(k)


def test_supercommutator_small_case():
    alg = _super_algebra("super:2|1:++-")
    got = supercommutator(letter("1"), letter("0"), alg.quiver, alg.cartan)
    # (alpha_1 : alpha_0) = -1 and vertex 0 is even, so no sign
    assert got == {("1", "0"): LaurentPoly.const(1), ("0", "1"): qp(-1, -1)}


def test_nested_bracket_words_gl21():
    alg = _super_algebra("super:2|1:++-")
    q, c = alg.quiver, alg.cartan
    nested = supercommutator(
        letter("1"),
        supercommutator(letter("2"),
                        supercommutator(letter("1"), letter("0"), q, c), q, c),
        q, c)
    assert nested == {
        ("0", "1", "2", "1"): qp(1, -1),
        ("1", "0", "1", "2"): qp(-1, -1),
        ("1", "0", "2", "1"): LaurentPoly.const(-1),
        ("1", "1", "0", "2"): LaurentPoly.const(1),
        ("1", "2", "0", "1"): qp(-1, -1),
        ("1", "2", "1", "0"): LaurentPoly.const(1),
        ("2", "0", "1", "1"): qp(1, -1),
        ("2", "1", "0", "1"): LaurentPoly.const(-1),
    }
    # its image does not vanish: gl(2|1) has no quartic relation instance
    assert not evaluate_combo(alg, nested).is_zero()


def test_quartic_reduction_matches_display_gl22():
    alg = _super_algebra("super:2|2:++--")
    q, c = alg.quiver, alg.cartan
    nested = supercommutator(
        letter("1"),
        supercommutator(letter("2"),
                        supercommutator(letter("1"), letter("0"), q, c), q, c),
        q, c)
    display = quartic_display("1", "2", "0")
    assert reduce_quartic_words(nested, "1", "2", "0") == display
    assert display[("1", "2", "0", "1")] == -q_int(2)
    assert sorted(display) == [("0", "1", "2", "1"), ("1", "0", "1", "2"),
                               ("1", "2", "0", "1"), ("1", "2", "1", "0"),
                               ("2", "1", "0", "1")]


def test_reduce_quartic_words_rules():
    one = LaurentPoly.const(1)
    a = {("1", "1", "0", "2"): one,          # adjacent odd square: dropped
         ("0", "2", "0", "1"): one}          # "02" bubbles to "20" twice over
    out = reduce_quartic_words(a, "1", "2", "0")
    assert out == {("2", "0", "0", "1"): one}


# -- interchange relations ----------------------------------------------------------


def test_drinfeld_bullet_a2_all_pairs():
    alg = bullet("a2")
    for i, j in (("1", "1"), ("1", "2"), ("2", "2")):
        r = check_drinfeld(alg, i, j, (-1, 1))
        assert r.verdict == "proved" and r.witness == "0"
    r = check_drinfeld(alg, "1", "1", (-1, 1))
    assert r.params["a"] == 2 and r.params["m"] == 0 and r.params["sign"] == 1


def test_drinfeld_diamond_triples():
    from qshuffle.verify import _diamond_algebra
    d1 = _diamond_algebra("a1")
    assert check_drinfeld(d1, "1", "1", (-1, 1)).verdict == "proved"
    d2 = _diamond_algebra("a2")
    r = check_drinfeld(d2, "1", "2", (-1, 1))
    assert r.verdict == "proved"
    assert r.params["m"] != 0  # the weighted kernel carries a t-shift


def test_drinfeld_super_gl21():
    alg = _super_algebra("super:2|1:++-")
    for i, j in (("0", "0"), ("0", "1"), ("1", "1"), ("1", "2"), ("2", "2")):
        assert check_drinfeld(alg, i, j, (-1, 1)).verdict == "proved"
    r = check_drinfeld(alg, "1", "1", (-1, 1))
    assert r.params["sign"] == -1  # odd-odd pair anticommutes


def test_drinfeld_labelled_id():
    r = check_drinfeld(bullet("a2"), "1", "2", (0, 0), label="a2")
    assert r.check_id == "drinfeld/bullet:a2/1,2"
    assert r.params["algebra"] == "a2"


def test_drinfeld_refutes_corrupted_kernel():
    r = check_drinfeld(_skewed_bullet_a2(), "1", "2", (-1, 1))
    assert r.verdict == "refuted"
    assert r.witness not in (None, "0")


def test_drinfeld_input_errors():
    alg = bullet("a2")
    with pytest.raises(ValueError):
        check_drinfeld(alg, "9", "1")
    with pytest.raises(ValueError):
        check_drinfeld(alg, "1", "2", (2, -2))
    star = ShuffleAlgebra("star", triple_quiver(builtin("a2")[0]),
                          normal_weights(triple_quiver(builtin("a2")[0]),
                                         kac_moody_cartan(builtin("a2")[0])))
    with pytest.raises(ValueError):
        check_drinfeld(star, "1", "2")


# -- cubic Serre relations -----------------------------------------------------------


def test_cubic_serre_bullet():
    r = check_serre_cubic(bullet("a2"), "1", "2")
    assert r.verdict == "proved" and r.params["l"] == 2
    r = check_serre_cubic(bullet("kronecker"), "1", "2")
    assert r.verdict == "proved" and r.params["l"] == 3


def test_cubic_serre_skips_without_relation():
    r = check_serre_cubic(bullet("a3"), "1", "3")  # a_13 = 0
    assert r.verdict == "skipped" and r.witness is None


def test_cubic_serre_super():
    g21 = _super_algebra("super:2|1:++-")
    assert check_serre_cubic(g21, "0", "1").verdict == "proved"
    r = check_serre_cubic(g21, "1", "0")  # odd i has no cubic relation
    assert r.verdict == "skipped"
    g22 = _super_algebra("super:2|2:++--")
    assert check_serre_cubic(g22, "2", "1").verdict == "proved"
    assert check_serre_cubic(g22, "2", "3").verdict == "proved"


def test_cubic_serre_refutes_corrupted_kernel():
    r = check_serre_cubic(_skewed_bullet_a2(), "1", "2")
    assert r.verdict == "refuted" and r.witness not in (None, "0")


def test_cubic_serre_errors():
    with pytest.raises(ValueError):
        check_serre_cubic(bullet("a2"), "1", "1")
    with pytest.raises(ValueError):
        check_serre_cubic(bullet("a2"), "1", "7")


# -- quartic Serre relation ----------------------------------------------------------


def test_quartic_rational_identities():
    r = check_serre_quartic_rational()
    assert r.verdict == "proved"
    assert r.params["swapped_verbatim_zero"] is False
    assert not quartic_swapped_residual_verbatim().is_zero()


def test_quartic_rational_mutation_refuted():
    r = check_serre_quartic_rational(mutate="flat-two")
    assert r.verdict == "refuted" and r.witness not in (None, "0")
    with pytest.raises(ValueError):
        check_serre_quartic_rational(mutate="nonsense")


def test_quartic_shuffle_gl22_strict():
    g22 = _super_algebra("super:2|2:++--")
    r = check_serre_quartic_shuffle(g22, "1")
    assert r.verdict == "proved"
    assert r.params["five_term_match"] is True


def test_quartic_shuffle_gl21_vacuous():
    g21 = _super_algebra("super:2|1:++-")
    r = check_serre_quartic_shuffle(g21, "1")
    assert r.verdict == "skipped"
    assert r.params["raw_bracket_zero"] is False


def test_quartic_shuffle_dropped_term_refuted():
    g22 = _super_algebra("super:2|2:++--")
    r = check_serre_quartic_shuffle(g22, "1", drop_term=True)
    assert r.verdict == "refuted" and r.witness not in (None, "0")


def test_quartic_shuffle_errors():
    g22 = _super_algebra("super:2|2:++--")
    with pytest.raises(ValueError):
        check_serre_quartic_shuffle(bullet("a2"), "1")
    with pytest.raises(ValueError):
        check_serre_quartic_shuffle(g22, "2")  # even vertex
    with pytest.raises(ValueError):
        check_serre_quartic_shuffle(g22, "3")  # chain endpoint
    with pytest.raises(ValueError):
        check_serre_quartic_shuffle(g22, "9")


# -- the symmetrized row family ------------------------------------------------------


def test_row_base_values():
    assert symmetrized_row(0, 5) == RationalFunction.const(1)
    for n in (-3, -2, -1, 1, 2, 3):
        assert symmetrized_row(1, n) == RationalFunction.from_poly(
            qp(1, n) - qp(1, -n))
    for l in (1, 2, 3):
        assert symmetrized_row(l, 0).is_zero()
    with pytest.raises(ValueError):
        symmetrized_row(-1, 0)


def test_row_l2_frozen_values():
    assert symmetrized_row(2, 1).is_zero()
    num = qp(1, 8) + qp(-2, 4) + qp(1, 0)
    assert symmetrized_row(2, 2) == RationalFunction(num, qp(1, 4))


def test_row_recursion_residuals():
    assert _row_recursion_residual(2, 2).is_zero()
    assert _row_recursion_residual(3, 2).is_zero()
    assert not _row_recursion_residual(2, 2, skew=True).is_zero()


def test_row_checkers():
    assert check_qbinomial_pascal(5).verdict == "proved"
    assert check_row_values(3).verdict == "proved"
    assert check_row_x_independence(3, 2).verdict == "proved"
    assert check_row_recursion(3, 2).verdict == "proved"


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=6))
def test_pascal_rule_pointwise(l, h):
    if h > l:
        assert q_binomial(l, h).is_zero()
        return
    lhs = q_binomial(l, h)
    rhs = q_binomial(l - 1, h) * qp(1, -h) + q_binomial(l - 1, h - 1) * qp(1, l - h)
    assert (lhs - rhs).is_zero()


# -- kernel derivations ---------------------------------------------------------------


def test_kernel_derivation_a2():
    r = check_kernel_derivation(builtin("a2")[0])
    assert r.verdict == "proved"
    assert r.params["degree_pairs"] == 81
    assert r.params["normal"] is True
    assert r.params["sub_checks"] == ["star-twist", "circ-char", "t-to-one"]


def test_kernel_derivation_a1():
    r = check_kernel_derivation(builtin("a1")[0])
    assert r.verdict == "proved" and r.params["degree_pairs"] == 9


def test_kernel_derivation_skewed_weights_refuted():
    tq, wf = _skewed_weights_a2()
    r = check_kernel_derivation(tq, wf)
    assert r.verdict == "refuted"
    assert r.params["sub_check"] == "t-to-one"
    assert r.witness not in (None, "0")


def test_kernel_derivation_input_errors():
    with pytest.raises(ValueError):
        check_kernel_derivation(builtin("a2")[0], entries=3)
    partial, _, _ = quiver_from_dict({
        "vertices": ["1", "2"],
        "arrows": [{"id": "a", "src": "1", "tgt": "2"},
                   {"id": "a*", "src": "2", "tgt": "1"},
                   {"id": "w1", "src": "1", "tgt": "1"}],
        "pairs": [["a", "a*"]],
    })
    with pytest.raises(ValueError):
        check_kernel_derivation(partial)
    tq = triple_quiver(builtin("a2")[0])
    wf = normal_weights(tq, kac_moody_cartan(builtin("a2")[0]))
    bad_q = dict(wf.qexp)
    bad_q[tq.pairs[0][0]] += 1  # q-exponents of a pair no longer sum to 2
    with pytest.raises(ValueError):
        check_kernel_derivation(tq, type(wf)(bad_q, wf.texp))


# -- graded dimensions ----------------------------------------------------------------


def test_dims_small_window():
    r = check_dims("a1", qmax=4, zmax=4)
    assert r.verdict == "proved" and r.params["coefficients_checked"] > 0
    assert check_dims("a2", qmax=4, zmax=4).verdict == "proved"


def test_dims_spurious_root_refuted():
    r = check_dims("a1", qmax=4, zmax=4, extra_roots=(Root((1,), 2),))
    assert r.verdict == "refuted"
    assert r.params["mismatches"]
    assert r.witness not in (None, "0")


def test_dims_unknown_type():
    with pytest.raises(ValueError):
        check_dims("e8")


# -- suites ---------------------------------------------------------------------------


def test_suite_errors():
    with pytest.raises(ValueError):
        run_suite("everything")
    with pytest.raises(ValueError):
        run_suite("dims", {"qqmax": 3})
    with pytest.raises(ValueError):
        run_suite("dims", {"window": (2, -2)})


def test_suite_corrupt_quiver_file_is_an_input_error(tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    with pytest.raises(ValueError):
        run_suite("super-all", {"quiver": str(bad)})


def test_suite_verdict_aggregation():
    mk = lambda v: CheckReport("c/x", {}, v, "0" if v == "proved" else None, 0)
    assert suite_verdict([mk("proved"), mk("proved")]) == "proved"
    assert suite_verdict([mk("proved"), mk("skipped")]) == "skipped"
    refuted = CheckReport("c/y", {}, "refuted", "1", 0)
    assert suite_verdict([mk("proved"), refuted]) == "refuted"


def test_serre_suite_runs_clean_and_deterministic():
    a = run_suite("serre-all")
    b = run_suite("serre-all")
    assert suite_verdict(a) == "proved"
    ids = [r.check_id for r in a]
    assert len(set(ids)) == len(ids)
    strip = lambda rs: [{k: v for k, v in r.to_dict().items() if k != "ms"}
                        for r in rs]
    assert json.dumps(strip(a), sort_keys=True) == json.dumps(strip(b), sort_keys=True)


def test_controls_suite_all_proved():
    reports = run_suite("controls")
    assert len(reports) == 7
    assert suite_verdict(reports) == "proved"
    for r in reports:
        assert r.params["inner"]["verdict"] == "refuted"
        assert r.params["inner"]["witness"] not in (None, "0")


def test_dims_suite_with_config():
    reports = run_suite("dims", {"qmax": 4, "zmax": 4})
    assert suite_verdict(reports) == "proved"
    assert [r.check_id for r in reports] == ["dims/a1", "dims/a2"]
    assert all(r.params["qmax"] == 4 for r in reports)
