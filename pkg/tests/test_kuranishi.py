"""Maurer-Cartan recursion, obstruction ideals, smoothness reports."""

from fractions import Fraction
import json
import random

import pytest

from kuranil.algebra import (
    abelian,
    direct_sum,
    free_two_step,
    parse_complex_structure_file,
    parse_salamon,
    to_complex_structure,
)
from kuranil.exterior import BarredVectorError, ExteriorForm, VectorForm
from kuranil.groebner import buchberger, ideal_equal, normal_form
from kuranil.hodge import build_decomposition, build_theta_decomposition
from kuranil.kuranishi import (
    ClosednessViolation,
    KuranishiReport,
    MissingDegreeCap,
    NonParallelisableAmbient,
    ObstructionResult,
    analyze,
    analyze_general,
    generic_harmonic_element,
    mc_residual,
    obstruction_map,
    parallelisable_directions,
    phi_recursion,
    quadratic_obstruction_closed_form,
    random_central_assignment,
    schouten_general,
    schouten_parallelisable,
    smoothness_tests,
)
from kuranil.polyring import parse_polynomial

P = parse_polynomial


def _mixed7():
    return parse_complex_structure_file("dim 7\ndw6 = w1^w2\ndw7 = w3^w4 + cw1^w5\n")


def _cw(ambient, *indices):
    out = ExteriorForm.constant(ambient, 1)
    for index in indices:
        out = out.wedge(ExteriorForm.covector(ambient, index, barred=True))
    return out


# -- Schouten bracket --------------------------------------------------------


def test_schouten_parallelisable_is_wedge_tensor_bracket():
    L = parse_salamon("(0,0,12)")
    a = VectorForm.single(L, _cw(L, 1), 1)
    b = VectorForm.single(L, _cw(L, 2), 2)
    out = schouten_parallelisable(a, b)
    # cw1^cw2 (x) [X1, X2] = cw1^cw2 (x) (-X3)
    assert out == VectorForm.single(L, _cw(L, 1, 2).scale(Fraction(-1)), 3)


def test_schouten_parallelisable_symmetric_on_one_forms():
    L = parse_salamon("(0,0,12,13)")
    a = VectorForm.single(L, _cw(L, 1), 1)
    b = VectorForm.single(L, _cw(L, 2), 2)
    assert schouten_parallelisable(a, b) == schouten_parallelisable(b, a)


def test_schouten_parallelisable_rejects_mixed_structure():
    csa = _mixed7()
    a = VectorForm.single(csa, _cw(csa, 3), 1)
    with pytest.raises(NonParallelisableAmbient):
        schouten_parallelisable(a, a)


def test_schouten_parallelisable_rejects_barred_vectors():
    L = parse_salamon("(0,0,12)")
    a = VectorForm.single(L, _cw(L, 1), 1, barred=True)
    b = VectorForm.single(L, _cw(L, 2), 2)
    with pytest.raises(BarredVectorError):
        schouten_parallelisable(a, b)


def test_schouten_general_reduces_to_parallelisable():
    L = parse_salamon("(0,0,12,13)")
    rng = random.Random(55)
    for _ in range(5):
        a = VectorForm.zero(L)
        b = VectorForm.zero(L)
        for j in range(1, 5):
            a = a + VectorForm.single(
                L, _cw(L, rng.randint(1, 4)).scale(Fraction(rng.randint(-2, 2))), j)
            b = b + VectorForm.single(
                L, _cw(L, rng.randint(1, 4)).scale(Fraction(rng.randint(-2, 2))), j)
        assert schouten_general(a, b) == schouten_parallelisable(a, b)


def test_schouten_general_matches_stated_first_bracket():
    # [mu, mu] for mu = cw3 (x) X1 + cw4 (x) X2 picks up i_X del terms
    csa = _mixed7()
    mu = VectorForm.single(csa, _cw(csa, 3), 1) + VectorForm.single(csa, _cw(csa, 4), 2)
    out = schouten_general(mu, mu)
    assert out.component(6) == _cw(csa, 3, 4).scale(Fraction(-2))
    assert not out.component(1) and not out.component(2)


# -- generic harmonic element ------------------------------------------------


def test_generic_harmonic_element_spans_h1_times_vectors():
    for text, m in (("(0,0,12)", 2), ("(0,0,0,12)", 3), ("(0,0,12,13)", 2)):
        L = parse_salamon(text)
        dec = build_decomposition(L)
        phi1, variables = generic_harmonic_element(dec)
        assert len(variables) == m * L.dim
        assert dec.is_closed(phi1.component(1), 1)
        for j in range(1, L.dim + 1):
            comp = phi1.component(j)
            if comp:
                assert dec.in_space(comp, "H", 1)


# -- the recursion -----------------------------------------------------------


def test_phi_recursion_nilpotent_caps_at_nu():
    L = parse_salamon("(0,0,12,13)")
    series = phi_recursion(L)
    assert sorted(series.terms) == [1, 2, 3]  # nu = 3


def test_phi_recursion_frozen_low_degree_terms():
    L = parse_salamon("(0,0,12,13)")
    series = phi_recursion(L)
    expected_phi2 = (
        VectorForm.single(L, _cw(L, 3).scale(P("2*delta[12;12]")), 3)
        + VectorForm.single(L, _cw(L, 3).scale(P("2*delta[12;13]")), 4))
    assert series.phi(2) == expected_phi2
    expected_phi3 = VectorForm.single(L, _cw(L, 4).scale(P("4*t1_1*delta[12;12]")), 4)
    assert series.phi(3) == expected_phi3
    expected_h3 = VectorForm.single(
        L, _cw(L, 2, 3).scale(P("-4*t2_1*delta[12;12]")), 4)
    assert series.harmonic_parts[3] == expected_h3
    assert not series.harmonic_parts[2]
    assert not series.dropped_coexact


def test_phi_recursion_higher_degree_dropped_coexact_is_ideal_trivial():
    L = parse_salamon("(0,0,12,13,14)")
    series = phi_recursion(L)
    expected_phi4 = VectorForm.single(
        L, _cw(L, 5).scale(P("8*t1_1^2*delta[12;12]")), 5)
    assert series.phi(4) == expected_phi4
    assert sorted(series.dropped_coexact) == [4]
    expected_dropped = VectorForm.single(
        L, _cw(L, 2, 4).scale(P("-8*t1_1*t2_1*delta[12;12]")), 5)
    assert series.dropped_coexact[4] == expected_dropped
    # every dropped coefficient already lies in the obstruction ideal
    obstruction = obstruction_map(L, series=series)
    basis = buchberger(obstruction.generators)
    for vf in series.dropped_coexact.values():
        for j in range(1, L.dim + 1):
            for coeff in vf.component(j).terms.values():
                assert not normal_form(coeff, basis)


def test_phi_recursion_accepts_prebuilt_decomposition_and_initial():
    L = parse_salamon("(0,0,12)")
    dec = build_decomposition(L)
    phi1, _ = generic_harmonic_element(dec)
    series = phi_recursion(L, decomposition=dec, initial=phi1)
    assert series.phi(1) == phi1
    assert series.phi(2) == VectorForm.single(
        L, _cw(L, 3).scale(P("2*delta[12;12]")), 3)


def test_phi_recursion_theta_path_requires_degree_cap():
    csa = _mixed7()
    dec = build_theta_decomposition(csa, max_degree=2)
    with pytest.raises(MissingDegreeCap):
        phi_recursion(csa, decomposition=dec)


# -- obstruction ideals ------------------------------------------------------


def test_obstruction_empty_for_unobstructed_algebras():
    for L in (abelian(3), parse_salamon("(0,0,12)"), parse_salamon("(0,0,12,13,23)")):
        result = obstruction_map(L)
        assert result.is_zero
        assert result.generators == []
        assert result.degree_profile == []


def test_obstruction_known_quadratic_ideal():
    L = parse_salamon("(0,0,0,12)")
    result = obstruction_map(L)
    assert len(result.generators) == 2
    assert result.degree_profile == [2, 2]
    assert ideal_equal(result.generators, [P("delta[13;12]"), P("delta[23;12]")])


def test_obstruction_known_cubic_ideal():
    L = parse_salamon("(0,0,12,13)")
    result = obstruction_map(L)
    assert result.degree_profile == [3]
    assert ideal_equal(result.generators, [P("t2_1*delta[12;12]")])


def test_obstruction_mixed_degrees_with_inhomogeneous_generators():
    L = parse_salamon("(0,0,0,12,13+24)")
    result = obstruction_map(L)
    assert len(result.generators) == 6
    assert sorted(result.degree_profile) == [2, 2, 2, 3, 3, 3]
    assert any(not g.is_homogeneous() for g in result.generators)


def test_obstruction_generators_are_normalized_and_sorted():
    L = parse_salamon("(0,0,0,12,13)")
    gens = obstruction_map(L).generators
    for g in gens:
        assert g == g.normalized()
    degrees = [g.total_degree() for g in gens]
    assert degrees == sorted(degrees)


def test_quadratic_closed_form_equals_degree_two_truncation():
    for text in ("(0,0,12)", "(0,0,0,12)", "(0,0,12,13)", "(0,0,0,12,13)",
                 "(0,0,0,12,13+24)", "(0,0,12,13,14)"):
        L = parse_salamon(text)
        dec = build_decomposition(L)
        series = phi_recursion(L, decomposition=dec)
        quadratic = quadratic_obstruction_closed_form(L, decomposition=dec)
        truncation = ObstructionResult(
            _degree_two_coefficients(L, dec, series))
        assert sorted(map(str, quadratic.generators)) == \
            sorted(map(str, truncation.generators))


def _degree_two_coefficients(L, dec, series):
    from kuranil.kuranishi import _harmonic_coefficients
    return _harmonic_coefficients(dec, series.harmonic_parts[2])


def test_direct_sum_of_smooth_factors_is_obstructed():
    L = direct_sum(parse_salamon("(0,0,12)"), abelian(1))
    result = obstruction_map(L)
    assert not result.is_zero


# -- Maurer-Cartan residual --------------------------------------------------


def test_mc_residual_vanishes_after_harmonic_subtraction_low_nu():
    for text in ("(0,0,12)", "(0,0,0,12)", "(0,0,12,13)", "(0,0,12,13,23)"):
        L = parse_salamon(text)
        series = phi_recursion(L)
        assert mc_residual(L, series).is_zero


def test_mc_residual_without_subtraction_is_harmonic_sum():
    L = parse_salamon("(0,0,12,13)")
    series = phi_recursion(L)
    plain = mc_residual(L, series, subtract_harmonic=False)
    total = VectorForm.zero(L)
    for k in sorted(series.harmonic_parts):
        total = total + series.harmonic_parts[k]
    assert plain == total


def test_mc_residual_nu_four_equals_dropped_coexact_sum():
    for text in ("(0,0,12,13,14)", "(0,0,12,13,14+23)"):
        L = parse_salamon(text)
        series = phi_recursion(L)
        residual = mc_residual(L, series)
        total = VectorForm.zero(L)
        for vf in series.dropped_coexact.values():
            total = total + vf
        assert residual == total
        assert not residual.is_zero  # the defect is visible before reduction


# -- smoothness, directions, random points -----------------------------------


def test_smoothness_tests_tie_quadric_singularity_to_freeness():
    for text, free in (("(0,0,12)", True), ("(0,0,0,12)", False),
                       ("(0,0,12,13)", True), ("(0,0,0,0,12+34)", False)):
        L = parse_salamon(text)
        result = smoothness_tests(L)
        assert (result["free_verdict"] == "free") is free
        assert result["lambda2_singular"] == (not free)


def test_parallelisable_directions_span_center_tensor_harmonics():
    L = parse_salamon("(0,0,0,12)")
    out = parallelisable_directions(L)
    assert out["subspace_dim"] == 6  # m=3 harmonics x z=2 central vectors
    assert out["d"] == 6
    assert len(out["subspace"]) == 6
    dec = build_decomposition(L)
    for vf in out["subspace"]:
        for j in (1, 2):
            assert not vf.component(j)  # only central vectors appear


def test_random_central_assignment_annihilates_all_generators():
    rng = random.Random(2024)
    for text in ("(0,0,0,12)", "(0,0,12,13)", "(0,0,0,12,13)"):
        L = parse_salamon(text)
        gens = obstruction_map(L).generators
        for _ in range(5):
            point = random_central_assignment(L, rng=rng)
            for g in gens:
                assert g.evaluate(point) == 0


# -- reports -----------------------------------------------------------------


def test_analyze_report_content_and_round_trip():
    L = parse_salamon("(0,0,0,12)")
    report = analyze(L)
    assert report["nu"] == 2
    assert report["h1_theta"] == 12
    assert report["smooth"] is False
    assert report["kuranishi_dim"] is None
    assert report["cylinder_dim"] == 6
    assert report["hodge_numbers"] == [1, 3, 4, 3, 1]
    assert ideal_equal([P(s) for s in report["obstruction_generators"]],
                       [P("delta[13;12]"), P("delta[23;12]")])
    round_tripped = KuranishiReport.from_dict(json.loads(json.dumps(report.to_dict())))
    assert round_tripped == report
    text = report.to_text()
    assert "nu" in text and "h^1(Theta)" in text


def test_analyze_smooth_row_reports_kuranishi_dimension():
    report = analyze(parse_salamon("(0,0,12,13,23)"))
    assert report["smooth"] is True
    assert report["kuranishi_dim"] == report["h1_theta"] == 10
    assert report["annotations"] == []


def test_analyze_flags_published_overview_discrepancies():
    report = analyze(abelian(3))
    notes = [a for a in report["annotations"] if a["tag"] == "paper-discrepancy"]
    assert len(notes) == 1
    assert notes[0]["computed"] == 9 and notes[0]["published"] == 18
    heis = analyze(parse_salamon("(0,0,12)"))
    notes = [a for a in heis["annotations"] if a["tag"] == "paper-discrepancy"]
    assert len(notes) == 1
    assert notes[0]["computed"] == 6 and notes[0]["published"] == 10
    assert analyze(abelian(1))["annotations"] == []


def test_analyze_general_report_and_round_trip():
    csa = _mixed7()
    initial = (VectorForm.single(csa, _cw(csa, 3), 1)
               + VectorForm.single(csa, _cw(csa, 4), 2))
    report = analyze_general(csa, max_degree=3, initial=initial)
    assert report["h1_theta"] == 31
    assert report["kind"] == "generic"
    assert report["phi"]["2"] == "(2*cw7)*X6"
    assert "2" not in report["harmonic_parts"]  # no second-order obstruction
    assert report["harmonic_parts"]["3"] == "(4*cw3^cw5)*X6"
    assert list(report["obstruction_by_degree"]) == ["3"]
    assert len(report["obstruction_by_degree"]["3"]) == 1
    round_tripped = KuranishiReport.from_dict(json.loads(json.dumps(report.to_dict())))
    assert round_tripped == report
    assert "phi_2" in report.to_text()


def test_closedness_violation_carries_diagnostics():
    err = ClosednessViolation(3, "v-part", ["t1_1", "t2_2"])
    assert err.degree == 3
    assert "degree 3" in str(err)
