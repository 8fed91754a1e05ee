"""Nilpotent Lie algebras: parsing, structural invariants, complex structures."""

from fractions import Fraction

import pytest

from kuranil.algebra import (
    ComplexStructureAlgebra,
    JacobiViolation,
    LieAlgebra,
    NotIntegrable,
    NotNilpotent,
    StructureParseError,
    Subspace,
    abelian,
    direct_sum,
    free_two_step,
    parse_complex_structure_file,
    parse_salamon,
    parse_structure_file,
    to_complex_structure,
)


HEISENBERG = "(0,0,12)"


# -- Salamon parsing ---------------------------------------------------------


def test_parse_salamon_sign_convention():
    # dw3 = w1^w2 corresponds to [X1, X2] = -X3
    L = parse_salamon(HEISENBERG)
    assert L.dim == 3
    assert L.bracket(1, 2) == {3: Fraction(-1)}
    assert L.bracket(2, 1) == {3: Fraction(1)}
    assert L.bracket(1, 3) == {}


def test_parse_salamon_sum_and_coefficient_terms():
    L = parse_salamon("(0,0,0,0,12+34)")
    assert L.bracket(1, 2) == {5: Fraction(-1)}
    assert L.bracket(3, 4) == {5: Fraction(-1)}
    M = parse_salamon("(0,0,2*12)")
    assert M.bracket(1, 2) == {3: Fraction(-2)}
    N = parse_salamon("(0,0,21)")
    assert N.bracket(1, 2) == {3: Fraction(1)}  # reversed digits flip the sign


def test_parse_salamon_rejects_malformed():
    for bad in ("0,0,12", "()", "(0,0,11)", "(0,0,14)", "(0,0,1x)"):
        with pytest.raises(StructureParseError):
            parse_salamon(bad)


def test_parse_salamon_names_algebra_after_input():
    assert parse_salamon("(0,0,12,13)").name == "(0,0,12,13)"


# -- validation --------------------------------------------------------------


def test_validate_accepts_catalog_style_algebras():
    for text in (HEISENBERG, "(0,0,12,13)", "(0,0,0,12,13+24)",
                 "(0,0,12,13,23,14,25,24+15)"):
        parse_salamon(text).validate()


def test_validate_rejects_jacobi_violation():
    # Jacobi sum over (X1,X2,X3) leaves an uncancelled -X5 term
    brackets = {(1, 2): {3: Fraction(1)}, (1, 3): {4: Fraction(1)},
                (2, 3): {4: Fraction(1)}, (1, 4): {5: Fraction(1)}}
    with pytest.raises(JacobiViolation):
        LieAlgebra(5, brackets).validate()


def test_validate_rejects_non_nilpotent():
    # [X1,X2] = X2 is solvable but not nilpotent
    with pytest.raises(NotNilpotent):
        LieAlgebra(2, {(1, 2): {2: Fraction(1)}}).validate()
    LieAlgebra(2, {(1, 2): {2: Fraction(1)}}).validate(require_nilpotent=False)


# -- structural invariants ---------------------------------------------------


def test_central_series_and_nilpotency_index():
    L = parse_salamon("(0,0,12,13,14)")
    dims = [s.dim for s in L.descending_central_series()]
    assert dims == [5, 3, 2, 1, 0]
    assert L.nilpotency_index() == 4
    assert parse_salamon(HEISENBERG).nilpotency_index() == 2
    assert abelian(4).nilpotency_index() == 1


def test_center_and_derived_subalgebra():
    L = parse_salamon("(0,0,0,12,13)")
    center = L.center()
    assert center.dim == 2  # X4, X5
    assert center.contains([Fraction(0)] * 3 + [Fraction(1), Fraction(2)])
    assert not center.contains([Fraction(1)] + [Fraction(0)] * 4)
    derived = L.derived_algebra()
    assert derived.dim == 2
    assert L.derived_annihilator().dim == 3  # forms vanishing on [g, g]


def test_is_abelian():
    assert abelian(3).is_abelian()
    assert not parse_salamon(HEISENBERG).is_abelian()


def test_bracket_vectors_bilinear():
    L = parse_salamon("(0,0,12,13)")
    e1 = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    e2 = [Fraction(0), Fraction(1), Fraction(0), Fraction(0)]
    assert L.bracket_vectors(e1, e2) == [Fraction(0), Fraction(0),
                                         Fraction(-1), Fraction(0)]
    two_e1 = [x * 2 for x in e1]
    assert L.bracket_vectors(two_e1, e2) == [x * 2 for x in L.bracket_vectors(e1, e2)]


# -- constructions -----------------------------------------------------------


def test_free_two_step_matches_heisenberg():
    b2 = free_two_step(2)
    h = parse_salamon(HEISENBERG)
    assert b2.dim == h.dim == 3
    assert b2.bracket(1, 2) == {3: Fraction(1)}  # sign-free construction
    assert b2.nilpotency_index() == 2


def test_free_two_step_dimensions():
    assert free_two_step(3).dim == 6
    assert free_two_step(4).dim == 10
    with pytest.raises(ValueError):
        free_two_step(1)


def test_free_two_step_quotient_test_verdicts():
    assert abelian(3).free_two_step_quotient_test().verdict == "abelian"
    assert free_two_step(3).free_two_step_quotient_test().verdict == "free"
    assert parse_salamon(HEISENBERG).free_two_step_quotient_test().verdict == "free"
    # three generators but only one independent bracket: not free
    result = parse_salamon("(0,0,0,12)").free_two_step_quotient_test()
    assert result.verdict == "not_free"
    assert result.generator_count == 3
    assert result.expected_dim == 3
    assert result.quotient_dim == 1
    # two generators, full first quotient step: free despite being 3-step
    assert parse_salamon("(0,0,12,13,23)").free_two_step_quotient_test().verdict == "free"


def test_direct_sum_block_structure():
    L = direct_sum(parse_salamon(HEISENBERG), parse_salamon(HEISENBERG))
    assert L.dim == 6
    assert L.bracket(1, 2) == {3: Fraction(-1)}
    assert L.bracket(4, 5) == {6: Fraction(-1)}
    assert L.bracket(1, 5) == {}
    L.validate()


# -- structure-constant files ------------------------------------------------


def test_parse_structure_file_round_trip():
    L = parse_salamon("(0,0,0,12,13+24)")
    lines = [f"dim {L.dim}"]
    for (a, b), comp in sorted(L.brackets.items()):
        rhs = " + ".join(f"{c}*{k}" for k, c in sorted(comp.items()))
        lines.append(f"bracket {a} {b} = {rhs}")
    M = parse_structure_file("\n".join(lines))
    assert M.dim == L.dim and M.brackets == L.brackets


def test_parse_structure_file_rejects_malformed():
    with pytest.raises(StructureParseError):
        parse_structure_file("dim 3\nbracket 1 2 = bogus")


# -- complex structures ------------------------------------------------------


def test_to_complex_structure_classification():
    csa = to_complex_structure(parse_salamon(HEISENBERG))
    assert csa.classify() == "parallelisable"
    assert csa.n == 3


def test_complex_structure_file_mixed_terms():
    text = "dim 7\ndw6 = w1^w2\ndw7 = w3^w4 + cw1^w5\n"
    csa = parse_complex_structure_file(text)
    assert csa.n == 7
    assert csa.classify() == "generic"


def test_complex_structure_rejects_antiholomorphic_differential():
    with pytest.raises(NotIntegrable):
        parse_complex_structure_file("dim 3\ndw3 = cw1^cw2\n")


def test_complex_structure_brackets_match_stated_example():
    # dw7 = ... + cw1^w5 implies [conj(X5), X1] = conj(X7) up to sign
    csa = parse_complex_structure_file("dim 7\ndw6 = w1^w2\ndw7 = w3^w4 + cw1^w5\n")
    out = csa.vector_bracket(5, True, 1, False)
    assert out == {(7, True): Fraction(1)}


def test_subspace_membership_api():
    rows = [[Fraction(1), Fraction(0), Fraction(1)]]
    space = Subspace.from_vectors(3, rows)
    assert space.dim == 1
    assert space.contains([Fraction(2), Fraction(0), Fraction(2)])
    assert not space.contains([Fraction(1), Fraction(0), Fraction(0)])
