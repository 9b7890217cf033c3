import itertools
import random

import pytest

from trizeta.curve import (CaseForm, Trinomial, case_matrix, classify, det2, genus, is_abs_irreducible,
                           parse_field, parse_trinomial)
from trizeta.errors import DomainError, ParseError
from trizeta.gf import make_field
from trizeta.polygon import i_of_curve

from _corpus import corpus

EXAMPLE_CURVE = "x*y^5 + x^2*y^3 + 1 over GF(13)"
KLEIN_13 = "x*y^3 + x^3 + y over GF(13)"


def test_parse_plain():
    t = parse_trinomial(KLEIN_13)
    assert sorted((a, b) for a, b, _ in t.monomials) == [(0, 1), (1, 3), (3, 0)]
    assert all(c == 1 for _, _, c in t.monomials)
    assert str(t) == KLEIN_13


def test_parse_homogeneous_input_is_dehomogenized():
    t = parse_trinomial("x*y^5 + x^2*y^3*z + z^6 over GF(13)")
    assert sorted((a, b) for a, b, _ in t.monomials) == [(0, 0), (1, 5), (2, 3)]
    assert any("dehomogenized" in n for n in t.notes)


def test_parse_coefficients_and_generator_powers():
    t = parse_trinomial("2x^2 - 3y + g^2 over GF(5)")
    assert sorted(t.monomials) == [(0, 0, 4), (0, 1, 2), (2, 0, 2)]
    t = parse_trinomial("g^1*x + y^2 + 1 over GF(2^2)")
    assert (1, 0, make_field(2, 2).generator) in t.monomials


def test_parse_common_monomial_is_removed():
    t = parse_trinomial("x^2 y + x y^2 + x^2 y^2 over GF(5)")
    assert sorted((a, b) for a, b, _ in t.monomials) == [(0, 1), (1, 0), (1, 1)]
    assert t.removed == (1, 1)


def test_parse_record_round_trip():
    t = parse_trinomial(EXAMPLE_CURVE)
    assert parse_trinomial(t.to_record()) == t
    rec = {"p": 2, "k": 2, "monomials": [{"ex": 1, "ey": 0, "coeff": "g^1"}, {"ex": 0, "ey": 2},
                                         {"ex": 0, "ey": 0, "coeff": [1, 0]}]}
    assert str(parse_trinomial(rec)) == "y^2 + g^1*x + 1 over GF(2^2)"


@pytest.mark.parametrize("bad", [
    "x^2 + 3x^2 over GF(5)",
    "x^2 + y + 1",
    "x^^2 + y + 1 over GF(5)",
    "x^2 + y + 1 over GF(6)",
    "x^2 + y^2 + 1 + x over GF(5)",
    "x + 5y + 1 over GF(5)",
    {"p": 5},
])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_trinomial(bad)


def test_parse_field():
    assert parse_field("GF(27)").order == 27
    assert parse_field("GF(3^3)").order == 27
    with pytest.raises(ParseError):
        parse_field("GF(12)")


@pytest.mark.parametrize("text,ok,reason", [
    ("x^3 + y^3 + 1 over GF(5)", True, None),
    ("x^2 + x*y + y^2 over GF(5)", False, "ac+bd = ad"),
    ("x^2 + y^2 + 1 over GF(2)", False, "divides"),
])
def test_irreducibility(text, ok, reason):
    got, why = is_abs_irreducible(parse_trinomial(text))
    assert got is ok
    if reason:
        assert reason in why


@pytest.mark.parametrize("text,case_id,params", [
    (EXAMPLE_CURVE, 4, (1, 5, 2, 3)),
    ("x^3 + y^3 + 1 over GF(7)", 1, (3, 3)),
    (KLEIN_13, 5, (1, 3, 3, 1)),
    ("x^3 + x - y^2 over GF(7)", 2, (2, 1, 3)),
])
def test_classification_examples(text, case_id, params):
    cf = classify(parse_trinomial(text))
    assert (cf.case_id, cf.params) == (case_id, params)


def test_case_matrices():
    klein = classify(parse_trinomial(KLEIN_13))
    assert klein.matrix == ((1, -2), (2, 3)) and det2(klein.matrix) == 7
    ex = classify(parse_trinomial(EXAMPLE_CURVE))
    assert ex.matrix == ((2, 1), (3, 5)) and det2(ex.matrix) == 7
    F = make_field(7)
    assert CaseForm(F, 1, (3, 4), 1, 1).matrix == ((3, 0), (0, 4))


def test_twist_assignment():
    F = make_field(13)
    cf = CaseForm(F, 5, (1, 3, 3, 1), 2, 3)
    _, (t1, t2), _ = case_matrix(cf)
    assert (t1, t2) == (F.inv(3), F.inv(2))
    cf = CaseForm(F, 3, (1, 1, 3), 2, 3)
    _, (t1, t2), _ = case_matrix(cf)
    assert (t1, t2) == (F.inv(2), F.inv(3))


@pytest.mark.parametrize("text,g", [(KLEIN_13, 3), (EXAMPLE_CURVE, 3), ("x^2 + y + 1 over GF(5)", 0)])
def test_genus_examples(text, g):
    assert genus(classify(parse_trinomial(text))).genus == g


def test_genus_error_when_p_divides_all_exponents():
    t = Trinomial.build(make_field(3), [(3, 0, 1), (0, 3, 1), (0, 0, 1)])
    with pytest.raises(DomainError):
        classify(t)


def test_classify_is_idempotent_on_corpus():
    for cf in corpus():
        again = classify(cf.normalized())
        assert (again.case_id, again.params, again.k1, again.k2) == (cf.case_id, cf.params, cf.k1, cf.k2)


HEADLINE = {
    1: lambda m, n: m * n,
    2: lambda m, n1, n: m * (n - n1),
    3: lambda m1, n1, n: m1 * n,
    4: lambda m1, n1, m, n: m * n1 - m1 * n,
    5: lambda m1, n1, m, n: m1 * n + m * n1 - m * n,
}


def test_determinant_is_headline_quantity():
    for cf in corpus():
        assert abs(det2(cf.matrix)) == HEADLINE[cf.case_id](*cf.params)


def test_genus_bounded_by_interior_points_and_equal_when_p_is_tame():
    for cf in corpus():
        rep = genus(cf)
        assert rep.genus <= i_of_curve(cf)
        if all(x % cf.p for x in (rep.det, rep.d1, rep.d2, rep.d3)):
            assert rep.genus == rep.i_C


def test_genus_equals_interior_count_on_exhaustive_tame_family():
    # over a large prime none of the gcds is divisible by p
    F = make_field(101)
    seen = 0
    for a, b, c, d in itertools.product(range(0, 5), repeat=4):
        t_terms = [(a, b, 1), (c, d, 1), (0, 0, 1)]
        if len({(a, b), (c, d), (0, 0)}) < 3 or a * d - b * c == 0:
            continue
        try:
            cf = classify(Trinomial.build(F, t_terms))
        except DomainError:
            continue
        rep = genus(cf)
        assert rep.genus == rep.i_C
        seen += 1
    assert seen > 50


def _permute_chart(t: Trinomial, perm, scale):
    """Rewrite the curve in another affine chart of the homogenization."""
    D = max(a + b for a, b, _ in t.monomials)
    F = t.field
    out = []
    for a, b, c in t.monomials:
        hom = (a, b, D - a - b)
        out.append((hom[perm[0]], hom[perm[1]], F.mul(c, scale)))
    return Trinomial.build(F, out)


def test_classification_is_invariant_under_variable_changes():
    rng = random.Random(3)
    for cf in corpus():
        t = cf.normalized()
        for _ in range(3):
            perm = rng.sample(range(3), 3)
            scale = rng.randrange(1, cf.q)
            other = classify(_permute_chart(t, perm, scale))
            assert (other.case_id, other.params) == (cf.case_id, cf.params)
            assert genus(other).genus == genus(cf).genus
