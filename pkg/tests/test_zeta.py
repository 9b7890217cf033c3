import math
import random
from fractions import Fraction

import numpy as np
import pytest

from trizeta._arith import p_part
from trizeta.curve import classify, genus, parse_trinomial
from trizeta.errors import CapExceeded, DomainError, RoundingError
from trizeta.polygon import i_of_curve
from trizeta.zeta import (CharacterOrbit, brute_count, count_at_infinity, enumerate_orbits, is_nondegenerate,
                          l_polynomial, m_formula, m_of, m_of_curve, minimal_negative_exponent, mu, orbit_factor,
                          predicted_affine_count, snf_2x2, toric_count)

from _corpus import corpus

KLEIN_13 = "x*y^3 + x^3 + y over GF(13)"
FERMAT_2 = "x^3 + y^3 + 1 over GF(2)"
LINE_5 = "x^2 + y + 1 over GF(5)"
ELLIPTIC_7 = "x^3 + x - y^2 over GF(7)"


def cf_of(text):
    return classify(parse_trinomial(text))


def _mat(X, Y):
    return [[sum(X[i][k] * Y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def _check_snf(A):
    r = snf_2x2(A)
    assert abs(r.U[0][0] * r.U[1][1] - r.U[0][1] * r.U[1][0]) == 1
    assert abs(r.V[0][0] * r.V[1][1] - r.V[0][1] * r.V[1][0]) == 1
    assert _mat(_mat(r.U, A), r.V) == [[r.D[0], 0], [0, r.D[1]]]
    d = math.gcd(*A[0], *A[1])
    assert r.D[0] == d and r.D[1] % r.D[0] == 0
    assert r.D[0] * r.D[1] == abs(A[0][0] * A[1][1] - A[0][1] * A[1][0])
    return r


def test_snf_examples():
    assert _check_snf([[1, -2], [2, 3]]).D == (1, 7)
    assert _check_snf([[2, 0], [0, 4]]).D == (2, 4)
    assert _check_snf([[6, 0], [0, 4]]).D == (2, 12)
    with pytest.raises(DomainError):
        snf_2x2([[1, 2], [2, 4]])


def test_snf_random():
    rng = random.Random(11)
    done = 0
    while done < 500:
        A = [[rng.randint(-30, 30) for _ in range(2)] for _ in range(2)]
        if A[0][0] * A[1][1] == A[0][1] * A[1][0]:
            continue
        _check_snf(A)
        done += 1


@pytest.mark.parametrize("xi,q,expected", [
    ((Fraction(1, 3), Fraction(1, 3)), 4, 1),
    ((Fraction(2, 7), Fraction(1, 7)), 13, 2),
    ((Fraction(1, 5), Fraction(2, 5)), 2, 4),
])
def test_mu_examples(xi, q, expected):
    assert mu(xi, q) == expected


def test_mu_rejects_p_in_denominator():
    with pytest.raises(DomainError):
        mu((Fraction(1, 2), Fraction(0)), 4)


def test_mu_and_m_are_invariant_under_unimodular_change():
    rng = random.Random(5)
    for _ in range(300):
        while True:
            V = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
            if abs(V[0][0] * V[1][1] - V[0][1] * V[1][0]) == 1:
                break
        den = rng.randint(1, 40)
        q = rng.choice([x for x in (2, 3, 4, 5, 7, 8, 9, 11, 13) if math.gcd(x, den) == 1] or [1])
        if q == 1:
            continue
        xi = (Fraction(rng.randrange(den), den), Fraction(rng.randrange(den), den))
        image = tuple((V[i][0] * xi[0] + V[i][1] * xi[1]) % 1 for i in range(2))
        assert m_of(image) == m_of(xi)
        assert mu(image, q) == mu(xi, q)


def test_orbit_examples():
    orbits = enumerate_orbits(cf_of(KLEIN_13))
    assert len(orbits) == 3 and all(o.mu == 2 and o.nu == 1 for o in orbits)
    members = sorted(x for o in orbits for x in o.members)
    assert members == sorted(((2 * j % 7) / Fraction(7), Fraction(j, 7)) for j in range(1, 7))
    orbits = enumerate_orbits(cf_of(FERMAT_2))
    assert [o.members for o in orbits] == [((Fraction(1, 3), Fraction(1, 3)), (Fraction(2, 3), Fraction(2, 3)))]
    assert enumerate_orbits(cf_of(LINE_5)) == []


def test_orbit_representative_is_smallest_member():
    for cf in corpus():
        for o in enumerate_orbits(cf):
            assert o.rep == min(o.members) and len(o.members) == o.mu


def test_orbit_factor_examples():
    cf = cf_of(KLEIN_13)
    for o in enumerate_orbits(cf):
        f = orbit_factor(o, cf)
        assert f.exact == 13 and f.method == "exact"
        g = orbit_factor(o, cf, method="gauss")
        assert abs(g.C - 13) < 1e-6 * 13
        assert orbit_factor(o, cf, method="both").exact == 13
    bad = CharacterOrbit((Fraction(0), Fraction(1, 7)), 7, 2, ((Fraction(0), Fraction(1, 7)),))
    with pytest.raises(DomainError):
        orbit_factor(bad, cf)


def test_exact_path_unavailable_is_an_error():
    cf = cf_of("x^4 + y^4 + 1 over GF(9)")
    o = enumerate_orbits(cf)[0]
    with pytest.raises(DomainError):
        orbit_factor(o, cf, method="exact")


@pytest.mark.parametrize("text,coeffs", [
    (KLEIN_13, [1, 0, 39, 0, 507, 0, 2197]),
    (FERMAT_2, [1, 0, 2]),
    (LINE_5, [1]),
    ("x^4 + y^4 + 1 over GF(9)", [1, 18, 135, 540, 1215, 1458, 729]),
])
def test_l_polynomial_examples(text, coeffs):
    assert l_polynomial(cf_of(text)).coeffs == coeffs


def test_l_polynomial_interpolates_point_counts():
    # N_v for v = 1..g determine the polynomial through Newton's identities
    t = parse_trinomial(KLEIN_13)
    L = l_polynomial(classify(t))
    for v in (1, 2, 3):
        assert L.model_count(v) == brute_count(t, v, "projective")


@pytest.mark.parametrize("text,v,expected", [(KLEIN_13, 1, 12), (LINE_5, 1, 5), (FERMAT_2, 2, 6)])
def test_predicted_affine_count_examples(text, v, expected):
    assert predicted_affine_count(cf_of(text), v) == expected


@pytest.mark.parametrize("text,v,mode,expected", [
    ("x^3 + y^3 + 1 over GF(2)", 2, "projective", 9),
    (KLEIN_13, 2, "projective", 248),
    (KLEIN_13, 1, "projective", 14),
    (FERMAT_2, 1, "affine", 2),
])
def test_brute_count_examples(text, v, mode, expected):
    assert brute_count(parse_trinomial(text), v, mode) == expected


def test_brute_count_cap():
    with pytest.raises(CapExceeded):
        brute_count(parse_trinomial(KLEIN_13), 3, cap=1000)


def test_points_at_infinity_are_scanned():
    assert count_at_infinity(parse_trinomial(FERMAT_2), 2) == 3
    assert count_at_infinity(parse_trinomial(LINE_5)) == 1


@pytest.mark.parametrize("text,m", [(KLEIN_13, 7), ("x*y^5 + x^2*y^3 + 1 over GF(13)", 7), (FERMAT_2, 3)])
def test_m_of_curve_examples(text, m):
    cf = cf_of(text)
    assert m_of_curve(cf) == m_formula(cf) == m


def test_m_of_curve_undefined_for_genus_zero():
    with pytest.raises(DomainError):
        m_of_curve(cf_of(LINE_5))


def test_minimal_negative_exponent_examples():
    assert minimal_negative_exponent(7, 13) == 1
    assert minimal_negative_exponent(7, 3) == 3
    assert minimal_negative_exponent(3, 7) is None
    with pytest.raises(DomainError):
        minimal_negative_exponent(6, 3)


# -- corpus-wide properties --------------------------------------------------

@pytest.fixture(scope="module")
def corpus_l():
    return [(cf, l_polynomial(cf)) for cf in corpus()]


def test_corpus_predicted_counts_match_brute_force():
    for cf in corpus():
        t = cf.normalized()
        for v in (1, 2):
            assert predicted_affine_count(cf, v) == brute_count(t, v), (str(t), v)


def test_corpus_orbit_degrees_sum_to_twice_genus():
    for cf in corpus():
        assert sum(o.mu for o in enumerate_orbits(cf)) == 2 * genus(cf).genus


def test_corpus_l_polynomial_properties(corpus_l):
    for cf, L in corpus_l:
        g = genus(cf).genus
        assert L.coeffs[0] == 1
        assert L.max_rounding_error < 1e-3
        assert L.degree == 2 * g
        assert L.functional_equation_holds()
        roots = L.reciprocal_roots()
        assert np.all(np.abs(np.abs(roots) / math.sqrt(cf.q) - 1) < 1e-6)
        assert g <= i_of_curve(cf)
        assert m_of_curve(cf) == m_formula(cf) == p_part(m_formula(cf), cf.p)


def test_reciprocal_roots_reproduce_coefficients(corpus_l):
    for cf, L in corpus_l:
        poly = np.poly(L.reciprocal_roots()).real
        scale = cf.q ** L.genus
        assert np.allclose(poly, np.array(L.coeffs, dtype=float), atol=1e-6 * scale), str(cf.normalized())


def test_gauss_and_jacobi_paths_agree(corpus_l):
    for cf, L in corpus_l:
        for f in L.factors:
            g = orbit_factor(f.orbit, cf, method="gauss")
            ref = complex(f.exact) if f.exact is not None else f.C
            assert abs(g.C - ref) < 1e-6 * cf.q ** (f.mu / 2)
            if f.exact is not None:
                assert orbit_factor(f.orbit, cf, method="both").exact == f.exact
        try:
            assert l_polynomial(cf, method="gauss").coeffs == L.coeffs
        except RoundingError:
            pass


def test_l_polynomial_does_not_depend_on_the_generator(corpus_l):
    for cf, L in corpus_l:
        assert l_polynomial(cf, method="jacobi", generator_rank=1).coeffs == L.coeffs
        assert l_polynomial(cf, method="jacobi").coeffs == L.coeffs


def test_exact_orbits_are_twice_gcd_with_negative_exponent():
    for cf in corpus():
        l = minimal_negative_exponent(m_of_curve(cf), cf.q)
        if l is None:
            continue
        for o in enumerate_orbits(cf):
            assert o.mu == 2 * math.gcd(l, o.mu)


def test_toric_model_count_matches_l_polynomial(corpus_l):
    checked = 0
    for cf, L in corpus_l:
        t = cf.normalized()
        if not is_nondegenerate(t):
            continue
        for v in (1, 2):
            assert toric_count(t, v) == L.model_count(v), (str(t), v)
        checked += 1
    assert checked >= 10


@pytest.mark.parametrize("text", [KLEIN_13, FERMAT_2, ELLIPTIC_7, "x*y^3 + x^3 + y over GF(3)"])
def test_smooth_plane_curves_match_model_counts(text):
    t = parse_trinomial(text)
    L = l_polynomial(classify(t))
    for v in (1, 2, 3):
        assert L.model_count(v) == brute_count(t, v, "projective")
