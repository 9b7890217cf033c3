import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trizeta.errors import DomainError
from trizeta.gf import (abs_trace, discrete_log, field_of_order, generator, is_irreducible,
                        make_extension, make_field, smallest_irreducible)

SMALL = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (5, 2), (3, 3)]


def test_modulus_and_generator_choices_are_fixed():
    assert make_field(3, 2).spec.modulus == (1, 0, 1)       # x^2 + 1
    assert make_field(2, 3).spec.modulus == (1, 0, 1, 1)    # x^3 + x^2 + 1
    assert make_field(2, 2).spec.modulus == (1, 1, 1)
    assert make_field(7).generator == 3
    assert make_field(13).generator == 2
    assert make_field(7, generator_rank=1).generator == 5


def test_f9_generator_has_order_8():
    F = make_field(3, 2)
    g = F.generator
    powers = [F.pow(g, j) for j in range(8)]
    assert len(set(powers)) == 8
    assert F.pow(g, 8) == 1


@pytest.mark.parametrize("p,k", SMALL)
def test_tables_are_consistent(p, k):
    F = make_field(p, k)
    exp, log, tr = F.tables()
    n = F.order - 1
    assert sorted(exp.tolist()) == list(range(1, F.order))
    for j in range(n):
        assert log[exp[j]] == j
        assert tr[j] == F.abs_trace(int(exp[j]))
    assert F.is_primitive(F.generator)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 1), (2, 3), (3, 2), (5, 1)])
def test_field_axioms_exhaustive(p, k):
    F = make_field(p, k)
    els = range(F.order)
    for a, b in itertools.product(els, els):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a
    for a, b, c in itertools.product(els, els, els):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_field_laws_random(pk, data):
    F = make_field(*pk)
    el = st.integers(0, F.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.add(a, F.neg(a)) == 0
    # Frobenius is additive and multiplicative
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.abs_trace(F.add(a, b)) == (F.abs_trace(a) + F.abs_trace(b)) % F.p
    if a:
        assert F.pow(a, F.order - 1) == 1
        assert F.mul(a, F.inv(a)) == 1


def test_vector_ops_match_scalar_ops():
    for pk in SMALL:
        F = make_field(*pk)
        a = np.arange(F.order)
        b = (a * 7 + 3) % F.order
        assert F.add_arrays(a, b).tolist() == [F.add(int(x), int(y)) for x, y in zip(a, b)]
        assert F.neg_arrays(a).tolist() == [F.neg(int(x)) for x in a]
        assert F.trace_array(a).tolist() == [F.abs_trace(int(x)) for x in a]


def test_element_wrapper():
    F = make_field(3, 2)
    w = generator(F)
    assert discrete_log(F, w) == 1
    assert discrete_log(F, w ** 5) == 5
    assert (w ** 8) == F(1)
    assert w * w.__truediv__(w) == w
    assert -w + w == F(0)
    assert F(4) == F(1)
    assert int(abs_trace(F, F(2))) == (2 * 2) % 3
    with pytest.raises(DomainError):
        discrete_log(F, F(0))


def test_extension_embeds_base_codes():
    F = make_field(2, 2)
    E = make_extension(F, 2)
    assert E.order == 16 and E.rel_degree == 2 and E.degree == 4
    assert E.contains(F)
    assert [x.order for x in E.tower()] == [16, 4, 2]
    for a, b in itertools.product(range(4), range(4)):
        assert E.mul(a, b) == F.mul(a, b)
        assert E.add(a, b) == F.add(a, b)
    # the base field is exactly the set fixed by x -> x^4
    fixed = [x for x in range(16) if E.pow(x, 4) == x]
    assert fixed == [0, 1, 2, 3]


def test_extension_of_prime_field_agrees_with_direct_construction_size():
    E = make_extension(make_field(13), 2)
    assert E.order == 169
    assert make_extension(make_field(13), 1) is make_field(13)


def test_field_of_order_and_errors():
    assert field_of_order(27).spec.k == 3
    with pytest.raises(DomainError):
        field_of_order(12)
    with pytest.raises(DomainError):
        make_field(4)
    with pytest.raises(ZeroDivisionError):
        make_field(5).inv(0)


def test_irreducibility_test():
    F2 = make_field(2)
    assert is_irreducible(F2, (1, 1, 1))
    assert not is_irreducible(F2, (1, 0, 1))        # (x+1)^2
    assert not is_irreducible(F2, (1, 1, 1, 1, 1, 1))
    assert smallest_irreducible(F2, 4) == (1, 0, 0, 1, 1)
    # count monic irreducible quadratics over F_5: (25 - 5) / 2
    F5 = make_field(5)
    n = sum(is_irreducible(F5, (c0, c1, 1)) for c0 in range(5) for c1 in range(5))
    assert n == 10
