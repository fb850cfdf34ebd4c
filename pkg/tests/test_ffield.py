"""Field arithmetic, binomial helpers and the dense linear algebra kit."""

import math

import pytest

from thinlie.ffield import (
    FieldParams,
    Matrix,
    factorial_mod,
    falling_binomial,
    find_irreducible,
    in_span,
    is_irreducible,
    is_prime,
    lucas_binomial,
    solve_artin_schreier,
)

F3 = FieldParams.prime(3)
F5 = FieldParams.prime(5)
# F_27 presented with t^3 = t + 1
F27 = FieldParams(3, 3, (2, 2, 0, 1))


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_lucas_matches_factorial_oracle():
    for p in (3, 5):
        for n in range(40):
            for k in range(n + 1):
                assert lucas_binomial(n, k, p) == math.comb(n, k) % p


def test_lucas_out_of_range_is_zero():
    assert lucas_binomial(2, 5, 3) == 0
    assert lucas_binomial(9, 3, 3) == 0  # base-3 carry


def test_factorial_mod():
    assert [factorial_mod(k, 5) for k in range(5)] == [1, 1, 2, 1, 4]


def test_find_irreducible_frozen():
    assert find_irreducible(3, 1) == (0, 1)
    assert find_irreducible(3, 2) == (1, 0, 1)
    assert find_irreducible(3, 3) == (1, 0, 2, 1)
    assert find_irreducible(5, 2) == (1, 1, 1)


def test_irreducibility_screen():
    # t^2 + 1 factors over F_5 as (t+2)(t+3) but not over F_3
    assert is_irreducible(3, [1, 0, 1])
    assert not is_irreducible(5, [1, 0, 1])


def test_params_validation():
    with pytest.raises(ValueError):
        FieldParams(4, 1, (0, 1))
    with pytest.raises(ValueError):
        FieldParams(3, 2, (0, 0, 1))  # t^2 is reducible
    with pytest.raises(ValueError):
        FieldParams(3, 2, (1, 0, 2))  # not monic


def test_spec_string_round_trip():
    assert F27.spec_string == "3^3:2,2,0,1"
    assert FieldParams.parse_spec("3^3:2,2,0,1") == F27
    assert FieldParams.parse_spec(" 5^1:0,1 ") == F5
    with pytest.raises(ValueError):
        FieldParams.parse_spec("3^3:2,2,0")


def test_generator_relations():
    t = F27.gen()
    assert t ** 3 == t + 1
    assert t * t ** 2 == t + 1
    assert (t + 1) * t ** 2 == F27.parse_element("t^2+t+1")
    assert t ** 13 == F27.one()
    assert t.inverse() == F27.parse_element("t^2+2")
    assert t * t.inverse() == F27.one()


def test_prime_field_has_no_generator():
    with pytest.raises(ValueError):
        F3.gen()


def test_element_text_format():
    assert str(F27.element([1, 1, 0])) == "t+1"
    assert str(F27.element([2, 0, 2])) == "2t^2+2"
    assert str(F27.zero()) == "0"
    assert str(F5.element(4)) == "4"
    for x in F27.elements():
        assert F27.parse_element(str(x)) == x


def test_int_coercion_and_pow():
    t = F27.gen()
    assert 1 - t == -(t - 1)
    assert t * 3 == F27.zero()
    assert (t + 2) ** 0 == F27.one()
    assert t ** -1 == t.inverse()


def test_order_and_fermat():
    assert F27.order == 27
    for x in F27.elements():
        if not x.is_zero():
            assert x ** 26 == F27.one()


def test_in_prime_field_and_as_int():
    t = F27.gen()
    assert F27.element(2).in_prime_field()
    assert F27.element(2).as_int() == 2
    assert not t.in_prime_field()
    with pytest.raises(ValueError):
        t.as_int()


def test_elements_enumeration():
    xs = list(F27.elements())
    assert len(xs) == 27
    assert len(set(xs)) == 27
    assert xs[0] == F27.zero()


def test_falling_binomial():
    t = F27.gen()
    # C(t, 2) = t(t-1)/2
    assert falling_binomial(t, 2) == F27.parse_element("2t^2+t")
    assert falling_binomial(F5.element(2), 2) == F5.one()
    assert falling_binomial(F5.element(2), 3) == F5.zero()
    # integer alpha reduces to the Lucas value
    for a in range(5):
        for i in range(5):
            assert falling_binomial(F5.element(a), i) == F5.element(lucas_binomial(a, i, 5))
    with pytest.raises(ValueError):
        falling_binomial(t, 3)


def test_artin_schreier():
    t = F27.gen()
    assert solve_artin_schreier(F27, F27.one()) == t
    x = solve_artin_schreier(F27, t)
    assert x == F27.parse_element("2t^2+t")
    assert x ** 3 - x == t
    # over the prime field x^p - x = 0 identically
    assert solve_artin_schreier(F3, F3.one()) is None
    assert solve_artin_schreier(F3, F3.zero()) == F3.zero()


def test_rref_and_rank():
    m = Matrix(F5, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    red, pivots = m.rref()
    assert pivots == [0, 1]
    assert m.rank() == 2
    again, _ = red.rref()
    assert again == red


def test_kernel_frozen():
    zero2 = Matrix(F5, [[0, 0], [0, 0]])
    assert zero2.kernel() == [
        [F5.one(), F5.zero()],
        [F5.zero(), F5.one()],
    ]
    ident = Matrix.identity(F5, 2)
    assert ident.kernel() == []
    m = Matrix(F5, [[1, 2], [2, 4]])
    (vec,) = m.kernel()
    assert m.times_vector(vec) == [F5.zero(), F5.zero()]


def test_eigenspace():
    m = Matrix(F5, [[2, 0], [0, 3]])
    assert m.eigenspace(F5.element(2)) == [[F5.one(), F5.zero()]]
    assert m.eigenspace(F5.element(3)) == [[F5.zero(), F5.one()]]
    assert m.eigenspace(F5.element(1)) == []


def test_from_cols_and_vector():
    cols = [[F5.element(1), F5.element(2)], [F5.element(0), F5.element(1)]]
    m = Matrix.from_cols(F5, cols)
    assert m.rows[0] == [F5.element(1), F5.element(0)]
    assert m.times_vector([F5.one(), F5.one()]) == [F5.element(1), F5.element(3)]


def test_in_span():
    v1 = [F5.element(1), F5.element(0)]
    v2 = [F5.element(1), F5.element(1)]
    coords = in_span(F5, [v1, v2], [F5.element(3), F5.element(2)])
    assert coords == [F5.element(1), F5.element(2)]
    assert in_span(F5, [v1], [F5.element(0), F5.element(1)]) is None
    assert in_span(F5, [], [F5.zero(), F5.zero()]) == []
    assert in_span(F5, [], [F5.one()]) is None
