from linkhom.laurent import LaurentPoly, laurent_eval_skein


def test_basic_ops():
    p = LaurentPoly.from_q_coeffs([(1, 1), (-1, 1)])
    q = LaurentPoly.monomial(2, q=3)
    assert (p + q) - q == p
    assert p * LaurentPoly.monomial(1) == p
    assert not (p - p)
    assert (-p) + p == LaurentPoly.zero()


def test_mul_and_pow():
    p = LaurentPoly.from_q_coeffs([(1, 1), (-1, 1)])
    sq = p * p
    assert sq == LaurentPoly.from_q_coeffs([(2, 1), (0, 2), (-2, 1)])
    assert p**3 == sq * p
    assert p**0 == LaurentPoly.monomial(1)


def test_shift():
    p = LaurentPoly.from_q_coeffs([(0, 1)])
    assert p.shift(dq=5) == LaurentPoly.from_q_coeffs([(5, 1)])
    assert p.shift(dt=2).coeffs == {(0, 2): 1}


def test_skein_substitution_unknot():
    # q + q^-1 becomes -(t^1/2 + t^-1/2) on the doubled exponent lattice
    p = LaurentPoly.from_q_coeffs([(1, 1), (-1, 1)])
    assert laurent_eval_skein(p) == LaurentPoly({(0, 1): -1, (0, -1): -1})


def test_skein_substitution_constants():
    assert laurent_eval_skein(LaurentPoly.monomial(1)) == LaurentPoly.monomial(1)
    # q^2 -> t, stored as doubled exponent 2
    assert laurent_eval_skein(LaurentPoly.from_q_coeffs([(2, 1)])) == \
        LaurentPoly({(0, 2): 1})


def test_str_deterministic():
    p = LaurentPoly({(1, 0): 1, (-1, 0): 2, (0, 3): -1})
    assert str(p) == str(LaurentPoly(dict(reversed(list(p.coeffs.items())))))
