import pytest

from quadloci.algebra import ALPHA, Polynomial, alpha, elementary_symmetric, sym
from quadloci.symfunc import (
    ChernSeries,
    Partition,
    TruncationTooLow,
    a_const,
    b_const,
    gtp_class,
    schur,
    sym_degeneracy_class,
)

X = Polynomial.variable


def generic_series(prefix, rank, order):
    return ChernSeries.generic(
        lambda i: X(sym("%s%d" % (prefix, i))), rank, order
    )


def test_partition_validation():
    assert Partition([]).size() == 0
    assert Partition.staircase(3).parts == (3, 2, 1)
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([0])


def test_schur_single_box_is_c1():
    s = ChernSeries.from_alphabet(ALPHA, 2)
    assert schur(Partition([1]), s) == X(alpha(1)) + X(alpha(2))


def test_schur_hook_by_hand():
    # det [[c2, c3], [1, c1]] = c1 c2 - c3
    c = generic_series("c", 3, 4)
    c1, c2, c3 = (X(sym("c%d" % i)) for i in (1, 2, 3))
    assert schur(Partition([2, 1]), c) == c1 * c2 - c3


def test_schur_empty_partition():
    assert schur(Partition([]), generic_series("c", 2, 2)) == Polynomial.const(1)


def test_schur_truncation_guard():
    short = generic_series("c", 9, 2)
    with pytest.raises(TruncationTooLow):
        schur(Partition([3, 1]), short)


def test_schur_degree_grading():
    # s_lambda of a root series is homogeneous of degree |lambda|
    s = ChernSeries.from_alphabet(ALPHA, 3)
    for lam in ([2], [1, 1], [2, 1], [3, 2, 1]):
        p = schur(Partition(lam), s)
        assert p.is_homogeneous(sum(lam))


def test_schur_grading_on_product_series():
    from quadloci.algebra import BETA

    a = ChernSeries.from_alphabet(ALPHA, 2, order=5)
    b = ChernSeries.from_alphabet(BETA, 2, order=5)
    prod = a.mul(b, 5)
    for lam in ([2], [2, 1], [3, 1]):
        p = schur(Partition(lam), prod)
        assert p.is_homogeneous(sum(lam))


def test_series_product_and_quotient():
    a = ChernSeries.from_alphabet(ALPHA, 2, order=4)
    b = generic_series("b", 2, 4)
    prod = a.mul(b, 4)
    quot = prod.quotient_by(a, 4)
    for i in range(5):
        assert quot.c(i) == b.c(i)


def test_gtp_rank_one():
    a = generic_series("a", 1, 2)
    b = generic_series("b", 1, 2)
    assert gtp_class(1, 0, a, b) == X(sym("b1")) - X(sym("a1"))


def test_gtp_zero_kernel():
    a = generic_series("a", 1, 2)
    b = generic_series("b", 1, 2)
    assert gtp_class(0, 3, a, b) == Polynomial.const(1)


def test_gtp_series_division_by_hand():
    # ranks (1, 2), one extra dimension: c2 of b/a = b2 - a1 b1 + a1^2
    a = generic_series("a", 1, 3)
    b = generic_series("b", 2, 3)
    a1, b1, b2 = X(sym("a1")), X(sym("b1")), X(sym("b2"))
    assert gtp_class(1, 1, a, b) == b2 - a1 * b1 + a1 ** 2


def test_sym_degeneracy_small():
    assert sym_degeneracy_class(1, 2) == 2 * (X(alpha(1)) + X(alpha(2)))
    assert sym_degeneracy_class(0, 4) == Polynomial.const(1)
    # hand-expanded hook: 4 (e1 e2 - e3)
    e1 = elementary_symmetric(ALPHA, 3, 1)
    e2 = elementary_symmetric(ALPHA, 3, 2)
    e3 = elementary_symmetric(ALPHA, 3, 3)
    assert sym_degeneracy_class(2, 3) == 4 * (e1 * e2 - e3)


def test_sym_degeneracy_degree_and_symmetry():
    for e, r in ((3, 2), (4, 3), (5, 2)):
        h = sym_degeneracy_class(r, e)
        assert h.is_homogeneous(r * (r + 1) // 2)
        swapped = h.rename({alpha(1): alpha(2), alpha(2): alpha(1)})
        assert swapped == h


def test_a_const_values():
    assert a_const(2, 1) == 2
    assert a_const(5, 2) == 20
    assert a_const(7, 4) == 672
    assert a_const(6, 3) == 112
    assert a_const(9, 0) == 1


def test_a_const_methods_agree():
    for e in range(13):
        for r in range(e + 1):
            assert a_const(e, r, "product") == a_const(e, r, "determinant")


def test_a_const_guards():
    with pytest.raises(ValueError):
        a_const(3, 4)
    with pytest.raises(ValueError):
        a_const(3, 1, "other")


def test_b_const_values():
    assert b_const(2, 1) == -2
    assert b_const(5, 2) == -24
    assert b_const(7, 0) == 0
