import pytest
from hypothesis import given, strategies as st

from rrverify import multisums as MS
from rrverify.errors import BadParameters
from rrverify.partitions import count_lambda, gf_lambda, strict_partitions
from rrverify.qseries import QSeries, poch_infinite, product_ariki_mathas, q


def test_gauss_binom_examples():
    assert MS.gauss_binom(4, 2).coeffs == (1, 1, 2, 1, 1)
    assert MS.gauss_binom(7, 0).coeffs == (1,)
    assert MS.gauss_binom(3, 5).is_zero()
    assert MS.gauss_binom(2, 1, 3).coeffs == (1, 0, 0, 1)
    with pytest.raises(BadParameters):
        MS.gauss_binom(2, 1, 0)


@given(st.lists(st.integers(0, 2), min_size=1, max_size=4), st.data(),
       st.sampled_from([MS.ONE, MS.TRIANGULAR]))
def test_transfer_pass_matches_tuple_enumeration(ks, data, family):
    shifts = data.draw(st.lists(st.integers(0, 1), min_size=len(ks) - 1,
                                max_size=len(ks) - 1))
    order = 12
    assert MS.chain_sum(ks, order, shifts, family) == \
        MS.chain_sum_bruteforce(ks, order, shifts, family)


@pytest.mark.parametrize("ks,shifts", [
    ([1, 1, 1], [0, 1]), ([1, 0, 1, 0], [0, 0, 0]), ([2, 1, 2], [1, 0]), ([0], []),
])
def test_widening_changes_nothing(ks, shifts):
    base = MS.chain_sum(ks, 30, shifts)
    assert base == MS.chain_sum(ks, 30, shifts, slack=2)
    assert base.agrees(MS.chain_sum_bruteforce(ks, 20, shifts, slack=2), 20)


@pytest.mark.parametrize("a,m", [(0, 3), (1, 3), (2, 4), (4, 4), (2, 5)])
def test_multisum_widening(a, m):
    assert MS.multisum_gen(a, m, 30) == MS.multisum_gen(a, m, 30, slack=2)
    assert MS.multisum_reversed(a, m, 30) == MS.multisum_reversed(a, m, 30, slack=2)


def test_single_index_is_strict_partitions():
    s = MS.multisum_gen(1, 1, 25)
    assert s.to_list() == [sum(1 for _ in strict_partitions(n)) for n in range(26)]
    assert s == poch_infinite(q(1, -1), 1, 25)


def test_order_zero():
    assert MS.multisum_gen(2, 3, 0).to_list() == [1]
    assert MS.multisum_reversed(0, 2, 0).to_list() == [1]
    assert MS.andrews_kimyee_sum(1, 4, 0).to_list() == [1]


def test_low_coefficient_matches_count():
    assert MS.multisum_gen(2, 2, 3).get(1) == count_lambda(2, 2, 1) == 1


@pytest.mark.parametrize("m", range(1, 5))
def test_two_orientations_agree(m):
    for a in range(m + 1):
        assert MS.multisum_gen(a, m, 40) == MS.multisum_reversed(a, m, 40)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_unshifted_case_is_plain_chain(m):
    assert MS.multisum_reversed(m, m, 30) == MS.S_sum([1] * m, MS.ONE, 30)


@pytest.mark.parametrize("a,m", [(1, 2), (2, 3), (1, 4), (3, 4)])
def test_summed_out_form(a, m):
    assert MS.gen1_sum(a, m, 30) == MS.multisum_gen(a, m, 30)


def test_multisum_vs_enumeration():
    for a, m in [(1, 2), (2, 2), (1, 3), (3, 3)]:
        n = 14
        assert MS.multisum_gen(a, m, n).agrees(gf_lambda(a, m, n).x_collapse(), n)


def test_bad_parameters():
    with pytest.raises(BadParameters):
        MS.multisum_gen(3, 2, 5)
    with pytest.raises(BadParameters):
        MS.andrews_kimyee_sum(3, 4, 5)
    with pytest.raises(BadParameters):
        MS.symmetry_sides(0, 3, 5)
    with pytest.raises(BadParameters):
        MS.S1M_S2M(0, 5)
    with pytest.raises(BadParameters):
        MS.triple_sum_bivariate(3, 5)
    with pytest.raises(BadParameters):
        MS.chain_sum([1, -1], 5)


def test_S_sum_examples():
    two = MS.S_sum([1, 1], MS.ONE, 20)
    assert two == MS.chain_sum_bruteforce([1, 1], 20)
    assert MS.S_sum([1, 2], MS.ZERO, 20).is_zero()


@pytest.mark.parametrize("m", [1, 2, 3])
def test_even_and_odd_chain_products(m):
    for a in range(m + 1):
        assert MS.andrews_kimyee_sum(a, 2 * m, 40) == product_ariki_mathas(a, 2 * m, 40)
    for a in range(m):
        assert MS.andrews_kimyee_sum(a, 2 * m - 1, 40) == product_ariki_mathas(a, 2 * m - 1, 40)


def test_symmetry_examples():
    lhs, rhs = MS.symmetry_sides(1, 2, 40)
    assert lhs == rhs
    assert MS.symmetry_sides(1, 3, 40)[0] == MS.symmetry_sides(2, 3, 40)[0]


@pytest.mark.parametrize("a", [1, 2, 3])
@pytest.mark.parametrize("family", [MS.ONE, MS.TRIANGULAR])
def test_transformation(a, family):
    lhs, rhs = MS.transformation_sides(a, family, 40)
    assert lhs == rhs


def test_transformation_base_and_zero_family():
    lhs, rhs = MS.transformation_sides(1, MS.ONE, 40)
    assert lhs == rhs == MS.transformation_base(MS.ONE, 40)
    lhs, rhs = MS.transformation_sides(2, MS.ZERO, 20)
    assert lhs.is_zero() and rhs.is_zero()


def test_decomposition_instance():
    lhs, rhs = MS.S_decomposition([1], [], MS.ONE, 30)
    assert lhs == rhs


@pytest.mark.parametrize("family", [MS.ONE, MS.TRIANGULAR])
@pytest.mark.parametrize("m", [0, 1])
def test_lemma_ladder(family, m):
    for a in (1, 2, 3):
        lhs, rhs = MS.lemma_first_step(m, a, [1, 1], family, 30)
        assert lhs == rhs
        for i in range(1, a + 1):
            lhs, rhs = MS.lemma_block_sums(m, a, i, [1, 1], family, 30)
            assert lhs == rhs
            if i >= 2:
                lhs, rhs = MS.lemma_shift_difference(m, a, i, [1, 1], family, 30)
                assert lhs == rhs


@pytest.mark.parametrize("b", [2, 3])
def test_block_shift(b):
    lhs, rhs = MS.block_shift_sides(b, MS.ONE, 30)
    assert lhs == rhs


# bilateral sums


def _neg(k):
    from rrverify.qseries import Monomial
    return Monomial(-1, 0, k)


def test_bilateral_widening():
    for w in (-3, 0, 2):
        for sign in (1, -1):
            assert MS.bilateral_H(sign, w, 30) == MS.bilateral_H(sign, w, 30, slack=2)
            assert MS.bilateral_I(sign, w, 30) == MS.bilateral_I(sign, w, 30, slack=2)


@pytest.mark.parametrize("w", range(-4, 5))
def test_H_plus_relation(w):
    n = 30
    prod = (poch_infinite(_neg(2), 2, n) * poch_infinite(q(2), 2, n).invert() * 2).shift(w * w)
    assert (MS.bilateral_H(1, w, n) + MS.bilateral_H(1, -w, n)).agrees(prod, n)
    assert MS.bilateral_H(-1, w, n) == MS.bilateral_H(-1, -w, n)


@pytest.mark.parametrize("w", range(-4, 5))
def test_I_sign_flip(w):
    sign = 1 if w % 2 == 0 else -1
    assert MS.bilateral_I(1, w, 30) == MS.bilateral_I(-1, w, 30).neg_q() * sign


def test_H_plus_pairs_match_symmetrized_enumeration():
    g = gf_lambda(1, 2, 20)
    sym = g + g.x_inverse()
    for w in range(1, 4):
        pair = MS.bilateral_H(1, w, 20) + MS.bilateral_H(1, -w, 20)
        assert pair.agrees(sym.x_slice(w), 20)
    assert (MS.bilateral_H(1, 0, 20) * 2).agrees(sym.x_slice(0), 20)


def test_S_sums():
    s1, s2, closed = MS.S1M_S2M(1, 10)
    assert closed.valuation() == 2
    for M in range(1, 13):
        s1, s2, closed = MS.S1M_S2M(M, 60)
        assert s1 == s2 == closed
        if M * (M + 3) // 2 <= 60:
            assert closed.valuation() == M * (M + 3) // 2


def test_double_sums():
    n = 40
    assert MS.double_sum_a1(n) == poch_infinite(_neg(2), 2, n) * poch_infinite(q(2), 2, n).invert()
    assert MS.double_sum_a2(n) == poch_infinite(_neg(1), 2, n) * poch_infinite(q(2), 2, n).invert()


# triple sums and coefficient formulas


@pytest.mark.parametrize("a", [1, 2])
def test_triple_sum_matches_enumeration(a):
    assert MS.triple_sum_bivariate(a, 20).agrees(gf_lambda(a, 2, 20), 20)


def test_triple_sum_constant_term():
    assert MS.triple_sum_bivariate(2, 5).get(0, 0) == 1


@pytest.mark.parametrize("a", [1, 2])
def test_coefficient_formula(a):
    g = MS.triple_sum_bivariate(a, 30)
    for w in range(-5, 6):
        c = MS.coeff_formula(a, w, 30)
        assert c.agrees(g.x_slice(w), 30)
        assert all((k - w) % 2 == 0 for k, _, _ in c.items())


def test_coefficient_formula_examples():
    assert MS.coeff_formula(1, 1, 5).get(1) == 1
    assert MS.coeff_formula(2, 1, 5).get(1) == 1


# well-poised evaluation


@pytest.mark.parametrize("alpha,beta", [(1, 1), (2, 1), (1, 2), (3, 2), (2, 4), (1, 5)])
def test_wellpoised(alpha, beta):
    assert MS.wellpoised_check(alpha, beta, 20)


def test_wellpoised_order_zero():
    lhs, rhs = MS.wellpoised_sides(1, 1, 0)
    assert lhs == rhs
