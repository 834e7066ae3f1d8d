import pytest
from hypothesis import given, strategies as st

from rrverify.errors import BadParameters, BudgetExceeded, NotStrict
from rrverify.partitions import (
    B_series, BUDGET_ENV, conjugate, count_lambda, count_table, d_count,
    delta_sigma, enumeration_ceiling, f_series, g_series, gf_lambda,
    is_e_restricted, is_multi_e_restricted, is_restricted, is_strict, iter_lambda,
    multipartitions, offsets, omega_strict_formula, partitions, residue_profile,
    rogers_szego_check, strict_partitions,
)
from rrverify.qseries import poch_infinite, product_ariki_mathas, q


def test_partition_counts():
    assert [sum(1 for _ in partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert [sum(1 for _ in strict_partitions(n)) for n in range(8)] == [1, 1, 1, 2, 2, 3, 4, 5]


@pytest.mark.parametrize("n", range(21))
def test_conjugate_is_involution(n):
    for lam in partitions(n):
        assert conjugate(conjugate(lam)) == lam


def test_strict_iff_conjugate_two_restricted():
    for n in range(13):
        for lam in partitions(n):
            assert is_strict(lam) == is_e_restricted(conjugate(lam), 2)


def test_delta_sigma_example():
    delta, sigma = delta_sigma((9, 7, 6, 3))
    assert delta == (4, 3, 2, 1)
    assert sigma == (4, 4, 3, 3, 1)
    assert omega_strict_formula((9, 7, 6, 3)) == -1


def test_delta_sigma_needs_strict():
    with pytest.raises(NotStrict):
        delta_sigma((2, 2))


def _rebuild(delta, sigma):
    excess = conjugate(sigma)
    excess = excess + (0,) * (len(delta) - len(excess))
    return tuple(d + e for d, e in zip(delta, excess))


@pytest.mark.parametrize("n", range(26))
def test_strict_statistics(n):
    for pi in strict_partitions(n):
        delta, sigma = delta_sigma(pi)
        assert _rebuild(delta, sigma) == pi
        assert max(sigma, default=0) <= len(pi)
        assert omega_strict_formula(pi) == residue_profile((pi,), 1).omega


def test_offsets_and_alias():
    assert offsets(1, 3) == (0, 1, 1)
    assert offsets(0, 3) == offsets(3, 3) == (0, 0, 0)
    with pytest.raises(BadParameters):
        offsets(4, 3)


def test_restriction_examples():
    assert is_restricted(((), (1,)), 2)
    assert not is_restricted(((1,), ()), 2)
    assert is_restricted(((1,), ()), 1)
    assert not is_restricted(((2, 2), (1,)), 1)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_restriction_duality(m):
    for a in range(1, m + 1):
        t = offsets(a, m)
        for n in range(13 if m < 3 else 10):
            for pi in multipartitions(n, m):
                conj = tuple(conjugate(c) for c in pi)
                assert is_restricted(pi, a) == is_multi_e_restricted(conj, 2, t)


@pytest.mark.parametrize("a,m", [(1, 2), (2, 2), (1, 3), (2, 3), (3, 3)])
def test_omega_parity(a, m):
    for pi in iter_lambda(a, m, 14):
        n = sum(map(sum, pi))
        assert (residue_profile(pi, a).omega - n) % 2 == 0


def test_offset_toggle_negates_component():
    for pi in iter_lambda(1, 2, 16):
        first, second = pi
        whole = residue_profile(pi, 1).omega
        plain = residue_profile((first,), 1).omega + residue_profile((second,), 1).omega
        flipped = residue_profile((first,), 1).omega - residue_profile((second,), 1).omega
        assert whole == flipped
        toggled = residue_profile(((), second), 1).omega
        assert toggled == -residue_profile(((), second), 2).omega
        assert plain - flipped == 2 * residue_profile((second,), 1).omega


def test_counts():
    assert count_lambda(1, 2, 1) == 2
    assert count_lambda(2, 2, 1) == 1
    assert count_lambda(2, 2, 1, omega=1) == 1
    assert count_lambda(1, 2, 0) == 1
    assert count_lambda(1, 2, -1) == 0


def test_table_rows():
    assert [r["count"] for r in count_table(1, 2, 3)] == [1, 2, 2, 4]
    assert count_table(1, 2, 0) == [{"n": 0, "count": 1}]
    rows = [r for r in count_table(2, 2, 1, by_omega=True) if r["n"] == 1]
    assert rows == [{"n": 1, "omega": 1, "count": 1}]


def test_table_matches_product():
    p = poch_infinite(q(1, -1), 1, 12) * poch_infinite(q(1, -1), 2, 12)
    assert [r["count"] for r in count_table(1, 2, 12)] == p.to_list()


@pytest.mark.parametrize("a,m,n", [(1, 1, 26), (1, 2, 22), (2, 2, 22), (1, 3, 14), (3, 3, 14)])
def test_enumeration_collapse_equals_product(a, m, n):
    assert gf_lambda(a, m, n).x_collapse().agrees(product_ariki_mathas(a, m, n), n)


def test_budget_default_and_override(monkeypatch):
    assert enumeration_ceiling(2) == 30
    assert enumeration_ceiling(3) == 18
    assert enumeration_ceiling(4) == 14
    assert enumeration_ceiling(3, budget=5) == 5
    monkeypatch.setenv(BUDGET_ENV, "7")
    assert enumeration_ceiling(2) == 7
    with pytest.raises(BudgetExceeded):
        count_lambda(1, 2, 8)
    monkeypatch.setenv(BUDGET_ENV, "junk")
    with pytest.raises(BadParameters):
        enumeration_ceiling(2)


def test_budget_exceeded_is_not_silent():
    with pytest.raises(BudgetExceeded):
        gf_lambda(1, 3, 19)
    assert gf_lambda(1, 3, 19, budget=19).order == 19


# odd-position and alternating-sum statistics


def test_d_count_small():
    # distinct parts <= 3 summing to 3: (3) and (2,1)
    assert d_count(3, 1, 0, 3) == 1
    assert d_count(3, 0, 1, 3) == 1


def test_B_example():
    brute, closed = B_series(2, 0, 10)
    assert brute.to_list()[:4] == [1, 0, 1, 0]
    assert brute == closed


@pytest.mark.parametrize("N", range(9))
def test_B_brute_equals_closed(N):
    for k in range(-N - 1, N + 2):
        brute, closed = B_series(N, k, 40)
        assert brute == closed


@pytest.mark.parametrize("N", range(9))
def test_f_methods_agree(N):
    assert f_series(N, 30) == f_series(N, 30, method="brute")


@pytest.mark.parametrize("N", range(9))
def test_g_forms_agree(N):
    brute, a, b = g_series(N, 30)
    assert brute == a == b


def test_bad_method():
    with pytest.raises(BadParameters):
        f_series(2, 5, method="guess")


@given(st.integers(0, 9))
def test_rogers_szego(n):
    assert rogers_szego_check(n)
