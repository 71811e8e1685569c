from math import gcd

import pytest
from hypothesis import given, strategies as st

from _grid import grid_instances, instance_id
from grminfo.cosets import CrtIso, DefiningSetZ, RepSystem, cyclotomic_coset, grm_defining_set, q_weight
from grminfo.infoset import (
    BadDecomposition,
    Decomposition,
    GammaSet,
    NonIntegralM,
    NotApplicable,
    count_low_weight,
    dual_order,
    dual_punctured_defining_set,
    find_decompositions,
    gamma_closed_form,
    gamma_first_order,
    gamma_general,
    gamma_second_order,
    grm_dimension,
    second_order_boxes,
    to_information_sets,
)
from grminfo.numtheory import multiplicative_order, unitary_divisors


def box(r1_range, r2_range):
    return {(i, j) for i in range(*r1_range) for j in range(*r2_range)}


def test_first_order_example():
    gamma = gamma_first_order(3, 3, 13, 2)
    assert gamma.cells == {(0, 0), (1, 0), (2, 0)}
    T = CrtIso(26, 13, 2)
    assert gamma.pullback(T) == [0, 2, 14]
    low, dual = to_information_sets(gamma, T, 3, 3, 1)
    assert low.positions == (0, 1, 3, 15)
    assert low.exponents == [0, 2, 14]
    assert len(dual.positions) == 23 and dual.code == (3, 3, 4)
    assert not set(low.positions) & set(dual.positions)


def test_second_order_example_q5_m3():
    gamma = gamma_second_order(5, 3, 1)
    assert gamma.cells == box((0, 1), (0, 6)) | box((1, 2), (0, 3))
    assert second_order_boxes(1, 3)[0] == ((0, 0), (0, 9))  # first band is empty
    assert len(gamma) == 9
    low, _ = to_information_sets(gamma, CrtIso(124, 4, 31), 5, 3, 2)
    assert len(low.positions) == 10 == grm_dimension(5, 3, 2)


def test_second_order_q3_m6_bands():
    gamma = gamma_second_order(3, 6, 2)
    expected = box((0, 1), (0, 9)) | box((1, 3), (0, 6)) | box((3, 5), (0, 3))
    assert gamma.cells == expected
    assert len(gamma) == 27 == 2 * 6 + 6 * 5 // 2


@given(st.integers(1, 12), st.integers(2, 12))
def test_second_order_band_count_identity(a, b):
    m = a * b
    total = sum((hi1 - lo1) * (hi2 - lo2) for (lo1, hi1), (lo2, hi2) in second_order_boxes(a, b))
    assert total == b * b * a * (a - 1) // 2 + a * b * (b + 1) // 2 + a * b
    assert total == m * (m - 1) // 2 + 2 * m


def test_second_order_rejects():
    with pytest.raises(NotApplicable):
        gamma_second_order(2, 4, 2)
    with pytest.raises(NotApplicable):
        gamma_second_order(3, 4, 2, r1=5)
    with pytest.raises(BadDecomposition):
        gamma_second_order(3, 5, 2)
    with pytest.raises(NotApplicable):
        gamma_closed_form(Decomposition(3, 4, 5, 16, 4), 2)


def test_first_order_rejects():
    with pytest.raises(BadDecomposition):
        gamma_first_order(3, 4, 5, 15)
    with pytest.raises(BadDecomposition):
        gamma_first_order(3, 4, 4, 20)  # gcd(4, 20) != 1


def test_gamma_set_bounds():
    with pytest.raises(BadDecomposition):
        GammaSet(2, 3, frozenset({(2, 0)}))
    with pytest.raises(BadDecomposition):
        GammaSet(13, 2, frozenset()).pullback(CrtIso(26, 2, 13))


@pytest.mark.parametrize("q, m", [(2, 4), (2, 6), (3, 3), (3, 4), (4, 3), (5, 3), (7, 2), (3, 6), (2, 8)])
def test_single_coset_engine(q, m):
    """D* = C_n(1): one class, M(1) = m/a, and the rectangle [0, a) x [0, m/a)."""
    n = q**m - 1
    Dstar = DefiningSetZ(n, q, frozenset(cyclotomic_coset(1, n, q)))
    for r1 in unitary_divisors(n):
        if r1 in (1, n):
            continue
        T = CrtIso(n, r1, n // r1)
        a = multiplicative_order(q, r1)
        prof, gamma = gamma_general(Dstar, T)
        assert prof.M == {1: m // a}
        assert prof.f == (m // a,) and prof.g == (a,)
        assert gamma == gamma_first_order(q, m, r1, n // r1)


@pytest.mark.parametrize("inst", [i for i in grid_instances() if i[2] == 2], ids=instance_id)
def test_second_order_profile(inst):
    """M is m/a on the class of 1, b(b+1)/2 on the class of 2 and b^2 elsewhere.

    The class of 2 collects all of B1 plus the B2 cosets congruent to 2 mod r1,
    which is what makes its total b(b+1)/2.  Since |C_r1(1)| = |C_r1(2)| = a,
    the g sequence and hence Gamma do not depend on which of the two classes
    carries which value.
    """
    q, m, _, d = inst
    a, b = d.a, d.b
    prof, gamma = gamma_general(dual_punctured_defining_set(q, m, 2), CrtIso(d.n, d.r1, d.r2))
    assert prof.M[1] == b
    assert prof.M[2] == b * (b + 1) // 2
    assert all(v == b * b for u, v in prof.M.items() if u not in (1, 2))
    assert len(prof.M) == 2 + a // 2
    assert prof.r1_sizes[1] == prof.r1_sizes[2] == a
    expected_f = tuple(v for v in (b * b, b * (b + 1) // 2, b) if a > 1 or v != b * b)
    assert prof.f == expected_f
    assert list(prof.f) == sorted(prof.f, reverse=True) and len(set(prof.f)) == len(prof.f)
    assert list(prof.g) == sorted(set(prof.g))
    assert prof.g[-2:] == (a * (a + 1) // 2, a * (a + 3) // 2)
    assert gamma == gamma_second_order(q, m, a)


def test_non_integral_m_is_reported():
    """A representative system that mixes residue classes of different r1-coset sizes."""
    Dstar = DefiningSetZ(26, 3, frozenset({1, 3, 9, 13}))
    T = CrtIso(26, 13, 2)
    broken = RepSystem(reps=(1, 13), U=(1,), orbits={1: (1, 13)}, r1=13)
    with pytest.raises(NonIntegralM):
        gamma_general(Dstar, T, broken)


def test_gamma_general_rejects_empty():
    with pytest.raises(ValueError):
        gamma_general(DefiningSetZ(26, 3, frozenset()), CrtIso(26, 13, 2))


@pytest.mark.parametrize("inst", grid_instances(), ids=instance_id)
def test_engines_agree_on_grid(inst):
    q, m, order, d = inst
    Dstar = dual_punctured_defining_set(q, m, order)
    _, general = gamma_general(Dstar, CrtIso(d.n, d.r1, d.r2))
    assert general == gamma_closed_form(d, order)
    assert len(general) == len(Dstar)


def _brute_low_weight(q, m, bound):
    return sum(1 for i in range(q**m) if q_weight(i, q) < bound)


@given(st.sampled_from([(2, 5), (3, 3), (3, 4), (4, 3), (5, 3), (7, 2), (9, 2)]), st.data())
def test_dimension_count(qm, data):
    q, m = qm
    bound = data.draw(st.integers(-1, m * (q - 1) + 2))
    assert count_low_weight(q, m, bound) == _brute_low_weight(q, m, bound)


@pytest.mark.parametrize("q, m", [(2, 4), (3, 3), (3, 7), (5, 4), (4, 3), (7, 3), (5, 10)])
def test_dimension_duality_and_first_order(q, m):
    for rho in range(1, m * (q - 1) - 1):
        assert grm_dimension(q, m, rho) + grm_dimension(q, m, dual_order(q, m, rho)) == q**m
    assert grm_dimension(q, m, 1) == m + 1
    if q**m < 5000:
        assert grm_dimension(q, m, 2) == q**m - len(grm_defining_set(q, m, 2))


def test_dimension_examples():
    assert grm_dimension(3, 3, 1) == 4
    assert grm_dimension(5, 3, 2) == 10
    assert grm_dimension(3, 3, 6) == 27
    with pytest.raises(ValueError):
        grm_dimension(3, 3, 0)


def test_find_decompositions_examples():
    assert (13, 2) in [(d.r1, d.r2) for d in find_decompositions(3, 3, 1)]
    assert (4, 1) in [(d.r1, d.a) for d in find_decompositions(5, 3, 2)]
    assert (8, 2) in [(d.r1, d.a) for d in find_decompositions(3, 6, 2)]
    assert find_decompositions(3, 2, 1) == []
    with pytest.raises(ValueError):
        find_decompositions(3, 1, 1)
    with pytest.raises(ValueError):
        find_decompositions(3, 3, 3)


@given(st.sampled_from([2, 3, 4, 5, 7]), st.integers(2, 8), st.sampled_from([1, 2]))
def test_find_decompositions_invariants(q, m, order):
    found = find_decompositions(q, m, order)
    n = q**m - 1
    assert [d.r1 for d in found] == sorted(d.r1 for d in found)
    for d in found:
        assert d.n == n and d.r1 > 1 and d.r2 > 1 and gcd(d.r1, d.r2) == 1
        assert d.a == multiplicative_order(q, d.r1) and m % d.a == 0
        if order == 2:
            assert d.second_order_valid


def test_information_set_roles_and_dimension_guard():
    gamma = gamma_first_order(3, 3, 13, 2)
    T = CrtIso(26, 13, 2)
    low, dual = to_information_sets(gamma, T, 3, 3, 1)
    assert low.role == "information-set-for-low-order" and dual.role == "information-set-for-dual"
    with pytest.raises(AssertionError):
        to_information_sets(gamma, T, 3, 3, 2)  # wrong order for this Gamma
    with pytest.raises(BadDecomposition):
        to_information_sets(gamma, CrtIso(80, 5, 16), 3, 3, 1)
