from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ecorchard.errors import NonInteger, RankTooHigh, TooLarge, TooSmall
from ecorchard.group_counting import (
    AbelianStructure,
    classify_excess,
    count_3rich_bruteforce,
    count_3rich_formula,
    green_tao_bound,
    invariant_factor_chains,
    parse_group,
    psi,
    psi_literal,
)

G = AbelianStructure.of


def naive_count(group):
    """Plain-Python oracle: unordered triples of distinct elements summing to zero."""
    elems = list(product(*(range(n) for n in group.factors)))
    index = {e: i for i, e in enumerate(elems)}
    count = 0
    for i, x in enumerate(elems):
        for j in range(i + 1, len(elems)):
            y = elems[j]
            z = tuple(-(a + b) % n for a, b, n in zip(x, y, group.factors))
            if index[z] > j:
                count += 1
    return count


def test_structure_validation():
    assert G(1, 6) == G(6)
    assert str(G()) == "1" and G().order == 1
    with pytest.raises(ValueError):
        G(4, 6)
    with pytest.raises(ValueError):
        parse_group("4,6")
    assert parse_group("2,10") == G(2, 10)


@pytest.mark.parametrize("group,value,literal", [(G(3, 3), 2, 1), (G(20), 0, 0), (G(2, 6), 1, 0), (G(3, 9, 27), 3, 2)])
def test_psi(group, value, literal):
    assert psi(group) == value
    assert psi_literal(group) == literal


def test_psi_is_log3_of_three_torsion():
    for group in invariant_factor_chains(200, 3):
        elems = product(*(range(n) for n in group.factors))
        torsion = sum(all(3 * a % n == 0 for a, n in zip(e, group.factors)) for e in elems)
        assert torsion == 3 ** psi(group)


@pytest.mark.parametrize("group,t", [(G(6), 4), (G(2, 4), 7), (G(3, 3), 12), (G(9, 9), 1056), (G(145), 3432), (G(3), 1)])
def test_formula_examples(group, t):
    assert count_3rich_formula(group) == t


def test_literal_psi_disagrees_with_bruteforce():
    assert count_3rich_formula(G(3, 3), psi_literal(G(3, 3))) == 10 != count_3rich_bruteforce(G(3, 3))
    with pytest.raises(NonInteger):
        count_3rich_formula(G(3), 0)


@pytest.mark.parametrize("group,t", [(G(3), 1), (G(2, 4), 7), (G(145), 3432), (G(3, 3), 12)])
def test_bruteforce_examples(group, t):
    assert count_3rich_bruteforce(group) == t


def test_bruteforce_matches_naive_oracle():
    for group in invariant_factor_chains(60, 3):
        assert count_3rich_bruteforce(group) == naive_count(group)


def test_bruteforce_cap():
    with pytest.raises(TooLarge):
        count_3rich_bruteforce(G(501))


def test_bound_examples():
    assert [green_tao_bound(n) for n in (3, 4, 8, 225)] == [1, 1, 7, 8326]
    with pytest.raises(TooSmall):
        green_tao_bound(2)


def test_cyclic_count_equals_bound():
    previous = 0
    for N in range(3, 501):
        t = count_3rich_formula(G(N))
        assert t == green_tao_bound(N)
        assert t >= previous
        previous = t


def test_divisibility_and_dichotomy():
    for group in invariant_factor_chains(500, 2):
        N = group.order
        assert (N * N - 3 * N + 2 * 3 ** psi(group)) % 6 == 0
        if N < 3:
            continue
        s = classify_excess(group)
        three_divides_n1 = group.rank == 2 and group.factors[0] % 3 == 0
        assert s.excess == (2 if three_divides_n1 else 0)


@pytest.mark.parametrize("group,excess", [(G(48), 0), (G(6, 6), 2), (G(2, 6), 0)])
def test_classify_examples(group, excess):
    assert classify_excess(group).excess == excess


def test_rank_three_rejected():
    with pytest.raises(RankTooHigh):
        classify_excess(G(2, 2, 2))


def test_chain_enumeration_is_complete():
    chains = invariant_factor_chains(16, 3)
    # groups of order 16 and 8 with at most three invariant factors
    assert sum(1 for g in chains if g.order == 16) == 4  # 16, 2+8, 4+4, 2+2+4
    assert sum(1 for g in chains if g.order == 8) == 3
    assert all(g.rank <= 3 for g in chains)


@given(st.lists(st.integers(1, 6), min_size=1, max_size=3))
def test_formula_matches_bruteforce_on_random_chains(steps):
    factors, n = [], 1
    for k in steps:
        n *= k
        factors.append(n)
    group = G(*factors)
    if group.order <= 500:
        assert count_3rich_formula(group) == count_3rich_bruteforce(group)
