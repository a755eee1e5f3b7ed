from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ewenspitman.errors import NotCovering
from ewenspitman.partitions import (
    KINGMAN,
    PASCAL,
    Partition,
    PascalVertex,
    check_harmonic,
    covers,
    enumerate_level,
    graph_dim,
    growth_paths,
    kingman_dim,
    kingman_multiplicity,
    partition_count,
    pascal_boundary_ratio,
    pascal_dim,
)

P = Partition.of


def brute_partition_count(n):
    # count multisets of parts by dynamic programming over the largest part
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def test_partition_validation():
    assert Partition().size == 0 and Partition().length == 0
    with pytest.raises(ValueError):
        P(1, 2)
    with pytest.raises(ValueError):
        P(2, 0)
    assert Partition.from_unsorted([1, 3, 0, 2]) == P(3, 2, 1)


def test_notation_views():
    lam = P(4, 2, 2, 1)
    assert lam.frequency_vector() == [1, 2, 0, 1, 0, 0, 0, 0, 0]
    assert lam.frequencies() == {4: 1, 2: 2, 1: 1}
    assert Partition.from_frequencies({1: 1, 2: 2, 4: 1}) == lam
    assert lam.padded(6) == (4, 2, 2, 1, 0, 0)
    assert lam.freq_factorial_product() == 2


@pytest.mark.parametrize("n", range(0, 11))
def test_frequency_sums(n):
    for lam in enumerate_level(n):
        r = lam.frequency_vector()
        assert sum((j + 1) * rj for j, rj in enumerate(r)) == n
        assert sum(r) == lam.length


def test_enumerate_level_examples():
    assert enumerate_level(0) == [Partition()]
    assert enumerate_level(4) == [P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)]
    assert len(enumerate_level(12)) == 77


@pytest.mark.parametrize("n", range(0, 31))
def test_level_sizes_match_euler(n):
    level = enumerate_level(n) if n <= 20 else None
    assert partition_count(n) == brute_partition_count(n)
    if level is not None:
        assert len(level) == partition_count(n)
        assert len(set(level)) == len(level)


def test_enumeration_order_is_reverse_lex():
    level = enumerate_level(8)
    assert [lam.parts for lam in level] == sorted((lam.parts for lam in level), reverse=True)


def test_kingman_multiplicity_examples():
    assert kingman_multiplicity(P(2, 1), P(2, 2)) == 2
    assert kingman_multiplicity(P(1), P(2)) == 1
    assert kingman_multiplicity(P(4, 2), P(4, 2, 1)) == 1
    with pytest.raises(NotCovering):
        kingman_multiplicity(P(2, 1), P(4))
    with pytest.raises(NotCovering):
        kingman_multiplicity(P(2, 1), P(2, 1))


def test_successors_and_predecessors_agree():
    for n in range(6):
        for mu in enumerate_level(n):
            succ = dict(mu.successors())
            for lam in enumerate_level(n + 1):
                if covers(mu, lam):
                    assert succ[lam] == kingman_multiplicity(mu, lam)
                    assert dict(lam.predecessors())[mu] == succ[lam]
                else:
                    assert lam not in succ


def test_covering_antisymmetric():
    for n in range(6):
        for a in enumerate_level(n):
            for b in enumerate_level(n + 1):
                assert not (covers(a, b) and covers(b, a))
                if covers(a, b):
                    assert b.size == a.size + 1


def test_kingman_dim_examples():
    assert kingman_dim(P(2, 1)) == 3
    assert kingman_dim(P(4, 2, 1)) == 105
    assert kingman_dim(Partition()) == 1


@pytest.mark.parametrize("n", range(1, 11))
def test_dim_recursion(n):
    for lam in enumerate_level(n):
        assert kingman_dim(lam) == sum(k * kingman_dim(mu) for mu, k in lam.predecessors())
        assert graph_dim(KINGMAN, lam) == kingman_dim(lam)


@pytest.mark.parametrize("n", range(1, 7))
def test_dim_counts_weighted_paths(n):
    for lam in enumerate_level(n):
        paths = list(growth_paths(KINGMAN, lam))
        assert all(len(path) == n + 1 for path, _ in paths)
        assert sum(w for _, w in paths) == kingman_dim(lam)


def test_pascal_dim_examples():
    assert pascal_dim(PascalVertex(0, 0), PascalVertex(2, 1)) == 3
    assert pascal_dim(PascalVertex(1, 1), PascalVertex(1, 1)) == 1
    assert pascal_dim(PascalVertex(2, 0), PascalVertex(1, 5)) == 0


@given(st.integers(0, 6), st.integers(0, 6))
def test_pascal_dim_matches_path_count(h, t):
    v = PascalVertex(h, t)
    assert graph_dim(PASCAL, v) == pascal_dim(PASCAL.root, v)


def _ep_phi(lam, theta=F(1), alpha=F(1, 2)):
    from ewenspitman.series import rising_factorial

    val = rising_factorial(theta, lam.length, alpha) / rising_factorial(theta, lam.size)
    for part in lam.parts:
        val *= rising_factorial(1 - alpha, part - 1)
    return val / lam.freq_factorial_product()


def test_check_harmonic_examples():
    assert check_harmonic(KINGMAN, _ep_phi, 3)
    p = F(1, 3)
    assert check_harmonic(PASCAL, lambda v: p**v.h * (1 - p) ** v.t, 4)
    assert not check_harmonic(KINGMAN, lambda lam: F(1), 2)


def test_pascal_boundary_examples():
    v = pascal_boundary_ratio(PascalVertex(1, 1), F(1, 2), 1000)
    assert abs(v - F(1, 4)) < F(1, 100)
    assert pascal_boundary_ratio(PascalVertex(0, 0), F(2, 7), 50) == 1
    assert pascal_boundary_ratio(PascalVertex(2, 0), F(0), 100) == 0


def test_pascal_boundary_exact_small_case():
    # n = 4, p = 1/2: target (2,2); dim((1,1),(2,2)) = 2, dim((2,2)) = 6
    assert pascal_boundary_ratio(PascalVertex(1, 1), F(1, 2), 4) == F(1, 3)
