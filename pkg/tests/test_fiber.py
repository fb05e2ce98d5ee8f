from itertools import combinations

import pytest

from margo import (
    ConfigSpace,
    ContingencyTable,
    Move,
    ResourceCeilingError,
    binary_space,
    enumerate_fiber,
    fiber_connected,
    from_facets,
    interval_complement,
    interval_move,
    interval_moves,
    marginal_map,
    min_binomial_degree,
    move_supports,
    tableau,
    uniform_complex,
    verify_markov_basis,
)
from margo.spaces import MarginalVector

from conftest import naive_fiber, random_complex, random_table

INDEPENDENCE = from_facets(2, [{1}, {2}])
B2 = binary_space(2)
D2_3 = uniform_complex(3, 2)
B3 = binary_space(3)


def test_enumerate_fiber_classic_two_by_two():
    b = marginal_map(INDEPENDENCE, ContingencyTable(B2, (1, 0, 0, 1)))
    fib = enumerate_fiber(INDEPENDENCE, B2, b)
    assert fib.size == 2
    assert [t.counts for t in fib.tables] == [(0, 1, 1, 0), (1, 0, 0, 1)]


def test_enumerate_fiber_zero_marginal():
    b = marginal_map(INDEPENDENCE, ContingencyTable.zero(B2))
    fib = enumerate_fiber(INDEPENDENCE, B2, b)
    assert fib.size == 1 and fib.tables[0].degree == 0


def test_enumerate_fiber_parity():
    even = ContingencyTable(B3, (1, 0, 0, 1, 0, 1, 1, 0))
    odd = ContingencyTable(B3, (0, 1, 1, 0, 1, 0, 0, 1))
    fib = enumerate_fiber(D2_3, B3, marginal_map(D2_3, even))
    assert fib.size == 2
    assert set(t.counts for t in fib.tables) == {even.counts, odd.counts}


def test_enumerate_fiber_matches_naive(rng):
    for cards in [(2, 2), (2, 3), (2, 2, 2)]:
        sp = ConfigSpace(cards)
        for _ in range(8):
            cx = random_complex(rng, len(cards))
            if not cx.facets:
                continue
            u = random_table(rng, sp, rng.randint(0, 4))
            b = marginal_map(cx, u)
            fib = enumerate_fiber(cx, sp, b)
            expected = naive_fiber(cx, sp, b)
            assert [t.counts for t in fib.tables] == [t.counts for t in expected]


def test_enumerate_fiber_rejects_inconsistent_marginal():
    lay_blocks = marginal_map(INDEPENDENCE, ContingencyTable.zero(B2)).blocks
    bad = MarginalVector((1, 0, 1, 1), lay_blocks)
    with pytest.raises(ValueError, match="inconsistent"):
        enumerate_fiber(INDEPENDENCE, B2, bad)


def test_enumerate_fiber_rejects_facet_free_complex():
    cx = from_facets(2, [])
    with pytest.raises(ValueError, match="no facets"):
        enumerate_fiber(cx, B2, MarginalVector((), ()))


def test_fiber_connected_cases():
    b = marginal_map(INDEPENDENCE, ContingencyTable(B2, (1, 0, 0, 1)))
    fib = enumerate_fiber(INDEPENDENCE, B2, b)
    swap = interval_move(2, {1, 2}, ())

    rep = fiber_connected(fib, [swap])
    assert rep.connected and rep.components == 1 and rep.witness is None

    rep = fiber_connected(fib, [])
    assert not rep.connected and rep.components == 2
    u, v = rep.witness
    assert u.counts == (0, 1, 1, 0) and v.counts == (1, 0, 0, 1)

    parity_fiber = enumerate_fiber(
        D2_3, B3, marginal_map(D2_3, ContingencyTable(B3, (1, 0, 0, 1, 0, 1, 1, 0))))
    rep = fiber_connected(parity_fiber, [interval_move(3, {1, 2, 3}, ())])
    assert rep.connected


def test_fiber_connected_rejects_non_kernel_move():
    b = marginal_map(INDEPENDENCE, ContingencyTable(B2, (1, 0, 0, 1)))
    fib = enumerate_fiber(INDEPENDENCE, B2, b)
    with pytest.raises(ValueError, match="kernel"):
        fiber_connected(fib, [Move(B2, (1, 0, 0, -1))])


def test_verify_markov_interval_models_pass():
    rep = verify_markov_basis(interval_complement(3, {1, 2, 3}), B3,
                              interval_moves(3, {1, 2, 3}), 6)
    assert rep.passed

    rep = verify_markov_basis(interval_complement(3, {2, 3}), B3,
                              interval_moves(3, {2, 3}), 6)
    assert rep.passed


def test_verify_markov_fails_without_moves():
    rep = verify_markov_basis(D2_3, B3, [], 4)
    assert not rep.passed
    bad = rep.witness
    assert bad.fiber.marginal.degree == 4
    assert bad.fiber.size == 2
    u, v = bad.report.witness
    assert {u.counts, v.counts} == {
        (1, 0, 0, 1, 0, 1, 1, 0), (0, 1, 1, 0, 1, 0, 0, 1)
    }


def test_verify_markov_methods_agree(rng):
    for n in (2, 3):
        sp = binary_space(n)
        for g_size in range(1, n + 1):
            for g in combinations(range(1, n + 1), g_size):
                cx = interval_complement(n, g)
                moves = list(interval_moves(n, g))
                limit = 2 * 2 ** (g_size - 1) + 2
                full_a = verify_markov_basis(cx, sp, moves, limit, method="fibers")
                full_b = verify_markov_basis(cx, sp, moves, limit, method="tables")
                assert full_a.passed and full_b.passed
                if len(moves) > 1:
                    part_a = verify_markov_basis(cx, sp, moves[1:], limit, method="fibers")
                    part_b = verify_markov_basis(cx, sp, moves[1:], limit, method="tables")
                    assert not part_a.passed and not part_b.passed
                    assert part_a.witness.fiber.marginal == part_b.witness.fiber.marginal
                    wa = tuple(t.counts for t in part_a.witness.report.witness)
                    wb = tuple(t.counts for t in part_b.witness.report.witness)
                    assert wa == wb


def test_verify_markov_methods_agree_on_random_moves(rng):
    # sanity on a non-interval complex: d2 with its parity move
    parity = interval_move(3, {1, 2, 3}, ())
    for limit in (4, 6):
        a = verify_markov_basis(D2_3, B3, [parity], limit, method="fibers")
        b = verify_markov_basis(D2_3, B3, [parity], limit, method="tables")
        assert a.passed == b.passed


def test_verify_markov_rejects_non_kernel_move():
    with pytest.raises(ValueError, match="kernel"):
        verify_markov_basis(INDEPENDENCE, B2, [Move(B2, (1, 0, 0, 0))], 4)


def test_verify_markov_table_method_refuses_over_ceiling():
    with pytest.raises(ResourceCeilingError):
        verify_markov_basis(D2_3, B3, [interval_move(3, {1, 2, 3}, ())], 12,
                            method="tables", ceiling=1000)


def test_fiber_method_respects_ceiling():
    with pytest.raises(ResourceCeilingError):
        verify_markov_basis(interval_complement(4, {1}), binary_space(4),
                            interval_moves(4, {1}), 4, ceiling=50)


def test_min_binomial_degree_independence():
    got = min_binomial_degree(INDEPENDENCE, B2, 2)
    assert got is not None
    k, move = got
    assert k == 2
    assert move.vector == (1, -1, -1, 1)


def test_min_binomial_degree_d2_binary():
    k, move = min_binomial_degree(D2_3, B3, 4)
    assert k == 4
    pos, neg, deg = move_supports(move)
    assert deg == 4
    assert set(pos) == {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)}
    assert set(neg) == {(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)}


def test_min_binomial_degree_none_when_bound_too_small():
    assert min_binomial_degree(D2_3, B3, 3) is None


def test_min_binomial_degree_interval_models_attain_bound():
    for n in (2, 3, 4):
        sp = binary_space(n)
        for g_size in range(1, n + 1):
            g = tuple(range(1, g_size + 1))
            cx = interval_complement(n, g)
            k, move = min_binomial_degree(cx, sp, 2 ** (g_size - 1))
            assert k == 2 ** (g_size - 1)
            pos, neg, _ = move_supports(move)
            assert len(pos) >= 2 ** (g_size - 1)
            assert len(neg) >= 2 ** (g_size - 1)
            assert all(abs(v) <= 1 for v in move.vector)


def test_min_binomial_degree_respects_theorem_bound(rng):
    for n in (2, 3):
        sp = binary_space(n)
        for _ in range(10):
            cx = random_complex(rng, n)
            try:
                g = cx.min_nonface_cardinality()
            except ValueError:
                continue
            if g < 1:
                continue
            found = min_binomial_degree(cx, sp, 2 ** (g - 1), ceiling=200000)
            if found is not None:
                k, move = found
                assert k == 2 ** (g - 1)
                pos, neg, _ = move_supports(move)
                assert len(pos) >= 2 ** (g - 1) and len(neg) >= 2 ** (g - 1)


def test_min_binomial_degree_witness_is_fiber_pair():
    k, move = min_binomial_degree(D2_3, B3, 4)
    assert marginal_map(D2_3, move.positive) == marginal_map(D2_3, move.negative)
    pos, neg, _ = move_supports(move)
    assert not set(pos) & set(neg)


def test_tableau():
    u = ContingencyTable(B3, (1, 0, 0, 0, 0, 0, 1, 2))
    assert tableau(u) == "000\n110\n111\n111\n"
    assert tableau(ContingencyTable.zero(B3)) == ""
    assert tableau(ContingencyTable.indicator(B2, (0, 1))) == "01\n"
