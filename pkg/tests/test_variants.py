from __future__ import annotations

import random

import pytest

from geogrundy.graph import Graph, Position, VertexMask
from geogrundy.grundy import GrundySolver, SolveBudget, exact_grundy, nim_sum
from geogrundy.variants import (
    MultiTokenState,
    PassState,
    PlainState,
    SumState,
    SwapUnoState,
    fast_variant_solve,
    options,
    swap_uno_to_ug,
    variant_grundy,
)

from util import random_graph, random_max_degree_graph

EDGE = Position(Graph.from_edges(2, [(0, 1)]), 0)
PATH3 = Position(Graph.from_edges(3, [(0, 1), (1, 2)]), 1)


def test_sum_options_one_move_per_component():
    s = SumState((PlainState(EDGE), PlainState(EDGE)))
    assert len(options(s)) == 2


def test_pass_options_include_the_pass():
    s = PassState(EDGE, passes_remaining=1)
    opts = options(s)
    assert len(opts) == 2
    assert any(o.passes_remaining == 0 and o.position == EDGE for o in opts)


def test_multitoken_excludes_occupied_vertices():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    s = MultiTokenState(g, (0, 1))
    moves = options(s)
    # Token at 0 cannot move onto the occupied vertex 1; token at 1 only to 2.
    assert all(isinstance(o, MultiTokenState) for o in moves)
    assert {o.tokens for o in moves} == {(0, 2)}


def test_multitoken_rejects_clashing_tokens():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        MultiTokenState(g, (0, 0))


def test_swap_uno_options_and_single_swap():
    s = SwapUnoState(hands=(((1, 1),), ((1, 2),)))
    opts = options(s)
    # Play the only card, or swap.
    assert len(opts) == 2
    swapped = [o for o in opts if o.swap_used]
    assert len(swapped) == 1
    assert swapped[0].hands == s.hands
    # After the swap nobody may swap again.
    assert all(o.swap_used for o in options(swapped[0]))


def test_variant_grundy_star_pairs():
    assert variant_grundy(SumState((PlainState(EDGE), PlainState(EDGE)))) == 0
    assert variant_grundy(PassState(EDGE, 1)) == 0
    assert variant_grundy(PassState(EDGE, 2)) == 1


def test_plain_variant_grundy_matches_exact():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randrange(1, 7)
        g = random_graph(rng, n, 0.4)
        p = Position(g, rng.randrange(n))
        assert variant_grundy(PlainState(p)) == exact_grundy(p)


def test_sum_law_on_variant_engine():
    rng = random.Random(37)
    for _ in range(60):
        gs = []
        for _ in range(2):
            n = rng.randrange(1, 7)
            gs.append(Position(random_graph(rng, n, 0.4), rng.randrange(n)))
        total = variant_grundy(SumState((PlainState(gs[0]), PlainState(gs[1]))))
        assert total == nim_sum(exact_grundy(gs[0]), exact_grundy(gs[1]))


def test_pass_parity_law():
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randrange(1, 7)
        p = Position(random_graph(rng, n, 0.4), rng.randrange(n))
        base = exact_grundy(p)
        for k in range(0, 4):
            assert variant_grundy(PassState(p, k)) == base ^ (k % 2)


def test_two_token_specializes_to_sum():
    rng = random.Random(43)
    for _ in range(40):
        n1, n2 = rng.randrange(1, 6), rng.randrange(1, 6)
        g1 = random_graph(rng, n1, 0.5)
        g2 = random_graph(rng, n2, 0.5)
        merged = Graph.from_edges(
            n1 + n2,
            g1.edges() + [(u + n1, v + n1) for u, v in g2.edges()],
        )
        t1, t2 = rng.randrange(n1), n1 + rng.randrange(n2)
        two_token = variant_grundy(MultiTokenState(merged, (t1, t2)))
        summed = variant_grundy(SumState((
            PlainState(Position(merged, t1)),
            PlainState(Position(merged, t2)),
        )))
        assert two_token == summed


def test_swap_uno_round_trip_small_hands():
    rng = random.Random(47)
    for _ in range(80):
        def hand():
            k = rng.randrange(0, 4)
            return tuple((rng.randrange(3), rng.randrange(3)) for _ in range(k))

        state = SwapUnoState(hands=(hand(), hand()))
        direct = variant_grundy(state)
        image = variant_grundy(swap_uno_to_ug(state))
        assert direct == image, state


def test_swap_uno_round_trip_with_top_card_and_used_swap():
    rng = random.Random(53)
    for _ in range(60):
        def hand():
            k = rng.randrange(0, 4)
            return tuple((rng.randrange(3), rng.randrange(3)) for _ in range(k))

        top = (rng.randrange(3), rng.randrange(3))
        used = rng.random() < 0.5
        state = SwapUnoState(hands=(hand(), hand()), top=top, swap_used=used)
        assert variant_grundy(state) == variant_grundy(swap_uno_to_ug(state)), state


def test_fast_solve_plain_path3():
    out = fast_variant_solve(PlainState(PATH3))
    assert out.winnable is True
    assert out.value == 1
    assert out.method == "matching+degree3"


def test_fast_solve_pass_even_uses_matching_only():
    out = fast_variant_solve(PassState(PATH3, 2))
    assert out.winnable is True
    assert out.value == variant_grundy(PassState(PATH3, 2))


def test_fast_solve_pass_odd():
    out = fast_variant_solve(PassState(PATH3, 1))
    assert out.value == variant_grundy(PassState(PATH3, 1)) == 0
    assert out.winnable is False


def test_fast_solve_sum_of_degree3_components():
    s = SumState((PlainState(PATH3), PlainState(EDGE)))
    out = fast_variant_solve(s)
    assert out.value == variant_grundy(s)
    assert out.winnable == (out.value != 0)
    assert "degree3" in out.method and "xor" in out.method


def test_fast_solve_agrees_with_exact_on_random_variants():
    rng = random.Random(59)
    for _ in range(60):
        n = rng.randrange(1, 7)
        g = random_max_degree_graph(rng, n, 3)
        p = Position(g, rng.randrange(n))
        k = rng.randrange(0, 3)
        state = PassState(p, k)
        out = fast_variant_solve(state)
        truth = variant_grundy(state)
        assert out.winnable == (truth != 0)
        if out.value is not None:
            assert out.value == truth


def test_fast_solve_needs_nimber_on_oversized_odd_pass():
    rng = random.Random(61)
    g = random_graph(rng, 30, 0.5)
    state = PassState(Position(g, 0), 1)
    out = fast_variant_solve(state, SolveBudget(max_states=200, max_millis=5_000))
    assert out.method == "needs_nimber"
    assert out.winnable is None and out.value is None


def test_fast_solve_multitoken_split():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    state = MultiTokenState(g, (0, 2))
    out = fast_variant_solve(state)
    assert out.value == variant_grundy(state) == 0
    assert out.method.startswith("split+")


def test_fast_solve_multitoken_connected_exact():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    state = MultiTokenState(g, (0, 2))
    out = fast_variant_solve(state)
    assert out.method == "exact"
    assert out.value == variant_grundy(state)


def test_fast_solve_swap_uno_routes_through_image():
    state = SwapUnoState(hands=(((0, 0),), ((0, 1),)))
    out = fast_variant_solve(state)
    assert out.value == variant_grundy(state)
    assert out.method.startswith("uno+")
