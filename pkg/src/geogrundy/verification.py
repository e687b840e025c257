"""Self-check suites behind the ``verify`` subcommand.

Each suite cross-validates a solver route against an independent oracle
computed here from first principles (raw game-tree recursion, subset DP),
at sizes small enough to finish interactively.  The pytest suite runs the
same kinds of checks at the full acceptance sizes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .constructor import LEMMAS, build_nimber_position, build_tree_nimber, verify_lemma
from .graph import DirectedGraph, DirectedPosition, Graph, Position, VertexMask, mask_bits
from .grundy import GrundySolver, SolveStats, exact_grundy, grundy_bab, grundy_degree3, mex, nim_sum
from .matching import is_winnable, maximum_matching, winning_move
from .reductions import (
    add_prelude,
    build_separation_instance,
    gg_to_ug,
    gg_winnable,
    label_for_uno,
    shift_nimber_chain,
    uno_from_labeling,
)
from .variants import (
    MultiTokenState,
    PassState,
    PlainState,
    SumState,
    SwapUnoState,
    swap_uno_to_ug,
    variant_grundy,
)

SUITES = ("algebra", "matching", "degree3", "constructor", "reductions", "variants")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _brute_grundy(position: Position, mask=None) -> int:
    adj = position.graph.adjacency

    def rec(removed: int, token: int) -> int:
        nxt = removed | 1 << token
        values = {rec(nxt, u) for u in adj[token] if not removed >> u & 1}
        m = 0
        while m in values:
            m += 1
        return m

    return rec(mask_bits(mask), position.token)


def _dp_matching_size(graph: Graph) -> int:
    adj = graph.neighbor_bits

    @lru_cache(maxsize=None)
    def best(avail: int) -> int:
        if not avail:
            return 0
        low = avail & -avail
        v = low.bit_length() - 1
        rest = avail ^ low
        out = best(rest)
        partners = adj[v] & rest
        while partners:
            p = partners & -partners
            out = max(out, 1 + best(rest ^ p))
            partners ^= p
        return out

    result = best((1 << graph.vertex_count) - 1)
    best.cache_clear()
    return result


def _random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    )


def _random_degree3(rng: random.Random, n: int) -> Graph:
    deg = [0] * n
    chosen = []
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    for u, v in pairs:
        if deg[u] < 3 and deg[v] < 3 and rng.random() < 0.7:
            chosen.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph.from_edges(n, chosen)


def run_algebra(rng: random.Random) -> list[CheckResult]:
    checks = []
    bad = 0
    for _ in range(2000):
        values = {rng.randrange(12) for _ in range(rng.randrange(8))}
        m = mex(values)
        if m in values or any(k not in values for k in range(m)):
            bad += 1
    checks.append(CheckResult("mex minimal excluded", bad == 0, f"{bad} violations / 2000"))
    bad = 0
    for _ in range(2000):
        a, b, c = (rng.randrange(1 << 16) for _ in range(3))
        if nim_sum(a, b) != nim_sum(b, a) or nim_sum(nim_sum(a, b), c) != nim_sum(a, nim_sum(b, c)):
            bad += 1
        if nim_sum(a, a) != 0 or nim_sum(a, 0) != a:
            bad += 1
    checks.append(CheckResult("xor algebra", bad == 0, f"{bad} violations / 2000"))
    return checks


def run_matching(rng: random.Random) -> list[CheckResult]:
    checks = []
    mismatches = 0
    total = 0
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            g = Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])
            if maximum_matching(g).size != _dp_matching_size(g):
                mismatches += 1
            total += 1
    checks.append(CheckResult(
        "blossom == subset-DP (exhaustive n<=5)", mismatches == 0, f"{mismatches} / {total}"
    ))
    mismatches = 0
    for _ in range(200):
        g = _random_graph(rng, rng.randrange(6, 11), rng.choice([0.2, 0.5, 0.8]))
        if maximum_matching(g).size != _dp_matching_size(g):
            mismatches += 1
    checks.append(CheckResult("blossom == subset-DP (random n<=10)", mismatches == 0,
                              f"{mismatches} / 200"))
    wrong = 0
    unsound = 0
    total = 0
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            g = Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])
            for s in range(n):
                p = Position(g, s)
                total += 1
                if is_winnable(p) != (_brute_grundy(p) != 0):
                    wrong += 1
                move = winning_move(p)
                if move is not None and _brute_grundy(
                    Position(g, move), VertexMask.of([s])
                ) != 0:
                    unsound += 1
    checks.append(CheckResult("winnability == game tree (exhaustive n<=5)", wrong == 0,
                              f"{wrong} / {total}"))
    checks.append(CheckResult("winning moves reach value-0 children", unsound == 0,
                              f"{unsound} / {total}"))
    return checks


def run_degree3(rng: random.Random) -> list[CheckResult]:
    mismatches = 0
    over_budget = 0
    bab_mismatches = 0
    total = 200
    for _ in range(total):
        n = rng.randrange(2, 13)
        g = _random_degree3(rng, n)
        p = Position(g, rng.randrange(n))
        truth = exact_grundy(p)
        stats = SolveStats()
        if grundy_degree3(p, stats=stats) != truth:
            mismatches += 1
        if stats.winnability_calls > 3 * n:
            over_budget += 1
        if grundy_bab(p) != truth:
            bab_mismatches += 1
    return [
        CheckResult("degree3 == exact (random cubic)", mismatches == 0, f"{mismatches} / {total}"),
        CheckResult("winnability calls <= 3n", over_budget == 0, f"{over_budget} / {total}"),
        CheckResult("branch-and-bound == exact", bab_mismatches == 0, f"{bab_mismatches} / {total}"),
    ]


def run_constructor(rng: random.Random) -> list[CheckResult]:
    checks = []
    for n in range(0, 6):
        c = build_nimber_position(n)
        value = exact_grundy(c.position)
        checks.append(CheckResult(f"build_nimber_position({n}) value", value == n,
                                  f"value {value}"))
    for n in range(0, 7):
        t = build_tree_nimber(n)
        ok = t.position.graph.vertex_count == 2 ** n
        checks.append(CheckResult(f"tree({n}) has 2^{n} vertices", ok,
                                  f"{t.position.graph.vertex_count} vertices"))
    for n in (4, 5):
        c = build_nimber_position(n)
        for lemma in LEMMAS:
            report = verify_lemma(c, lemma)
            failed = [chk for chk in report.checks if not chk.ok]
            checks.append(CheckResult(
                f"lemma {lemma} on n={n}", report.passed,
                f"{len(report.checks) - len(failed)}/{len(report.checks)} states"
            ))
    return checks


def run_reductions(rng: random.Random) -> list[CheckResult]:
    contract_bad = 0
    wrong_way_bad = 0
    prelude_bad = 0
    labeled = 0
    label_bad = 0
    total = 120
    for _ in range(total):
        n = rng.randrange(1, 5)
        arcs = [(t, h) for t in range(n) for h in range(n) if t != h and rng.random() < 0.3]
        d = DirectedPosition(DirectedGraph.from_arcs(n, arcs), rng.randrange(n))
        pos, gmap = gg_to_ug(d)
        solver = GrundySolver(pos.graph)
        value = solver.value(pos.token)
        if gg_winnable(d):
            if value < 2:
                contract_bad += 1
        elif value != 1:
            contract_bad += 1
        for g in gmap.gadgets.values():
            if solver.value(g.d, VertexMask.of([g.y])) not in (2, 3):
                wrong_way_bad += 1
        if exact_grundy(add_prelude(pos)) not in (1, 2):
            prelude_bad += 1
        try:
            labeling = label_for_uno(pos, gmap)
        except Exception:
            continue
        labeled += 1
        if not labeling.check_invariant():
            label_bad += 1
    checks = [
        CheckResult("gg->ug value contract", contract_bad == 0, f"{contract_bad} / {total}"),
        CheckResult("wrong-way entries are *2/*3", wrong_way_bad == 0, f"{wrong_way_bad} bad"),
        CheckResult("prelude collapses to {*, *2}", prelude_bad == 0, f"{prelude_bad} / {total}"),
        CheckResult("uno labeling invariant", label_bad == 0, f"{label_bad} / {labeled} labeled"),
    ]
    star = build_tree_nimber(1).position
    star2 = build_tree_nimber(2).position
    ok = (
        exact_grundy(shift_nimber_chain(star2, 2, 4)) == 4
        and exact_grundy(shift_nimber_chain(star, 2, 4)) == 3
        and exact_grundy(build_separation_instance(star2, 2, 5)) == 5
        and exact_grundy(build_separation_instance(star, 2, 5)) == 2
    )
    checks.append(CheckResult("chain and separation values", ok, "seeds * and *2 to targets 4/5"))
    return checks


def run_variants(rng: random.Random) -> list[CheckResult]:
    sum_bad = 0
    pass_bad = 0
    token_bad = 0
    uno_bad = 0
    for _ in range(120):
        g1 = _random_graph(rng, rng.randrange(1, 6), 0.5)
        g2 = _random_graph(rng, rng.randrange(1, 6), 0.5)
        p1 = Position(g1, rng.randrange(g1.vertex_count))
        p2 = Position(g2, rng.randrange(g2.vertex_count))
        total = variant_grundy(SumState((PlainState(p1), PlainState(p2))))
        if total != nim_sum(exact_grundy(p1), exact_grundy(p2)):
            sum_bad += 1
        k = rng.randrange(0, 4)
        if variant_grundy(PassState(p1, k)) != exact_grundy(p1) ^ (k % 2):
            pass_bad += 1
        merged = Graph.from_edges(
            g1.vertex_count + g2.vertex_count,
            g1.edges() + [(u + g1.vertex_count, v + g1.vertex_count) for u, v in g2.edges()],
        )
        two = MultiTokenState(merged, (p1.token, g1.vertex_count + p2.token))
        if variant_grundy(two) != total:
            token_bad += 1
        hands = tuple(
            tuple((rng.randrange(3), rng.randrange(3)) for _ in range(rng.randrange(0, 4)))
            for _ in range(2)
        )
        state = SwapUnoState(hands=hands)
        if variant_grundy(state) != variant_grundy(swap_uno_to_ug(state)):
            uno_bad += 1
    return [
        CheckResult("sum law on the variant engine", sum_bad == 0, f"{sum_bad} / 120"),
        CheckResult("pass parity", pass_bad == 0, f"{pass_bad} / 120"),
        CheckResult("two tokens on disjoint boards == sum", token_bad == 0, f"{token_bad} / 120"),
        CheckResult("swap uno == bipartite image + *", uno_bad == 0, f"{uno_bad} / 120"),
    ]


_RUNNERS = {
    "algebra": run_algebra,
    "matching": run_matching,
    "degree3": run_degree3,
    "constructor": run_constructor,
    "reductions": run_reductions,
    "variants": run_variants,
}


def run_suite(name: str, seed: int = 2024) -> list[CheckResult]:
    if name == "all":
        out = []
        for suite in SUITES:
            out.extend(run_suite(suite, seed))
        return out
    runner = _RUNNERS.get(name)
    if runner is None:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
    return runner(random.Random(seed))
