"""Generators for Undirected Geography boards with a prescribed Grundy value.

Two constructions: the exponential pendant-tree family (value *n needs 2^n
vertices) and the quadratic-size rank-clique construction (vertices N_4..N_n
in a clique, each rank guarded by grounding, * and *2 gadgets that expire as
soon as any lower rank is consumed).  ``verify_lemma`` replays the residual
states each supporting lemma quantifies over and checks the claimed values
with the exact solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .build import GraphBuilder
from .graph import Position, VertexMask
from .grundy import GrundySolver, SolveBudget

DEFAULT_TREE_CAP = 10


class CapExceeded(ValueError):
    """Requested tree nimber is above the configured size cap."""


@dataclass(frozen=True)
class LabeledConstruction:
    """A generated board whose vertices carry role tags for lemma tests."""

    position: Position
    labels: dict[int, str]

    def vertex(self, label: str) -> int:
        """The unique vertex carrying ``label``; role tags N/R/M/P are unique."""
        hits = [v for v, name in self.labels.items() if name == label]
        if len(hits) != 1:
            raise KeyError(f"label {label!r} names {len(hits)} vertices")
        return hits[0]

    def has_label(self, label: str) -> bool:
        return any(name == label for name in self.labels.values())

    @property
    def rank(self) -> int:
        """Largest rank n; the token sits on N_n for clique constructions."""
        ranks = [int(name[1:]) for name in self.labels.values()
                 if name.startswith("N") and name[1:].isdigit()]
        return max(ranks) if ranks else 0

    def ranks(self) -> list[int]:
        return [i for i in range(4, self.rank + 1)]

    def m_group(self, i: int) -> list[int]:
        """M_i, its pendant zero, and every chain vertex M_{i,j}^(a..d)."""
        out = [self.vertex(f"M{i}"), self.vertex(f"M{i}.0")]
        for j in range(4, i):
            out.extend(self.vertex(f"M{i}.{j}.{part}") for part in "abcd")
        return out

    def p_group(self, i: int) -> list[int]:
        out = [self.vertex(f"P{i}"), self.vertex(f"P{i}.0")]
        for j in range(4, i):
            out.extend(self.vertex(f"P{i}.{j}.{part}") for part in "abcdef")
        return out


def _add_tree(builder: GraphBuilder, value: int, root_label: str) -> int:
    """Pendant tree of Grundy value ``value``: root moves to t(0)..t(value-1)."""
    root = builder.add_vertex(root_label)
    for sub in range(value):
        child = _add_tree(builder, sub, "T")
        builder.add_edge(root, child)
    return root


def build_tree_nimber(n: int, cap: int = DEFAULT_TREE_CAP) -> LabeledConstruction:
    """Tree with 2^n vertices whose root position has Grundy value n."""
    if n < 0:
        raise ValueError("nimber must be non-negative")
    if n > cap:
        raise CapExceeded(f"tree nimber {n} needs 2^{n} vertices; cap is {cap}")
    b = GraphBuilder()
    root = _add_tree(b, n, f"T{n}")
    return LabeledConstruction(b.position(root), b.labels)


def build_nimber_position(n: int) -> LabeledConstruction:
    """Board of size O(n^2) whose token position has Grundy value n.

    Values up to 3 come from pendant trees.  Beyond that, ranks 4..n form a
    clique; each rank i carries a grounding vertex R_i, pendant trees for
    *3 (and, at rank 4 only, also * and *2), and for i >= 5 the expiring
    * gadget M_i and *2 gadget P_i, chained down to every lower rank's R_j
    so that removing a lower rank spoils them to *3.
    """
    if n < 0:
        raise ValueError("nimber must be non-negative")
    if n <= 3:
        return build_tree_nimber(n)
    b = GraphBuilder()
    N: dict[int, int] = {}
    R: dict[int, int] = {}
    N[4] = b.add_vertex("N4")
    R[4] = b.add_vertex("R4")
    b.add_edge(N[4], R[4])
    for i in range(5, n + 1):
        N[i] = b.add_vertex(f"N{i}")
        m_i = b.add_vertex(f"M{i}")
        p_i = b.add_vertex(f"P{i}")
        R[i] = b.add_vertex(f"R{i}")
        m_zero = b.add_vertex(f"M{i}.0")
        p_zero = b.add_vertex(f"P{i}.0")
        b.add_edge(N[i], R[i])
        b.add_edge(m_i, m_zero)
        b.add_edge(p_i, p_zero)
        b.add_edge(N[i], m_i)
        b.add_edge(N[i], p_i)
        b.add_edge(N[i], _add_tree(b, 3, "T3"))
        for j in range(4, i):
            pa = b.add_vertex(f"P{i}.{j}.a")
            pb = b.add_vertex(f"P{i}.{j}.b")
            pc = b.add_vertex(f"P{i}.{j}.c")
            pd = b.add_vertex(f"P{i}.{j}.d")
            pe = b.add_vertex(f"P{i}.{j}.e")
            pf = b.add_vertex(f"P{i}.{j}.f")
            ma = b.add_vertex(f"M{i}.{j}.a")
            mb = b.add_vertex(f"M{i}.{j}.b")
            mc = b.add_vertex(f"M{i}.{j}.c")
            md = b.add_vertex(f"M{i}.{j}.d")
            b.add_edge(p_i, pa)
            b.add_edge(pa, pb)
            b.add_edge(pa, pc)
            b.add_edge(pc, pd)
            b.add_edge(pc, pe)
            b.add_edge(pe, pf)
            b.add_edge(pf, R[j])
            b.add_edge(N[i], N[j])
            b.add_edge(m_i, ma)
            b.add_edge(ma, mb)
            b.add_edge(ma, mc)
            b.add_edge(mc, md)
            b.add_edge(md, R[j])
        b.add_edge(m_i, _add_tree(b, 2, "T2"))
        b.add_edge(p_i, _add_tree(b, 1, "T1"))
    # Rank 4 has no expiring gadgets; its *, *2 and *3 moves are plain trees.
    b.add_edge(N[4], _add_tree(b, 1, "T1"))
    b.add_edge(N[4], _add_tree(b, 2, "T2"))
    b.add_edge(N[4], _add_tree(b, 3, "T3"))
    return LabeledConstruction(b.position(N[n]), b.labels)


def construction_vertex_count(n: int) -> int:
    """Closed-form vertex census of ``build_nimber_position(n)``."""
    if n <= 3:
        return 2 ** n
    return 16 + 20 * (n - 4) + 5 * (n - 4) * (n - 3)


def construction_edge_count(n: int) -> int:
    """Closed-form edge census of ``build_nimber_position(n)``."""
    if n <= 3:
        return 2 ** n - 1
    return 15 + 19 * (n - 4) + 13 * (n - 4) * (n - 3) // 2


LEMMAS = ("grounded", "r_to_n", "skip_star2", "skip_star", "not_1_or_2", "parity")


@dataclass(frozen=True)
class LemmaCheck:
    description: str
    expected: str
    actual: int
    ok: bool


@dataclass
class LemmaReport:
    lemma: str
    checks: list[LemmaCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)


def _rank_subsets(ranks: list[int]):
    for r in range(len(ranks) + 1):
        yield from (set(c) for c in itertools.combinations(ranks, r))


def _group_choices(construction: LabeledConstruction, removed_ranks: set[int]):
    """Optional gadget-group removals for each removed rank of at least 5."""
    gadget_ranks = sorted(i for i in removed_ranks if i >= 5)
    options = []
    for i in gadget_ranks:
        options.append((
            ("", []),
            (f"+Mgroup{i}", construction.m_group(i)),
            (f"+Pgroup{i}", construction.p_group(i)),
        ))
    for combo in itertools.product(*options):
        tag = "".join(t for t, _ in combo)
        extra = [v for _, vs in combo for v in vs]
        yield tag, extra


def verify_lemma(
    construction: LabeledConstruction,
    lemma: str,
    budget: SolveBudget | None = None,
) -> LemmaReport:
    """Exhaustively check one supporting lemma on a generated board.

    Enumerates every residual state the lemma quantifies over (removed rank
    subsets, optionally with the consumed gadget groups, and the stated
    token placement) and compares the exact Grundy value with the claim.
    """
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}; expected one of {LEMMAS}")
    ranks = construction.ranks()
    if not ranks:
        raise ValueError("lemma verification needs a rank-clique construction (n >= 4)")
    solver = GrundySolver(construction.position.graph, budget or SolveBudget())
    n_of = {i: construction.vertex(f"N{i}") for i in ranks}
    r_of = {i: construction.vertex(f"R{i}") for i in ranks}
    report = LemmaReport(lemma)

    def run(description: str, removed: list[int], token: int, expected: str, want) -> None:
        value = solver.value(token, VertexMask.of(removed))
        ok = want(value)
        report.checks.append(LemmaCheck(description, expected, value, ok))

    if lemma in ("grounded", "r_to_n"):
        for s in _rank_subsets(ranks):
            for tag, extra in _group_choices(construction, s):
                base = [n_of[i] for i in s] + extra
                for k in sorted(set(ranks) - s):
                    if lemma == "grounded":
                        run(
                            f"removed N{sorted(s)}{tag}, enter N{k}->R{k}",
                            base + [n_of[k]],
                            r_of[k],
                            "0",
                            lambda v: v == 0,
                        )
                    else:
                        run(
                            f"removed N{sorted(s)}{tag}, enter R{k}->N{k}",
                            base + [r_of[k]],
                            n_of[k],
                            "0",
                            lambda v: v == 0,
                        )
    elif lemma in ("skip_star2", "skip_star"):
        fresh, spoiled = (1, 3) if lemma == "skip_star2" else (2, 3)
        target = "M" if lemma == "skip_star2" else "P"
        for k in ranks:
            if k < 5:
                continue
            for s in _rank_subsets([i for i in ranks if i != k]):
                removed = [n_of[i] for i in s] + [n_of[k]]
                token = construction.vertex(f"{target}{k}")
                lower_removed = any(i < k for i in s)
                expected = spoiled if lower_removed else fresh
                run(
                    f"removed N{sorted(s)}, enter N{k}->{target}{k}",
                    removed,
                    token,
                    str(expected),
                    lambda v, e=expected: v == e,
                )
    elif lemma == "not_1_or_2":
        for k in ranks:
            for s in _rank_subsets([i for i in ranks if i > k]):
                run(
                    f"removed N{sorted(s)}, token N{k}",
                    [n_of[i] for i in s],
                    n_of[k],
                    ">=4",
                    lambda v: v >= 4,
                )
    elif lemma == "parity":
        for k in ranks:
            for s in _rank_subsets([i for i in ranks if i != k]):
                if not s or min(s) >= k:
                    continue
                j = min(s)
                remaining_above = sum(1 for p in ranks if p > j and p not in s)
                expected = 1 if remaining_above % 2 == 1 else 2
                run(
                    f"removed N{sorted(s)}, token N{k} (lowest removed {j})",
                    [n_of[i] for i in s],
                    n_of[k],
                    str(expected),
                    lambda v, e=expected: v == e,
                )
    return report
