from __future__ import annotations

import subprocess
import sys

import pytest

from geogrundy.graph import Graph, GraphFormatError, Position, VertexMask
from geogrundy.variants import (
    MultiTokenState,
    PassState,
    PlainState,
    SumState,
    SwapUnoState,
    options,
)
from geogrundy.wire import legal_moves, variant_state_from_json, variant_state_to_json

EDGE = Position(Graph.from_edges(2, [(0, 1)]), 0)
PATH3 = Position(Graph.from_edges(3, [(0, 1), (1, 2)]), 1)

STATES = [
    PlainState(PATH3),
    PlainState(PATH3, VertexMask.of([0])),
    SumState((PlainState(EDGE), PlainState(PATH3))),
    PassState(PATH3, 2),
    MultiTokenState(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), (0, 3)),
    SwapUnoState(hands=(((0, 1), (2, 2)), ((0, 2),)), top=(1, 2), swap_used=True),
]


@pytest.mark.parametrize("state", STATES, ids=lambda s: type(s).__name__)
def test_envelope_round_trip(state):
    assert variant_state_from_json(variant_state_to_json(state)) == state


@pytest.mark.parametrize("state", STATES, ids=lambda s: type(s).__name__)
def test_legal_moves_match_options(state):
    moves = legal_moves(state)
    assert [nxt for _, nxt in moves] == options(state)
    encoded = [m for m, _ in moves]
    assert len(encoded) == len({str(sorted(m.items())) for m in encoded})


@pytest.mark.parametrize(
    "payload",
    [
        {"variant": "nope"},
        {"variant": "plain"},
        {"variant": "plain", "position": {"vertices": 2, "edges": [[0, 1]]}},
        {"variant": "pass", "position": {"vertices": 2, "edges": [[0, 1]], "token": 0}},
        {"variant": "multitoken", "graph": {"vertices": 2, "edges": []}, "tokens": []},
        {"variant": "swapuno", "hands": [[]]},
    ],
)
def test_envelope_rejects_malformed_payloads(payload):
    with pytest.raises(GraphFormatError):
        variant_state_from_json(payload)


@pytest.mark.parametrize(
    "payload",
    [
        {"variant": "plain", "position": {"vertices": 2, "edges": [[0, 1]], "token": 7}},
        {"variant": "plain", "position": {"vertices": 2, "edges": [[0, 1]], "token": 0,
                                          "removed": [9]}},
        {"variant": "multitoken", "graph": {"vertices": 2, "edges": []}, "tokens": [5]},
        {"variant": "multitoken", "graph": {"vertices": 3, "edges": []}, "tokens": [1, 1]},
        {"variant": "plain", "position": {"vertices": 2, "edges": [[0, 1]], "token": 0,
                                          "removed": [0]}},
    ],
)
def test_envelope_rejects_invariant_violations(payload):
    # Well-formed payloads whose values break a state invariant.
    with pytest.raises(ValueError):
        variant_state_from_json(payload)


def test_play_cli_scripted_session(tmp_path):
    board = tmp_path / "p.json"
    board.write_text('{"vertices":3,"edges":[[0,1],[1,2]],"token":1}')
    # Human is player 0 on path3 at the middle: any move wins immediately.
    out = subprocess.run(
        [sys.executable, "-m", "geogrundy.cli", "play", str(board), "--ai", "1"],
        input=b"h\n0\n",
        capture_output=True,
        timeout=120,
    )
    assert out.returncode == 0, out.stderr
    assert b"hint" in out.stdout
    assert b"player 0 wins" in out.stdout


def test_play_cli_ai_opening(tmp_path):
    board = tmp_path / "p.json"
    board.write_text('{"vertices":2,"edges":[[0,1]],"token":0}')
    # AI is player 0: it takes the only edge and the human loses at once.
    out = subprocess.run(
        [sys.executable, "-m", "geogrundy.cli", "play", str(board), "--ai", "0"],
        input=b"",
        capture_output=True,
        timeout=120,
    )
    assert out.returncode == 0, out.stderr
    assert b"ai plays" in out.stdout
    assert b"player 0 wins" in out.stdout