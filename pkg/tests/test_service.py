from __future__ import annotations

import json
import pathlib
import random

import pytest

jsonschema = pytest.importorskip("jsonschema")
pytest.importorskip("fastapi")

from fastapi.testclient import TestClient

from geogrundy.grundy import SolveBudget
from geogrundy.service import SessionStore, apply_move, create_session, create_app, hint, session_view
from geogrundy.variants import PlainState, variant_grundy
from geogrundy.wire import variant_state_from_json

SCHEMA_DIR = pathlib.Path(__file__).resolve().parent.parent / "schemas"

PATH3 = {"variant": "plain", "position": {"vertices": 3, "edges": [[0, 1], [1, 2]], "token": 1}}
PASS1 = {"variant": "pass", "position": {"vertices": 2, "edges": [[0, 1]], "token": 0}, "passes": 1}
TWO_TOKEN = {
    "variant": "multitoken",
    "graph": {"vertices": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 4]]},
    "tokens": [0, 4],
}
SWAPUNO = {
    "variant": "swapuno",
    "hands": [[{"color": 1, "rank": 1}], [{"color": 1, "rank": 2}]],
    "top": None,
    "swap_used": False,
}


def _validator(name: str):
    from referencing import Registry, Resource

    registry = Registry()
    schemas = {}
    for path in SCHEMA_DIR.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resource = Resource.from_contents(schema)
        registry = registry.with_resource(schema["$id"], resource)
        schemas[path.name] = schema
    return jsonschema.Draft202012Validator(
        schemas[f"{name}.schema.json"], registry=registry
    )


SESSION_V = _validator("session")
APPLY_V = _validator("apply")
HINT_V = _validator("hint")
ERROR_V = _validator("error")


@pytest.fixture()
def client():
    return TestClient(create_app(SessionStore()))


def test_health(client):
    assert client.get("/api/health").json() == {"status": "ok"}


def test_create_and_view_session(client):
    r = client.post("/api/games", json={"variant_state": PATH3, "ai_players": [1]})
    assert r.status_code == 201
    view = r.json()
    SESSION_V.validate(view)
    assert view["to_move"] == 0
    assert view["terminal"] is False
    assert {"type": "traverse", "to": 0} in view["legal_moves"]
    again = client.get(f"/api/games/{view['id']}").json()
    SESSION_V.validate(again)
    assert again == view


def test_create_pass_session_budget(client):
    view = client.post("/api/games", json={"variant_state": PASS1}).json()
    SESSION_V.validate(view)
    assert view["state"]["passes"] == 1
    assert {"type": "pass"} in view["legal_moves"]


def test_create_rejects_bad_token(client):
    bad = {"variant": "plain", "position": {"vertices": 2, "edges": [[0, 1]], "token": 9}}
    r = client.post("/api/games", json={"variant_state": bad})
    assert r.status_code == 422
    ERROR_V.validate(r.json())


def test_create_rejects_malformed_payload(client):
    bad = {"variant": "plain", "position": {"vertices": 2}}
    r = client.post("/api/games", json={"variant_state": bad})
    assert r.status_code == 400
    ERROR_V.validate(r.json())


def test_hint_needs_nimber_on_oversized_sum():
    rng = random.Random(7)
    store = SessionStore()
    n = 40
    edges = [[u, v] for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
    payload = {
        "variant": "sum",
        "components": [
            {"vertices": n, "edges": edges, "token": 0},
            {"vertices": 2, "edges": [[0, 1]], "token": 0},
        ],
    }
    session = create_session(store, {"variant_state": payload})
    out = hint(store, session.id, budget=SolveBudget(max_states=200, max_millis=2_000))
    assert out == {"move": None, "reason": "needs_nimber"}


def test_create_rejects_invariant_violation(client):
    bad = {
        "variant": "multitoken",
        "graph": {"vertices": 3, "edges": [[0, 1]]},
        "tokens": [0, 0],
    }
    r = client.post("/api/games", json={"variant_state": bad})
    assert r.status_code == 422
    ERROR_V.validate(r.json())


def test_human_win_with_ai_reply_flow(client):
    view = client.post("/api/games", json={"variant_state": PATH3, "ai_players": [1]}).json()
    r = client.post(f"/api/games/{view['id']}/moves", json={"move": {"type": "traverse", "to": 0}})
    assert r.status_code == 200
    out = r.json()
    APPLY_V.validate(out)
    # Moving 1 -> 0 strands the opponent; the mover wins and no AI reply exists.
    assert out["session"]["terminal"] is True
    assert out["session"]["winner"] == 0
    assert [m["by"] for m in out["moves"]] == ["human"]


def test_ai_replies_when_game_continues(client):
    board = {"variant": "plain",
             "position": {"vertices": 4, "edges": [[0, 1], [1, 2], [2, 3]], "token": 1}}
    view = client.post("/api/games", json={"variant_state": board, "ai_players": [1]}).json()
    out = client.post(f"/api/games/{view['id']}/moves",
                      json={"move": {"type": "traverse", "to": 2}}).json()
    APPLY_V.validate(out)
    assert [m["by"] for m in out["moves"]] == ["human", "ai"]
    assert out["session"]["terminal"] is True
    assert out["session"]["winner"] == 1  # 1->2 was a losing move; the AI punishes it


def test_illegal_move_is_409(client):
    view = client.post("/api/games", json={"variant_state": PATH3}).json()
    r = client.post(f"/api/games/{view['id']}/moves", json={"move": {"type": "traverse", "to": 1}})
    assert r.status_code == 409
    ERROR_V.validate(r.json())


def test_pass_exhaustion_is_409(client):
    zero_pass = {"variant": "pass",
                 "position": {"vertices": 2, "edges": [[0, 1]], "token": 0}, "passes": 0}
    view = client.post("/api/games", json={"variant_state": zero_pass}).json()
    r = client.post(f"/api/games/{view['id']}/moves", json={"move": {"type": "pass"}})
    assert r.status_code == 409


def test_swap_twice_is_409(client):
    view = client.post("/api/games", json={"variant_state": SWAPUNO}).json()
    out = client.post(f"/api/games/{view['id']}/moves", json={"move": {"type": "swap"}})
    assert out.status_code == 200
    r = client.post(f"/api/games/{view['id']}/moves", json={"move": {"type": "swap"}})
    assert r.status_code == 409
    ERROR_V.validate(r.json())


def test_unknown_session_404(client):
    assert client.get("/api/games/nope").status_code == 404
    assert client.get("/api/games/nope/hint").status_code == 404


def test_hint_on_path3(client):
    view = client.post("/api/games", json={"variant_state": PATH3}).json()
    out = client.get(f"/api/games/{view['id']}/hint").json()
    HINT_V.validate(out)
    assert out["reason"] == "winning move"
    assert out["move"]["type"] == "traverse"
    assert out["move"]["to"] in (0, 2)


def test_hint_on_losing_position(client):
    losing = {"variant": "plain", "position": {"vertices": 3, "edges": [[0, 1], [1, 2]], "token": 0}}
    view = client.post("/api/games", json={"variant_state": losing}).json()
    out = client.get(f"/api/games/{view['id']}/hint").json()
    HINT_V.validate(out)
    assert out == {"move": None, "reason": "no winning move"}


def test_two_token_session_moves(client):
    view = client.post("/api/games", json={"variant_state": TWO_TOKEN}).json()
    SESSION_V.validate(view)
    moves = view["legal_moves"]
    assert {"type": "multi_traverse", "token_index": 0, "to": 1} in moves
    out = client.post(f"/api/games/{view['id']}/moves",
                      json={"move": {"type": "multi_traverse", "token_index": 0, "to": 1}}).json()
    APPLY_V.validate(out)
    assert out["session"]["state"]["tokens"] == [1, 4]
    assert out["session"]["state"]["removed"] == [0]


def test_ai_opening_move_on_create(client):
    view = client.post("/api/games", json={"variant_state": PATH3, "ai_players": [0]}).json()
    SESSION_V.validate(view)
    assert len(view["history"]) == 1
    assert view["history"][0]["by"] == "ai"
    assert view["to_move"] == 1


def test_hint_soundness_random_playouts():
    rng = random.Random(99)
    store = SessionStore()
    for _ in range(30):
        n = rng.randrange(2, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        payload = {
            "variant": "plain",
            "position": {"vertices": n, "edges": [list(e) for e in edges], "token": rng.randrange(n)},
        }
        session = create_session(store, {"variant_state": payload})
        while True:
            view = session_view(store.get(session.id))
            if view["terminal"]:
                break
            out = hint(store, session.id)
            if out["move"] is not None:
                # The hinted child must be a zero position.
                from geogrundy.wire import legal_moves

                state = variant_state_from_json(view["state"])
                child = next(nxt for encoded, nxt in legal_moves(state)
                             if encoded == out["move"])
                assert variant_grundy(child) == 0
                move = out["move"]
            else:
                move = view["legal_moves"][rng.randrange(len(view["legal_moves"]))]
            apply_move(store, session.id, move)


def test_replay_determinism_snapshots(tmp_path):
    rng = random.Random(123)
    store = SessionStore(snapshot_dir=str(tmp_path))
    for _ in range(1000):
        n = rng.randrange(2, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        payload = {
            "variant": "plain",
            "position": {"vertices": n, "edges": [list(e) for e in edges], "token": rng.randrange(n)},
        }
        session = create_session(store, {"variant_state": payload})
        while True:
            view = session_view(store.get(session.id))
            if view["terminal"]:
                break
            move = view["legal_moves"][rng.randrange(len(view["legal_moves"]))]
            apply_move(store, session.id, move)
        before = session_view(store.get(session.id))
        # A fresh store restores the session from its snapshot by replay.
        restored = SessionStore(snapshot_dir=str(tmp_path)).get(session.id)
        after = session_view(restored)
        assert after == before
