import os
from pathlib import Path

import pytest

import mwgames

GAMES = Path(os.environ.get("MWG_GAMES_DIR", Path(__file__).resolve().parents[2] / "games"))


@pytest.fixture
def balance():
    return mwgames.Game.load(str(GAMES / "balance.json"))


@pytest.fixture
def drift():
    return mwgames.Game.load(str(GAMES / "drift.json"))


def test_load_and_inspect(balance):
    assert balance.dimension == 2
    assert balance.start == "v0"
    assert ("v0", 1) in balance.vertices
    assert ("vL", "v0", (-1, 3)) in balance.edges
    assert balance.validate() == []
    assert sorted(balance.simple_cycle_weights()) == [(-2, 2), (-1, 3), (2, -1), (4, -3)]


def test_round_trip(balance):
    again = mwgames.Game.from_json(balance.to_json())
    assert again.to_json() == balance.to_json()
    assert "digraph" in balance.to_dot()


def test_solvers(balance, drift):
    assert mwgames.solve(balance)["winner"] == 1
    assert mwgames.solve(balance, objective="bounding")["winner"] == 2
    given = mwgames.solve(balance, credit=[2, 1])
    assert given["winner"] == 1 and given["certified"]
    assert mwgames.solve(drift)["winner"] == 2
    fcb = mwgames.solve_fcb(drift)
    assert fcb["winner"] == 2 and fcb["colours"] == 32 and fcb["strategy"]


def test_pareto(balance, drift):
    r = mwgames.pareto(balance, 4)
    assert r["antichain"] == [(0, 3), (2, 1), (4, 0)]
    assert r["complete"]
    assert mwgames.pareto(drift, 3)["antichain"] == []


def test_bounds_are_python_ints(balance):
    b = mwgames.bounds(balance)
    assert b["B"] == 48**128
    assert mwgames.arena_size_bound(3, 4, [2], 1) > 0


def test_geometry_and_linalg():
    assert len(mwgames.enumerate_half_spaces(1, 2)) == 8
    assert len(mwgames.enumerate_half_spaces(1, 2, perfect=True)) == 16
    assert mwgames.positive_kernel_solution([[1, -1], [-1, 1]], 1) == [1, 1]
    assert mwgames.positive_kernel_solution([[1, -1], [-1, 1], [-1, -1]], 1) is None
    assert mwgames.alternatives([[1, -1], [-1, 1], [-1, -1]], 1) == ("half_space", "2/[1,-1]/(1,1)")


def test_oracle_and_simulation(balance, drift):
    assert mwgames.self_covering_search(balance, 8)["tree_leaves"] == 5
    assert not mwgames.self_covering_search(drift, 10)["win1"]
    g = mwgames.random_game(3)
    assert g.to_json() == mwgames.random_game(3).to_json()
    assert not mwgames.cross_check(g)["contradiction"]
    r = mwgames.simulate(balance, 6, p1="threshold:1:0:v0>vL:v0>vR", p2="counterless:vL>v0@-2,2;vR>v0@4,-3",
                         keep_trace=True)
    assert [lvl for _, lvl in r["trace"]] == [(0, 0), (0, 0), (-2, 2), (-2, 2), (2, -1), (2, -1), (0, 1)]
    auto = mwgames.simulate(balance.lossy(), 2000, seed=1, p1="automaton", scaled_base="auto")
    assert auto["checks"]["clean"]


def test_errors(balance):
    with pytest.raises(mwgames.InputError):
        mwgames.Game.from_json("{")
    with pytest.raises(ValueError):
        mwgames.solve(balance, credit=[-1, 0])
    with pytest.raises(mwgames.BudgetExceeded):
        mwgames.enumerate_half_spaces(200, 3)
    assert issubclass(mwgames.BudgetExceeded, RuntimeError)
