import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchroute import io
from matchroute.errors import GraphError, ParseError
from matchroute.graph import gen_complete, gen_cycle, gen_random_regular
from matchroute.paths import SwitchablePathFamily
from matchroute.perm import Permutation
from matchroute.scheduler import route
from matchroute.sim import Schedule


def test_graph_text_exact():
    assert io.graph_to_text(gen_cycle(4)) == "4 2\n0 1\n0 3\n1 2\n2 3\n"
    g = io.graph_from_text("4 2\n0 1\n0 3\n1 2\n2 3\n")
    assert g.edges == gen_cycle(4).edges


@pytest.mark.parametrize(
    "text",
    [
        "",
        "4\n",
        "4 2\n0 1\n1 2\n0 3\n2 3\n",  # unsorted
        "4 2\n1 0\n0 3\n1 2\n2 3\n",  # u > v
        "4 2\n0 1\n0 3\n1 2\n",  # too few edges
        "4 2\n0 1\n0 1\n1 2\n2 3\n",  # repeated
        "4 2\n0 1\n0 3\n1 2\nx 3\n",
        "4 2\n0 1\n0 3\n1 2\n2 3\n\n",  # blank line
    ],
)
def test_graph_reader_is_strict(text):
    with pytest.raises(ParseError):
        io.graph_from_text(text)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 1000))
def test_graph_round_trip(seed):
    g = gen_random_regular(20, 4, seed=seed)
    text = io.graph_to_text(g)
    h = io.graph_from_text(text)
    assert h.edges == g.edges and io.graph_hash(h) == io.graph_hash(g)


def test_graph_reader_checks_structure():
    # sorted and counted correctly, but 1-regular and disconnected
    with pytest.raises(GraphError):
        io.graph_from_text("4 1\n0 1\n2 3\n")


def test_perm_round_trip():
    p = Permutation([2, 0, 1])
    assert io.perm_to_text(p) == "2 0 1\n"
    assert io.perm_from_text("2 0 1\n") == p
    for bad in ["0 0 1\n", "1 2\n0 1\n", "", "a b\n"]:
        with pytest.raises(ParseError):
            io.perm_from_text(bad)


@settings(max_examples=30)
@given(st.lists(st.lists(st.tuples(st.integers(0, 50), st.integers(51, 99)), max_size=4), max_size=6))
def test_schedule_text_and_json_round_trip(rounds):
    s = Schedule(rounds)
    back = io.schedule_from_text(io.schedule_to_text(s))
    assert back.rounds == s.rounds
    back, digest = io.schedule_from_json(io.schedule_to_json(s))
    assert back.rounds == s.rounds and digest is None


def test_schedule_text_layout_and_errors():
    s = Schedule([[(0, 1), (2, 3)], [], [(1, 2)]])
    assert io.schedule_to_text(s) == "round 0: 0-1 2-3\nround 1:\nround 2: 1-2\n"
    for bad in ["round 1: 0-1\n", "round 0: 0-1-2\n", "round 0: 1-0\n", "0-1\n"]:
        with pytest.raises(ParseError):
            io.schedule_from_text(bad)


def test_read_schedule_detects_format(tmp_path):
    g = gen_complete(4)
    s = Schedule([[(0, 1)]])
    (tmp_path / "a.txt").write_text(io.schedule_to_text(s))
    (tmp_path / "a.json").write_text(io.schedule_to_json(s, g))
    back, digest = io.read_schedule(tmp_path / "a.txt")
    assert back.rounds == s.rounds and digest is None
    back, digest = io.read_schedule(tmp_path / "a.json")
    assert back.rounds == s.rounds and digest == io.graph_hash(g)


def test_family_dump():
    fam = SwitchablePathFamily([(0, 4, 5, 1)], 1)
    assert io.family_to_text(fam) == "k 1\npath 0 4 5 1\nslice 1: 0-4 1-5\nmiddle: 4-5\n"


def test_report_text():
    g = gen_random_regular(64, 16, seed=0)
    pi = Permutation.random(64, np.random.default_rng(0))
    r = route(g, pi)
    text = io.report_to_text(r)
    head, _, sched = text.partition("schedule\n")
    fields = dict(line.split(" ", 1) for line in head.splitlines())
    assert int(fields["rounds"]) == r.rounds
    assert fields["verified"] == "true" and fields["theoretical_bound"] == "infeasible"
    assert {"batches", "k", "epsilon", "growth"} <= fields.keys()
    assert io.schedule_from_text(sched).rounds == r.schedule.rounds
