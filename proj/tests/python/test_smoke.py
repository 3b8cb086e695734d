import os
from fractions import Fraction

import pytest

import qacause

DATA = os.environ.get("QACAUSE_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def read(name):
    with open(os.path.join(DATA, name)) as f:
        return f.read()


@pytest.fixture
def path():
    return qacause.parse_program(read("path.dl")), qacause.parse_instance(read("graph.db"))


@pytest.fixture
def staff():
    return qacause.parse_program(read("dep.dl")), qacause.parse_instance(read("uni.db"))


def test_path_causes(path):
    q, d = path
    assert qacause.actual_causes(q, d, "c,e") == {"t1", "t2", "t4", "t5", "t6", "t7"}
    assert qacause.counterfactual_causes(q, d, ("c", "e")) == {"t2"}
    assert qacause.responsibility(q, d, "c,e", "t2") == 1
    assert qacause.responsibility(q, d, "c,e", "t7") == Fraction(1, 3)
    assert qacause.responsibility(q, d, "c,e", "t3") == 0
    assert len(qacause.evaluate(q, d)) == 16


def test_report(staff):
    q, d = staff
    rep = qacause.causality_report(q, d, "John")
    assert rep["answer"] == ("John",)
    assert set(rep["causes"]) == {"t1", "t4", "t8"}
    assert rep["causes"]["t4"]["contingencies"] == [frozenset({"t8"})]
    assert rep["causes"]["t1"]["counterfactual"]


def test_abduction():
    q = qacause.parse_program(read("q.dl"))
    d = qacause.parse_instance(read("rs.db"))
    res = qacause.abduce(q, qacause.parse_instance(""), d, "ans")
    assert res["diagnoses"] == [frozenset({"t2", "t4"}), frozenset({"t3", "t6"})]
    assert res["necessary"] == set()
    actual, counterfactual = qacause.causes_via_abduction(q, d)
    assert actual == {"t2", "t3", "t4", "t6"} and counterfactual == set()


def test_constraints_and_view_update(staff):
    q, d = staff
    sigma = qacause.parse_constraints(read("uni.ic"))
    assert qacause.satisfies(d, sigma)
    assert not qacause.satisfies(d.remove(["t6"]), sigma)
    assert qacause.causes_under_ics(q, d, "John", sigma) == {"t1"}
    assert qacause.vc_causes(q, d, "John") == {"t1", "t4", "t8"}
    assert qacause.min_source_side_effect(q, d, "John") == [frozenset({"t1"}), frozenset({"t4", "t8"})]
    assert qacause.view_side_effect_free(q, d, "John") == frozenset({"t1"})
    assert qacause.decide_vsefp(q, d, "John") == qacause.vc_cause_exists(q, d, "John")
    inst, reduced, view = qacause.vc_reduction(q, d, "John")
    assert view == "V" and len(inst) == len(d) + 2
    assert qacause.causes_under_ics(q, inst, "John", reduced) == qacause.vc_causes(q, d, "John")


def test_errors(path):
    q, d = path
    with pytest.raises(qacause.QacauseError) as err:
        qacause.parse_program("Ans(x) <- S(y).")
    assert err.value.code == "UnsafeRule"
    with pytest.raises(qacause.QacauseError) as err:
        qacause.actual_causes(q, d, "e,c")
    assert err.value.code == "NotAnAnswer"


def test_examples_and_cli():
    assert all(passed for _, passed, _ in qacause.replay_examples())
    code, out, _ = qacause.run_cli(["causes", "-p", os.path.join(DATA, "path.dl"),
                                    "-d", os.path.join(DATA, "graph.db"), "-a", "c,e"])
    assert code == 0 and "6 causes" in out
