"""Smoke tests for the Python bindings."""

import json

import twistloop


def test_w1():
    assert twistloop.w1("spin", 2) == 2
    assert twistloop.w1("tbar", 1) == 0


def test_w2():
    assert twistloop.w2("tbar", 2) == {2: 2} or twistloop.w2("tbar", 2) == {2: -2}
    assert twistloop.w2("spin", 1) == {}
    t1 = twistloop.w2("t", 1)
    assert set(t1) == {2} and abs(t1[2]) == 1


def test_invariants_json():
    rep = twistloop.invariants("tbar", 1)
    assert rep["family"] == "Tbar"
    assert rep["certification"]["max_residual"] <= 1e-9
    assert len(rep["classes"]) == 2
    # Round-trips as JSON.
    json.dumps(rep)


def test_lambda0_reduce():
    assert twistloop.lambda0_reduce([(-3, 1), (3, 2), (1, 5), (0, 7)]) == {3: 3}


def test_snf():
    res = twistloop.smith_normal_form([[2, 0], [2, 2]])
    assert res["invariant_factors"] == [2, 2]
    assert res["free_rank"] == 0


def test_m0_verdict():
    assert twistloop.m0_verdict([1, 2], [1, -1]) == "quotient of Z/2"


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok {name}")
