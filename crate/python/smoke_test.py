"""Smoke test for the splicetype extension. Run after `maturin develop` or
installing the built wheel:  python python/smoke_test.py"""

import json
import pathlib

import splicetype as st

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def load(name):
    return st.Diagram.from_json((DATA / name).read_text())


def main():
    e8 = load("e8.json")
    assert e8.weight_vector("v") == [15, 10, 6]
    assert e8.seifert_data("v") == [2, 3, 5]

    small = load("two_node_42_110.json")
    assert small.node_degree("a") == 42 and small.node_degree("b") == 110
    assert small.semigroup_witness("b", "a") == [1, 4]
    system = st.System.strict(small, {"a": [[1, -1, 1]], "b": [[1, 1, "-1"]]})
    assert [text for _, _, text in system.equations()] == [
        "z1^2 - z2^3 + z3*z4",
        "z1*z2^4 + z3^5 - z4^2",
    ]

    large = load("two_node_294_770.json")
    assert large.linking_number("a", "b") == 420
    enr = st.Enrichment(large, "a", "b")
    assert enr.triple == (1, 7, 539)
    assert enr.extended_weight("b") == [1, 10290, 6860, 5390, 7546, 18865]
    deformed = json.loads(enr.deform(st.System.strict(large), {("b", 2): -1}))
    assert deformed["deformation"]["D"] == "539"
    assert [n["degree"] for n in deformed["nodes"]] == ["22638", "37730"]
    assert enr.central_cone() == (3, [True] * 4, True)
    assert enr.dual_complex() == [("a", "r"), ("b", "r")]

    fan = json.loads(st.surface_fan(e8))
    assert len(fan["cones"]) == 3
    assert st.cone_contains([[15, 10, 6], [1, 0, 0]], [16, 10, 6])
    assert not st.cone_contains([[15, 10, 6], [1, 0, 0]], [15, 10, 7])
    quad = json.dumps({"dim": 2, "rays": [["1", "0"], ["0", "1"]], "cones": [[0, 1]], "partial": False})
    assert json.loads(st.subdivide(quad, [1, 1]))["cones"] == [[0, 2], [1, 2]]

    assert st.membership(110, [30, 20]) == [1, 4]
    assert st.membership(1, [2, 3]) is None
    assert st.hamm_check([[1, 1, 1, -2155], [33, 1, 2, -2123]])
    assert st.rounding_fiber(2, [[2, -2]]) == (1, [2], 2)
    assert st.rounding_fiber(2) == (2, [], 1)

    try:
        st.Enrichment(large, "a", "b", ka=1, kb=6)
    except ValueError:
        pass
    else:
        raise AssertionError("interval violation accepted")
    print("splicetype smoke test passed")


if __name__ == "__main__":
    main()
