"""Smoke test for the casing_py extension.

Build and install first:
    pip install --no-build-isolation ./crates/python
then run:
    python3 python/smoke_test.py
"""

import json
import xml.etree.ElementTree as ET

import casing_py


def main():
    tri = casing_py.Drawing.fixture("triangle")
    assert (tri.num_vertices, tri.num_edges, tri.num_crossings) == (6, 3, 3)

    s = casing_py.solve(tri, "weaving", "min-total-switches")
    assert s.total_switches == 1 and s.switch_lower_bound == 1, s
    assert len(s.tops) == 3
    assert json.loads(s.casing_json)["metrics"]["total_switches"] == 1

    grid = casing_py.Drawing.fixture("grid", {"h": "3", "v": "3"})
    weave = casing_py.solve(grid, "weaving", "min-max-tunnels")
    stack = casing_py.solve(grid, "stacking", "min-max-tunnels")
    assert (weave.value, stack.value) == ("2", "3"), (weave, stack)
    assert stack.order is not None and len(stack.order) == 6

    dist = casing_py.solve(grid, "weaving", "max-min-tunnel-distance")
    assert dist.value == casing_py.oracle(grid, "weaving", "max-min-tunnel-distance").value == "2"

    text, approx = casing_py.tunnel_length("1", "64/289")
    assert text == "2.125" and abs(approx - 2.125) < 1e-12

    try:
        casing_py.solve(tri, "stacking", "min-total-switches")
    except casing_py.OpenProblemError as e:
        assert "open problem" in str(e)
    else:
        raise AssertionError("expected OpenProblemError")

    try:
        casing_py.solve(grid, "weaving", "min-max-tunnel-length", exact_budget=2)
    except casing_py.BudgetExceededError:
        pass
    else:
        raise AssertionError("expected BudgetExceededError")

    try:
        casing_py.Drawing.from_json('{"casing_width": "1", "vertices": [], "edges": [{"id": 0, "u": 1, "v": 2}]}')
    except ValueError as e:
        assert "$.edges[0].u" in str(e)
    else:
        raise AssertionError("expected ValueError")

    again = casing_py.Drawing.from_json(grid.to_json())
    assert again.to_json() == grid.to_json()

    svg = casing_py.render_svg(grid, weave.casing_json)
    root = ET.fromstring(svg)
    casings = [e for e in root.iter() if e.get("class") == "casing"]
    assert len(casings) == grid.num_crossings

    print("smoke test ok")


if __name__ == "__main__":
    main()
