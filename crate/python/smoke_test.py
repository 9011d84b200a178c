"""Smoke test for the `alliance` extension module.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import alliance


def main():
    k5 = alliance.Graph.family("complete:5")
    assert (k5.n, k5.m) == (5, 10)

    res = alliance.solve(k5, "global", r=1)
    assert res["optimum"] == 3, res
    assert alliance.check_alliance(k5, res["witness"], 1, global_=True)["holds"]
    assert not alliance.check_alliance(k5, [0, 1], 1)["holds"]

    c4 = alliance.Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    rep = alliance.bounds(c4, 1)
    values = {e["name"]: e["value"] for e in rep["entries"]}
    assert values["spectral_lower"] == 2 and values["cockayne_upper"] == 3, values
    assert abs(alliance.mu_star(alliance.Graph.family("petersen")) - 5.0) < 1e-8

    cert = alliance.construct(alliance.Graph.family("cycle:6"), 1, "independent")
    assert cert["witness"] == [1, 3, 5]

    gadget, labels = alliance.reduce(alliance.Graph.family("complete:3"), "goa-high", 2)
    assert gadget.n == 21 and labels[0] == "original(0)"
    ver = alliance.verify_gadget(alliance.Graph.family("complete:3"), "goa-high", 2)
    assert ver["holds"] and ver["target_optimum"] == 10

    report = alliance.bench(["cycle:3-6"], seed=1, workers=2)
    assert report["summary"]["violations"] == 0

    try:
        alliance.solve(k5, "global", r=9)
    except ValueError as e:
        assert "outside admissible range" in str(e)
    else:
        raise AssertionError("r out of range accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
