"""Smoke test for the hhsteenrod extension.

Build it first:  pip install --no-build-isolation -e crates/python
"""

import json

import hhsteenrod


def test_hh_dimensions():
    assert hhsteenrod.hh_dimensions("t_u", max_degree=6) == [1] * 7


def test_sq_ha_two_cell():
    def sq2(fixture):
        rows = hhsteenrod.sq_ha(fixture)
        return next(value for (_, cls, i, value, _) in rows if cls == "a4" and i == 2)

    assert sq2("sigma_cp2") == "a6"
    assert sq2("s4_wedge_s6") == "0"


def test_run_json():
    code, out, err = hhsteenrod.run("hh", fixture="t_u", max_degree=4)
    assert code == 0, err
    assert [d["dimension"] for d in json.loads(out)] == [1] * 5


def test_custom_document():
    doc = json.dumps({
        "max_degree": 6,
        "algebra": {"kind": "free", "generators": [{"name": "u", "degree": 2}]},
        "kappa": {"sharp": {"u#u": {"e_1": "u"}}},
        "names": {"u[]": "u"},
    })
    rows = hhsteenrod.steenrod_table(document=doc)
    values = {(cls, i): value for (_, cls, i, value, _) in rows}
    assert values[("u", 0)] == "u"
    assert values[("u", 2)] == "u^2[]"


def test_errors():
    code, _, err = hhsteenrod.run("hh", fixture="no_such_fixture")
    assert code == 2 and "unknown fixture" in err
    try:
        hhsteenrod.hh_dimensions(document="{")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, f in list(globals().items()):
        if name.startswith("test_"):
            f()
            print("ok", name)
