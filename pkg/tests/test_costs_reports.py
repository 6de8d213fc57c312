import csv
import io
import json
from math import log2

import pytest

from gmodule_mpc import costs
from gmodule_mpc.algebra import RotateScaleModule, SignModule, UnitsModule
from gmodule_mpc.errors import ConfigurationError
from gmodule_mpc.reports import TABLES, build_table, measure, render

POINTS = {
    "gm": [dict(action=a) for a in (SignModule(5), UnitsModule(7), SignModule(2**64), UnitsModule(101),
                                    RotateScaleModule(4, 7))],
    "sgm": [dict(action=a) for a in (SignModule(5), UnitsModule(7), SignModule(2**64), UnitsModule(101),
                                     RotateScaleModule(1, 11))],
    "gmr": [dict(action=a) for a in (SignModule(5), UnitsModule(7), SignModule(2**64), UnitsModule(101),
                                     RotateScaleModule(5, 11))],
    "aot": [dict(n=n, m=m) for n, m in ((2, 2), (4, 2), (8, 16), (33, 2), (5, 2**64))],
    "mot": [dict(m=m) for m in (2, 3, 37, 2**32, 2**64)],
    "fnz": [dict(n=n) for n in (2, 4, 6, 33, 65)],
    "sc": [dict(n=n) for n in (1, 6, 16, 32, 64)],
    "drelu": [dict(n=n) for n in (2, 8, 32, 64, 128)],
    "sss": [dict(N=N) for N in (15, 16, 2**32, 2**64 - 1, 2**128)],
    "ss": [dict(N=N) for N in (15, 16, 2**32, 2**64, 2**128 - 1)],
    "relu": [dict(n=n) for n in (2, 8, 32, 64, 128)],
}

ROUNDS = {"gm": 1, "sgm": 1, "gmr": 2, "aot": 2, "mot": 1, "fnz": 2, "sc": 4, "drelu": 4, "sss": 1, "ss": 1,
          "relu": 5}


@pytest.mark.parametrize("protocol", sorted(POINTS))
def test_measured_cost_equals_formula(protocol):
    for params in POINTS[protocol]:
        m = measure(protocol, seed=3, **params)
        assert m.matches_formula(), (protocol, params, m.deltas)
        assert m.rounds == ROUNDS[protocol]


def test_unreduced_modes():
    assert measure("sc", n=32, reduced=False).rounds == 5
    m = measure("drelu", n=64, reduced=False)
    assert m.matches_formula() and m.rounds == 5
    assert m.online == pytest.approx(costs.drelu_cost(64, 67).online + log2(64))


def test_closed_forms_by_hand():
    assert costs.gm_cost(4, 5) == costs.Cost(log2(5), 2 + log2(5), 1)
    assert costs.sss_cost(2**64) == costs.Cost(65, 132, 1)
    assert costs.sss_cost(15).online == pytest.approx(2 + 2 * log2(15))
    c = costs.sc_cost(32, 37)
    assert (round(c.offline), round(c.online), round(c.total)) == (340, 441, 780)


def test_measure_rejects_unknown_or_incomplete():
    with pytest.raises(ConfigurationError):
        measure("beaver", n=3)
    with pytest.raises(ConfigurationError):
        measure("sc")


def _row(table, source, size):
    return next(r for r in table["rows"] if r["source"] == source and r["size"] == size)


def test_tables_match_reported_values():
    sc = build_table("sc")
    for size, (off, on, _, tot) in costs.REPORTED["sc"].items():
        r = _row(sc, "Our", size)
        assert abs(round(float(r["offline"])) - off) <= 1
        assert abs(round(float(r["online"])) - on) <= 1
        assert abs(round(float(r["total"])) - tot) <= 1
    relu = build_table("relu")
    r = _row(relu, "Our", "128")
    assert (r["offline"], r["online"], r["total"]) == ("1923.5", "2442.6", "4366.1")
    drelu = build_table("drelu")
    r = _row(drelu, "Our", "64")
    assert (r["offline"], r["online"], r["total"]) == ("771.4", "966.5", "1737.9")


def test_table_footnotes():
    sc = build_table("sc")
    assert any("reported value is 3" in f for f in sc["footnotes"])
    drelu = build_table("drelu")
    assert _row(drelu, "Our", "32")["online"] == "427.4"
    assert any("426.4" in f for f in drelu["footnotes"])
    assert _row(build_table("relu"), "Our", "32")["note"] == ""


def test_baselines_verbatim():
    assert _row(build_table("relu"), "SecureNN", "64")["total"] == "4641.8"
    assert _row(build_table("sc"), "KSS09", "128")["online"] == "49280.0"


@pytest.mark.parametrize("which", TABLES)
def test_render_byte_stable(which):
    for fmt in ("md", "csv", "json"):
        assert render(build_table(which, seed=1), fmt) == render(build_table(which, seed=1), fmt)
        assert render(build_table(which, seed=1), fmt) == render(build_table(which, seed=2), fmt)


def test_render_formats_parse():
    t = build_table("ss")
    assert len(json.loads(render(t, "json"))["rows"]) == 8
    rows = list(csv.DictReader(io.StringIO(render(t, "csv"))))
    assert len(rows) == 8 and rows[1]["total"] == "197.0"
    md = render(t, "md")
    assert md.count("\n| ") == 9
    with pytest.raises(ConfigurationError):
        render(t, "xml")
    with pytest.raises(ConfigurationError):
        build_table("fnz")
