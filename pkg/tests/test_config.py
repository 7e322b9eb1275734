import json

import pytest

import ergolab as eg
from ergolab.config import (build_measure, build_observable, build_point,
                            build_system, parse_config, render, validate)
from ergolab.errors import ConfigError

MINIMAL_TRACE = {
    "kind": "trace",
    "system": {"kind": "doubling"},
    "observable": {"kind": "cos_circle"},
    "point": {"kind": "circle", "x": "1/3"},
}


def parse(tree):
    return parse_config(json.dumps(tree))


class TestParsing:
    def test_minimal_trace_gets_defaults(self):
        cfg = parse(MINIMAL_TRACE)
        assert cfg.kind == "trace"
        assert cfg.section("params")["horizon"] == 1000
        assert cfg.emit_csv and cfg.emit_json and not cfg.emit_svg

    def test_invalid_json_rejected(self):
        with pytest.raises(ConfigError):
            parse_config("{not json")

    def test_unknown_top_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse(dict(MINIMAL_TRACE, bogus=1))

    def test_unknown_nested_key_rejected(self):
        bad = dict(MINIMAL_TRACE, system={"kind": "doubling", "spin": 3})
        with pytest.raises(ConfigError, match="system.spin"):
            parse(bad)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigError, match="experiment kind"):
            parse({"kind": "dance"})

    def test_probe_missing_seed_named(self):
        tree = {
            "kind": "probe",
            "system": {"kind": "doubling"},
            "observable": {"kind": "cos_circle"},
            "cover": {"kind": "dyadic", "resolution": 8},
            "params": {"start": 10, "epsilon": 0.25, "horizon": 100, "budget": 2},
        }
        with pytest.raises(ConfigError, match="seed"):
            parse(tree)

    def test_viana_a0_range_error(self):
        tree = {
            "kind": "probe",
            "system": {"kind": "viana", "a0": 2.5},
            "observable": {"kind": "cos_circle"},
            "cover": {"kind": "dyadic", "resolution": 8},
            "params": {"start": 10, "epsilon": 0.25, "horizon": 100, "budget": 2},
            "seed": 1,
        }
        with pytest.raises(ConfigError, match=r"a0.*\(1, 2\)"):
            parse(tree)

    def test_all_errors_collected(self):
        tree = {
            "kind": "probe",
            "system": {"kind": "viana", "a0": 2.5},
            "observable": {"kind": "cos_circle"},
            "cover": {"kind": "dyadic", "resolution": 8},
            "params": {"start": 10, "epsilon": 0.25, "horizon": 100, "budget": 2},
            "bogus": True,
        }
        errors = validate(tree)
        joined = "\n".join(errors)
        assert len(errors) == 3
        assert "bogus" in joined and "a0" in joined and "seed" in joined

    def test_bad_rational_literal(self):
        bad = dict(MINIMAL_TRACE, point={"kind": "circle", "x": "one third"})
        with pytest.raises(ConfigError, match="rational"):
            parse(bad)

    def test_negative_epsilon_rejected(self):
        tree = {
            "kind": "probe",
            "system": {"kind": "doubling"},
            "observable": {"kind": "cos_circle"},
            "cover": {"kind": "dyadic", "resolution": 8},
            "params": {"start": 10, "epsilon": -1.0, "horizon": 100, "budget": 2},
            "seed": 1,
        }
        with pytest.raises(ConfigError, match="epsilon"):
            parse(tree)

    def test_seed_range_checked(self):
        with pytest.raises(ConfigError, match="seed"):
            parse(dict(MINIMAL_TRACE, seed=-1))
        with pytest.raises(ConfigError, match="seed"):
            parse(dict(MINIMAL_TRACE, seed=2 ** 64))


class TestRoundTrip:
    def test_parse_render_parse(self):
        trees = [
            MINIMAL_TRACE,
            {
                "kind": "entropy",
                "system": {"kind": "shift"},
                "measure": {"kind": "bernoulli", "weights": [0.3, 0.7]},
                "point": {"kind": "word", "period": [0, 1]},
                "params": {"n_max": 64},
                "seed": 9,
                "emit": {"svg": True},
            },
        ]
        for tree in trees:
            cfg = parse(tree)
            assert parse_config(render(cfg)) == cfg


class TestBuilders:
    def test_build_system(self):
        assert build_system({"kind": "doubling", "d": 3}) == eg.Doubling(3)
        assert build_system({"kind": "shift"}) == eg.FullShift(2)

    def test_build_point_exact_fraction(self):
        from fractions import Fraction

        p = build_point({"kind": "circle", "x": "1/3"})
        assert p.coords[0] == Fraction(1, 3)

    def test_build_point_word(self):
        w = build_point({"kind": "word", "preperiod": [1], "period": [0, 1]})
        assert w == eg.SymbolicWord((1,), (0, 1), 2)

    def test_build_observable_and_measure(self):
        obs = build_observable({"kind": "symbol_table", "values": [0.0, 1.0]})
        assert obs.symbol_values == (0.0, 1.0)
        mu = build_measure({"kind": "bernoulli", "weights": [0.5, 0.5]})
        assert mu.weights == (0.5, 0.5)
