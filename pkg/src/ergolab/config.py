"""Experiment configuration: strict JSON parsing with full error collection.

Configs are plain JSON trees. Parsing is strict — unknown keys are errors —
and validation reports every problem found, not just the first. Exact
rationals are written as strings like "1/3"; bare numbers stay floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError

KINDS = (
    "trace", "criterion", "probe", "lyapunov", "entropy",
    "irregular-build", "weak-gibbs", "replay",
)

# kinds whose results depend on drawn random numbers
SAMPLED_KINDS = ("probe",)


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    data: tuple  # canonical (key, value) tree, hashable
    seed: int = None
    out_dir: str = "."
    emit_csv: bool = True
    emit_json: bool = True
    emit_svg: bool = False

    def section(self, key, default=None):
        d = dict(self.data)
        return _thaw(d[key]) if key in d else default


def _freeze(obj):
    if isinstance(obj, dict):
        return tuple(sorted((k, _freeze(v)) for k, v in obj.items()))
    if isinstance(obj, list):
        return ("__list__",) + tuple(_freeze(v) for v in obj)
    return obj


def _thaw(obj):
    if isinstance(obj, tuple):
        if obj[:1] == ("__list__",):
            return [_thaw(v) for v in obj[1:]]
        return {k: _thaw(v) for k, v in obj}
    return obj


def parse_rational(value, path, errors):
    """Accept ints, floats, and exact "p/q" strings."""
    if isinstance(value, bool):
        errors.append(f"{path}: expected a number, got a boolean")
        return None
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            errors.append(f"{path}: not a valid rational literal: {value!r}")
            return None
    errors.append(f"{path}: expected a number or \"p/q\" string")
    return None


def _require(section, path, required, optional, errors):
    """Strict key check; returns True when all required keys are present."""
    if not isinstance(section, dict):
        errors.append(f"{path}: expected an object")
        return False
    ok = True
    for k in sorted(section):
        if k not in required and k not in optional:
            errors.append(f"{path}.{k}: unknown key")
            ok = False
    for k in required:
        if k not in section:
            errors.append(f"{path}.{k}: missing required key")
            ok = False
    return ok


def _check_int(section, key, path, errors, lo=None, hi=None, default=None):
    v = section.get(key, default)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, int):
        errors.append(f"{path}.{key}: expected an integer")
        return None
    if lo is not None and v < lo:
        errors.append(f"{path}.{key}: must be >= {lo}, got {v}")
        return None
    if hi is not None and v > hi:
        errors.append(f"{path}.{key}: must be <= {hi}, got {v}")
        return None
    return v


def _check_number(section, key, path, errors, default=None):
    v = section.get(key, default)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        errors.append(f"{path}.{key}: expected a number")
        return None
    return v


_SYSTEM_KEYS = {
    "doubling": ((), ("d",)),
    "rotation": (("theta",), ()),
    "skew": (("theta",), ("fiber",)),
    "shift": ((), ("alphabet",)),
    "viana": ((), ("d", "a0", "alpha")),
}

_OBSERVABLE_KEYS = {
    "cos_circle": ((), ()),
    "fiber_height": ((), ("bound",)),
    "constant": (("value",), ()),
    "coordinate0": ((), ("alphabet",)),
    "symbol_table": (("values",), ()),
    "piecewise_linear": (("xs", "ys"), ()),
}

_COCYCLE_KEYS = {
    "constant_diag": (("values",), ()),
    "symbol_diag": (("tables",), ()),
    "rotation_matrix": ((), ()),
    "schrodinger": (("energy", "amplitude"), ()),
}

_MEASURE_KEYS = {
    "bernoulli": (("weights",), ()),
    "markov": (("transition",), ()),
}

_POINT_KEYS = {
    "circle": (("x",), ()),
    "torus": (("x", "y"), ()),
    "cylinder": (("x", "y"), ()),
    "word": ((), ("preperiod", "period")),
}

_SAMPLER_KEYS = {
    "preimage": (("target", "depth"), ()),
    "stable_tail": (("word", "prefix_len"), ()),
    "grid": (("resolution",), ()),
}

_COVER_KEYS = {
    "dyadic": (("resolution",), ()),
    "cylinder": (("length",), ()),
}


def _validate_tagged(section, path, table, errors, name):
    if not isinstance(section, dict):
        errors.append(f"{path}: expected an object")
        return
    kind = section.get("kind")
    if kind not in table:
        errors.append(
            f"{path}.kind: unknown {name} kind {kind!r} "
            f"(one of {', '.join(sorted(table))})"
        )
        return
    required, optional = table[kind]
    _require(section, path, ("kind",) + required, optional, errors)
    if kind == "viana" and "a0" in section:
        a0 = section["a0"]
        if isinstance(a0, bool) or not isinstance(a0, (int, float)):
            errors.append(f"{path}.a0: expected a number")
        elif not 1.0 < float(a0) < 2.0:
            errors.append(
                f"{path}.a0: must lie in the open interval (1, 2), got {a0}"
            )
    if kind == "rotation" and "theta" in section:
        _check_number(section, "theta", path, errors)
    if kind in ("doubling", "shift"):
        key = "d" if kind == "doubling" else "alphabet"
        _check_int(section, key, path, errors, lo=2)


def _validate_point(section, path, errors):
    _validate_tagged(section, path, _POINT_KEYS, errors, "point")
    if isinstance(section, dict) and section.get("kind") in ("circle", "torus", "cylinder"):
        for coord in ("x", "y"):
            if coord in section:
                parse_rational(section[coord], f"{path}.{coord}", errors)
    if isinstance(section, dict) and section.get("kind") == "word":
        period = section.get("period")
        if not isinstance(period, list) or not period:
            errors.append(f"{path}.period: expected a nonempty symbol list")


def _validate_sampler(section, path, errors):
    _validate_tagged(section, path, _SAMPLER_KEYS, errors, "sampler")
    if isinstance(section, dict):
        if section.get("kind") == "preimage" and "target" in section:
            _validate_point(section["target"], f"{path}.target", errors)
            _check_int(section, "depth", path, errors, lo=1)
        if section.get("kind") == "stable_tail" and "word" in section:
            _validate_point(section["word"], f"{path}.word", errors)
            _check_int(section, "prefix_len", path, errors, lo=1)
        if section.get("kind") == "grid":
            _check_int(section, "resolution", path, errors, lo=1)


_TOP_COMMON = ("seed", "out_dir", "emit")

_TOP_KEYS = {
    "trace": (("system", "observable", "point"), ("params",)),
    "criterion": (("system", "observable", "sampler_a", "sampler_b"), ("params",)),
    "probe": (("system", "observable", "cover", "params"), ()),
    "lyapunov": (("system", "cocycle", "point"), ("params",)),
    "entropy": (("system", "measure", "point"), ("params",)),
    "irregular-build": (("system", "schedule"), ()),
    "weak-gibbs": (("system", "measure", "potential", "points"), ("params",)),
    "replay": (("report", "cell"), ()),
}

_PARAM_KEYS = {
    "trace": ("horizon", "tail_start"),
    "criterion": ("count", "horizon", "tail_start"),
    "probe": ("start", "epsilon", "horizon", "budget"),
    "lyapunov": ("tail_start", "horizon"),
    "entropy": ("n_max",),
    "weak-gibbs": ("horizon", "pressure", "envelope"),
}

_PARAM_DEFAULTS = {
    "trace": {"horizon": 1000, "tail_start": 0},
    "criterion": {"count": 16, "horizon": 10_000, "tail_start": 0},
    "probe": {},
    "lyapunov": {"tail_start": 0, "horizon": 1000},
    "entropy": {"n_max": 1000},
    "weak-gibbs": {"horizon": 1000, "pressure": 0.0, "envelope": 1e-9},
}


def validate(tree):
    """Return the list of all problems; empty means valid."""
    errors = []
    if not isinstance(tree, dict):
        return ["top level: expected a JSON object"]
    kind = tree.get("kind")
    if kind not in KINDS:
        errors.append(
            f"kind: unknown experiment kind {kind!r} "
            f"(one of {', '.join(KINDS)})"
        )
        return errors
    required, optional = _TOP_KEYS[kind]
    _require(tree, kind, ("kind",) + required, optional + _TOP_COMMON, errors)

    if "system" in tree:
        _validate_tagged(tree["system"], "system", _SYSTEM_KEYS, errors, "system")
    if "observable" in tree:
        _validate_tagged(
            tree["observable"], "observable", _OBSERVABLE_KEYS, errors, "observable"
        )
    if "cocycle" in tree:
        _validate_tagged(tree["cocycle"], "cocycle", _COCYCLE_KEYS, errors, "cocycle")
    if "measure" in tree:
        _validate_tagged(tree["measure"], "measure", _MEASURE_KEYS, errors, "measure")
    if "potential" in tree:
        _validate_tagged(
            tree["potential"], "potential", _OBSERVABLE_KEYS, errors, "observable"
        )
    if "point" in tree:
        _validate_point(tree["point"], "point", errors)
    if "points" in tree:
        pts = tree["points"]
        if not isinstance(pts, list) or not pts:
            errors.append("points: expected a nonempty list of point specs")
        else:
            for i, p in enumerate(pts):
                _validate_point(p, f"points[{i}]", errors)
    for key in ("sampler_a", "sampler_b"):
        if key in tree:
            _validate_sampler(tree[key], key, errors)
    if "cover" in tree:
        _validate_tagged(tree["cover"], "cover", _COVER_KEYS, errors, "cover")
    if "schedule" in tree:
        sec = tree["schedule"]
        if _require(sec, "schedule", ("alpha", "beta", "cap"), ("deltas",), errors):
            _validate_point(sec["alpha"], "schedule.alpha", errors)
            _validate_point(sec["beta"], "schedule.beta", errors)
            _check_int(sec, "cap", "schedule", errors, lo=2)
            if "deltas" in sec and (
                not isinstance(sec["deltas"], list)
                or not all(
                    isinstance(v, (int, float)) and not isinstance(v, bool) and v > 0
                    for v in sec["deltas"]
                )
            ):
                errors.append("schedule.deltas: expected a list of positive numbers")
    if kind == "replay":
        if "report" in tree and not isinstance(tree["report"], str):
            errors.append("report: expected a file path string")
        _check_int(tree, "cell", "replay", errors, lo=0, default=None)

    if "params" in tree:
        allowed = _PARAM_KEYS.get(kind, ())
        if _require(tree["params"], "params", (), allowed, errors):
            p = tree["params"]
            for key in ("horizon", "tail_start", "count", "budget", "start",
                        "n_max", "cell"):
                if key in p:
                    lo = 0 if key == "tail_start" else 1
                    _check_int(p, key, "params", errors, lo=lo)
            for key in ("epsilon", "envelope"):
                if key in p:
                    v = _check_number(p, key, "params", errors)
                    if v is not None and v <= 0:
                        errors.append(f"params.{key}: must be positive, got {v}")
            if "pressure" in p:
                _check_number(p, "pressure", "params", errors)
    elif kind == "probe":
        pass  # params is required for probe; _require already flagged it

    seed = tree.get("seed")
    if seed is not None and (
        isinstance(seed, bool) or not isinstance(seed, int)
        or not 0 <= seed < 2 ** 64
    ):
        errors.append("seed: expected an unsigned 64-bit integer")
    needs_seed = kind in SAMPLED_KINDS or any(
        isinstance(tree.get(k), dict) and tree[k].get("kind") == "grid"
        for k in ("sampler_a", "sampler_b")
    )
    if needs_seed and seed is None:
        errors.append("seed: missing (required for sampled experiments)")

    if "out_dir" in tree and not isinstance(tree["out_dir"], str):
        errors.append("out_dir: expected a directory path string")
    if "emit" in tree:
        if _require(tree["emit"], "emit", (), ("csv", "json", "svg"), errors):
            for k, v in tree["emit"].items():
                if not isinstance(v, bool):
                    errors.append(f"emit.{k}: expected true or false")
    return errors


def parse_config(text) -> ExperimentConfig:
    """Parse and validate; raises ConfigError listing every problem."""
    try:
        tree = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"not valid JSON: {exc}"])
    errors = validate(tree)
    if errors:
        raise ConfigError(errors)
    kind = tree["kind"]
    if kind in _PARAM_DEFAULTS:
        params = dict(_PARAM_DEFAULTS[kind])
        params.update(tree.get("params", {}))
        tree = dict(tree, params=params)
    emit = {"csv": True, "json": True, "svg": False}
    emit.update(tree.get("emit", {}))
    tree = dict(tree, emit=emit)
    return ExperimentConfig(
        kind=kind,
        data=_freeze(tree),
        seed=tree.get("seed"),
        out_dir=tree.get("out_dir", "."),
        emit_csv=emit["csv"],
        emit_json=emit["json"],
        emit_svg=emit["svg"],
    )


def render(config: ExperimentConfig) -> str:
    """Canonical JSON text; parse_config(render(c)) == c."""
    return json.dumps(_thaw(config.data), sort_keys=True, indent=2) + "\n"


# --- builders: config sections to domain objects -------------------------


def build_point(spec):
    from .points import SymbolicWord, circle_point, cylinder_point, torus_point

    kind = spec["kind"]
    if kind == "circle":
        return circle_point(_coerce(spec["x"]))
    if kind == "torus":
        return torus_point(_coerce(spec["x"]), _coerce(spec["y"]))
    if kind == "cylinder":
        return cylinder_point(_coerce(spec["x"]), _coerce(spec["y"]))
    period = tuple(spec["period"])
    preperiod = tuple(spec.get("preperiod", ()))
    alphabet = max(period + preperiod) + 1 if max(period + preperiod) >= 1 else 2
    return SymbolicWord(preperiod, period, alphabet)


def _coerce(value):
    return Fraction(value) if isinstance(value, str) else value


def build_system(spec):
    from .systems import Doubling, FullShift, Rotation, SkewProduct, Viana

    kind = spec["kind"]
    if kind == "doubling":
        return Doubling(spec.get("d", 2))
    if kind == "rotation":
        return Rotation(spec["theta"])
    if kind == "skew":
        return SkewProduct(spec["theta"], spec.get("fiber", "cos_circle"))
    if kind == "shift":
        return FullShift(spec.get("alphabet", 2))
    return Viana(
        d=spec.get("d", 16), a0=spec.get("a0", 1.9), alpha=spec.get("alpha", 0.01)
    )


def build_observable(spec):
    from . import observables as obs

    kind = spec["kind"]
    if kind == "cos_circle":
        return obs.cos_circle()
    if kind == "fiber_height":
        return obs.fiber_height(spec.get("bound", 2.2))
    if kind == "constant":
        return obs.constant(spec["value"])
    if kind == "coordinate0":
        return obs.coordinate0(spec.get("alphabet", 2))
    if kind == "symbol_table":
        return obs.symbol_table(tuple(spec["values"]))
    return obs.piecewise_linear(tuple(spec["xs"]), tuple(spec["ys"]))


def build_cocycle(spec):
    from . import cocycles as cc

    kind = spec["kind"]
    if kind == "constant_diag":
        return cc.ConstantDiag(tuple(spec["values"]))
    if kind == "symbol_diag":
        return cc.SymbolDiag(tuple(tuple(row) for row in spec["tables"]))
    if kind == "rotation_matrix":
        return cc.RotationMatrix()
    return cc.Schrodinger(spec["energy"], spec["amplitude"])


def build_measure(spec):
    from .entropy import BernoulliMeasure, MarkovMeasure

    if spec["kind"] == "bernoulli":
        return BernoulliMeasure(tuple(spec["weights"]))
    return MarkovMeasure(tuple(tuple(row) for row in spec["transition"]))


def build_sampler(system, spec, seed):
    from .samplers import DenseSampler, GridJitter, PreimageTree, StableTail

    kind = spec["kind"]
    if kind == "preimage":
        return DenseSampler(system, PreimageTree(build_point(spec["target"]),
                                                 spec["depth"]))
    if kind == "stable_tail":
        return DenseSampler(system, StableTail(build_point(spec["word"]),
                                               spec["prefix_len"]))
    return DenseSampler(system, GridJitter(spec["resolution"], seed))


def build_schedule(spec):
    from .points import BlockSchedule

    deltas = tuple(spec["deltas"]) if "deltas" in spec else tuple(
        1.0 / (k + 1) for k in range(1, 64)
    )
    return BlockSchedule(
        alpha_word=build_point(spec["alpha"]),
        beta_word=build_point(spec["beta"]),
        deltas=deltas,
        horizon_cap=spec["cap"],
    )


def build_cover(system, spec):
    from .baire import cylinder_cover, dyadic_cover

    if spec["kind"] == "dyadic":
        return dyadic_cover(spec["resolution"])
    return cylinder_cover(system.alphabet, spec["length"])
