"""Brin-Katok and weak-Gibbs entropy estimators over shift spaces.

With the shift metric and radius 1/2, the dynamical ball B_n(x, 1/2) is
exactly the length-n cylinder [x_0 .. x_{n-1}], so every measure here is
evaluated by exact cylinder products (log-space sums of log-weights).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import engine
from .errors import DomainError
from .points import PrefixWord, SymbolicWord
from .systems import FullShift


def _prefix_of(point, horizon):
    if not isinstance(point, (SymbolicWord, PrefixWord)):
        raise DomainError("entropy estimators need symbolic points")
    return point.prefix(horizon)


@dataclass(frozen=True)
class BernoulliMeasure:
    """Product measure with per-symbol weights; mu([w]) = prod p_{w_j}."""

    weights: tuple

    def __post_init__(self):
        w = tuple(float(p) for p in self.weights)
        if len(w) < 2:
            raise DomainError("need at least 2 symbol weights")
        if any(p <= 0.0 for p in w):
            raise DomainError("Bernoulli weights must be positive")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise DomainError(f"weights sum to {math.fsum(w)!r}, not 1")
        object.__setattr__(self, "weights", w)

    @property
    def alphabet(self):
        return len(self.weights)

    @property
    def uniform(self):
        return all(p == self.weights[0] for p in self.weights)

    def log_cylinder_series(self, point, horizon):
        """log mu(C_n(x)) for n = 1..horizon, via exact symbol counts."""
        prefix = _prefix_of(point, horizon)
        logs = np.array([math.log(p) for p in self.weights])
        if self.uniform:
            return logs[0] * np.arange(1, horizon + 1, dtype=np.float64)
        acc = np.zeros(horizon)
        for s, lp in enumerate(logs):
            counts = np.cumsum(prefix == s, dtype=np.int64)
            acc += counts * lp
        return acc

    def log_cylinder(self, point, n):
        return float(self.log_cylinder_series(point, n)[-1])

    def describe(self):
        return f"bernoulli{self.weights}"


@dataclass(frozen=True)
class MarkovMeasure:
    """Stationary Markov measure: mu([w]) = pi_{w_0} prod P_{w_i w_{i+1}}."""

    transition: tuple  # row-major tuple of row tuples
    stationary: tuple = None

    def __post_init__(self):
        p = np.array(self.transition, dtype=np.float64)
        if p.ndim != 2 or p.shape[0] != p.shape[1] or p.shape[0] < 2:
            raise DomainError("transition matrix must be square, size >= 2")
        if (p <= 0.0).any():
            raise DomainError("transition entries must be positive")
        rows = p.sum(axis=1)
        if np.abs(rows - 1.0).max() > 1e-12:
            raise DomainError("transition rows must sum to 1")
        a = p.T - np.eye(p.shape[0])
        a[-1, :] = 1.0
        b = np.zeros(p.shape[0])
        b[-1] = 1.0
        pi = np.linalg.solve(a, b)
        residual = float(np.abs(pi @ p - pi).max())
        if residual > 1e-12 or (pi <= 0.0).any():
            raise DomainError(
                f"stationary solve failed (residual {residual:.3e})"
            )
        object.__setattr__(
            self, "transition", tuple(tuple(row) for row in p)
        )
        object.__setattr__(self, "stationary", tuple(float(v) for v in pi))

    @property
    def alphabet(self):
        return len(self.stationary)

    def log_cylinder_series(self, point, horizon):
        prefix = _prefix_of(point, horizon)
        log_pi = math.log(self.stationary[prefix[0]])
        if horizon == 1:
            return np.array([log_pi])
        log_p = np.log(np.array(self.transition))
        steps = log_p[prefix[:-1], prefix[1:]]
        out = np.empty(horizon)
        out[0] = log_pi
        out[1:] = log_pi + engine.kahan_cumsum(np.ascontiguousarray(steps))
        return out

    def log_cylinder(self, point, n):
        return float(self.log_cylinder_series(point, n)[-1])

    def describe(self):
        return f"markov{self.transition}"


MEASURE_KINDS = {
    "bernoulli": BernoulliMeasure,
    "markov": MarkovMeasure,
}


@dataclass(frozen=True)
class EntropyTrace:
    measure_id: str
    point_descriptor: str
    checkpoints: np.ndarray
    values: np.ndarray  # -(1/n) log mu(B_n(x, 1/2))
    horizon: int

    def value_at(self, n):
        i = int(np.searchsorted(self.checkpoints, n))
        if i >= len(self.checkpoints) or self.checkpoints[i] != n:
            raise DomainError(f"no checkpoint at n={n}")
        return float(self.values[i])

    def tail_bounds(self, start):
        mask = self.checkpoints >= start
        vals = self.values[mask]
        if len(vals) == 0:
            raise DomainError(f"no checkpoints at or beyond {start}")
        return float(vals.min()), float(vals.max())


def _check_measure(system, measure):
    if not isinstance(system, FullShift):
        raise DomainError("entropy estimators are defined over the full shift")
    if measure.alphabet != system.alphabet:
        raise DomainError(
            f"measure alphabet {measure.alphabet} != shift alphabet "
            f"{system.alphabet}"
        )


def brin_katok_trace(system, measure, point, n_max) -> EntropyTrace:
    """-(1/n) log mu(cylinder) for every n <= n_max; for the uniform
    Bernoulli measure the series is exactly constant at log(alphabet)."""
    _check_measure(system, measure)
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    log_mu = measure.log_cylinder_series(point, n_max)
    if isinstance(measure, BernoulliMeasure) and measure.uniform:
        values = np.full(n_max, -math.log(measure.weights[0]))
    else:
        values = -log_mu / np.arange(1, n_max + 1, dtype=np.float64)
    descr = point.describe() if hasattr(point, "describe") else repr(point)
    return EntropyTrace(
        measure_id=measure.describe(),
        point_descriptor=descr,
        checkpoints=np.arange(1, n_max + 1, dtype=np.int64),
        values=values,
        horizon=n_max,
    )


def weak_gibbs_log_ratio(system, measure, spec, pressure, point, n):
    """log of mu(B_n(x, 1/2)) / exp(-n P + phi_n(x))."""
    _check_measure(system, measure)
    if n < 1:
        raise DomainError("n must be >= 1")
    phi_n = float(spec.series(point, n)[-1])
    return measure.log_cylinder(point, n) - (-n * pressure + phi_n)


def weak_gibbs_ratio(system, measure, spec, pressure, point, n):
    """The ratio itself; 1 exactly iff the potential matches the measure."""
    return math.exp(weak_gibbs_log_ratio(system, measure, spec, pressure, point, n))


@dataclass(frozen=True)
class WeakGibbsReport:
    max_rate: float  # max over sampled (x, n) of (1/n)|log ratio|
    envelope: float
    is_weak_gibbs: bool
    horizon: int
    samples: int


def weak_gibbs_check(system, measure, spec, pressure, points, horizon,
                     envelope) -> WeakGibbsReport:
    """Declare 'weak Gibbs at horizon H' when the max normalized log-ratio
    over the sample stays under the declared envelope."""
    _check_measure(system, measure)
    if not points:
        raise DomainError("sample must be nonempty")
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    n_range = np.arange(1, horizon + 1, dtype=np.float64)
    worst = 0.0
    for p in points:
        log_mu = measure.log_cylinder_series(p, horizon)
        phi = spec.series(p, horizon)
        rates = np.abs(log_mu + n_range * pressure - phi) / n_range
        worst = max(worst, float(rates.max()))
    return WeakGibbsReport(
        max_rate=worst,
        envelope=float(envelope),
        is_weak_gibbs=worst <= envelope,
        horizon=horizon,
        samples=len(points),
    )
