"""Birkhoff averages, checkpointed traces, and finite-horizon tail bounds.

A trace never claims a limit: tail min/max over [N, H] bracket the
liminf/limsup surrogates at the recorded horizon, and every report carries
that horizon. Symbolic orbits are averaged with exact integer counting;
float orbits run through the compiled Kahan engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import engine
from .errors import DomainError, DomainEscapeError, HorizonError
from .observables import Observable
from .points import EuclideanPoint, PrefixWord, SymbolicWord
from .systems import Doubling, FullShift, Viana


@dataclass(frozen=True)
class DenseTail:
    start: int = 0  # 0 means the default H // 2

    def tail_start(self, horizon):
        return self.start if self.start > 0 else max(horizon // 2, 1)


@dataclass(frozen=True)
class Dyadic:
    pass


@dataclass(frozen=True)
class Explicit:
    checkpoints: tuple


@dataclass(frozen=True)
class AverageTrace:
    system_id: str
    observable_id: str
    point_descriptor: str
    checkpoints: np.ndarray  # strictly increasing indices n_1 < ... < n_m
    values: np.ndarray  # psi_{n_j}
    horizon: int
    dense_tail: bool = False
    tail_start: int = 0
    observable_bound: float = math.inf

    def value_at(self, n):
        i = int(np.searchsorted(self.checkpoints, n))
        if i >= len(self.checkpoints) or self.checkpoints[i] != n:
            raise HorizonError(f"no checkpoint at n={n}")
        return float(self.values[i])


@dataclass(frozen=True)
class TailBounds:
    start: int
    lower: float
    upper: float
    arg_lower: int
    arg_upper: int


def _symbolic_values_exactable(observable):
    return observable.symbol_values is not None


def _symbolic_psi(word, observable, horizon):
    """Exact path: per-symbol cumulative counts combined with the value
    table, so psi_n is (integer combination) / n with one rounding."""
    if isinstance(word, PrefixWord) and horizon > word.cap:
        raise DomainError(
            f"horizon {horizon} beyond the word's construction cap {word.cap}"
        )
    prefix = word.prefix(horizon)
    table = observable.symbol_values
    if table is None:
        from .observables import K_CONST

        if observable.kernel_code == K_CONST:
            return np.full(horizon, observable.kernel_params[0])
        raise DomainError(
            f"observable {observable.id} undefined on symbolic points"
        )
    acc = np.zeros(horizon, dtype=np.float64)
    for s, v in enumerate(table):
        if v != 0.0:
            counts = np.cumsum(prefix == s, dtype=np.int64)
            acc += counts * v
    n = np.arange(1, horizon + 1, dtype=np.float64)
    return acc / n


def _rational_doubling_psi(system, observable, point, horizon):
    """Exact path for rational circle points: the numerator orbit modulo
    the denominator is eventually periodic, so the value series is built by
    tiling one cycle."""
    x = Fraction(point.coords[0])
    num, den = x.numerator, x.denominator
    d = system.d
    seen = {}
    nums = []
    j = num
    while j not in seen:
        seen[j] = len(nums)
        nums.append(j)
        j = (d * j) % den if den > 1 else 0
    cycle_start = seen[j]
    vals = np.array(
        [observable(EuclideanPoint((Fraction(v, den),), ("circle",))) for v in nums]
    )
    if horizon <= len(vals):
        series = vals[:horizon]
    else:
        cyc = vals[cycle_start:]
        reps = -(-(horizon - cycle_start) // len(cyc))
        series = np.concatenate([vals[:cycle_start], np.tile(cyc, reps)])[:horizon]
    sums = engine.kahan_cumsum(np.ascontiguousarray(series))
    return sums / np.arange(1, horizon + 1, dtype=np.float64)


def psi_series(system, observable, point, horizon):
    """Running averages psi_1 .. psi_H along one orbit."""
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    if isinstance(point, (SymbolicWord, PrefixWord)):
        if not isinstance(system, FullShift):
            raise DomainError("symbolic point over a non-shift system")
        return _symbolic_psi(point, observable, horizon)
    if isinstance(system, Doubling) and isinstance(point.coords[0], (Fraction, int)):
        return _rational_doubling_psi(system, observable, point, horizon)

    sys_args = engine.system_kernel_args(system)
    obs_args = engine.observable_kernel_args(observable)
    if sys_args is None or obs_args is None:
        raise DomainError(
            f"no orbit engine for system {system.describe()} with "
            f"observable {observable.id}"
        )
    coords = point.as_floats()
    x0 = coords[0]
    y0 = coords[1] if len(coords) > 1 else 0.0
    sys_code, sparams = sys_args
    obs_code, oparams, kx, ky = obs_args
    psi, escape = engine.orbit_psi_series(
        sys_code, sparams, obs_code, oparams, kx, ky, x0, y0, horizon
    )
    if escape >= 0:
        raise DomainEscapeError(escape, (x0, y0))
    return psi


def birkhoff_average(system, observable, point, n):
    """(1/n) sum_{j<n} phi(f^j x), compensated summation throughout."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return float(psi_series(system, observable, point, n)[-1])


def trace(system, observable, point, horizon, policy=None) -> AverageTrace:
    """Single orbit pass with incremental averages at the checkpoints."""
    if policy is None:
        policy = DenseTail()
    psi = psi_series(system, observable, point, horizon)

    if isinstance(policy, DenseTail):
        start = policy.tail_start(horizon)
        if start > horizon:
            raise DomainError("dense-tail start beyond the horizon")
        head = []
        k = 1
        while k < start:
            head.append(k)
            k *= 2
        cps = np.array(head + list(range(start, horizon + 1)), dtype=np.int64)
        dense, tail_start = True, start
    elif isinstance(policy, Dyadic):
        cps = []
        k = 1
        while k <= horizon:
            cps.append(k)
            k *= 2
        if cps[-1] != horizon:
            cps.append(horizon)
        cps = np.array(cps, dtype=np.int64)
        dense, tail_start = False, 0
    elif isinstance(policy, Explicit):
        cps = np.array(sorted(set(int(c) for c in policy.checkpoints)), dtype=np.int64)
        if len(cps) == 0 or cps[0] < 1 or cps[-1] > horizon:
            raise DomainError("explicit checkpoints outside [1, horizon]")
        dense, tail_start = False, 0
    else:
        raise DomainError(f"unknown checkpoint policy {policy!r}")

    values = psi[cps - 1]
    descr = point.describe() if hasattr(point, "describe") else repr(point)
    return AverageTrace(
        system_id=system.describe(),
        observable_id=observable.id,
        point_descriptor=descr,
        checkpoints=cps,
        values=np.ascontiguousarray(values),
        horizon=horizon,
        dense_tail=dense,
        tail_start=tail_start,
        observable_bound=observable.bound,
    )


def tail_bounds(tr: AverageTrace, start) -> TailBounds:
    """Min/max of psi_n over N <= n <= H; brackets liminf/limsup at H."""
    if not tr.dense_tail:
        raise HorizonError("tail bounds need a dense-tail trace")
    if not (tr.tail_start <= start <= tr.horizon):
        raise HorizonError(
            f"tail start {start} outside [{tr.tail_start}, {tr.horizon}]"
        )
    mask = tr.checkpoints >= start
    vals = tr.values[mask]
    cps = tr.checkpoints[mask]
    i_lo = int(np.argmin(vals))
    i_hi = int(np.argmax(vals))
    return TailBounds(
        start=int(start),
        lower=float(vals[i_lo]),
        upper=float(vals[i_hi]),
        arg_lower=int(cps[i_lo]),
        arg_upper=int(cps[i_hi]),
    )


def oscillation(tr: AverageTrace, start):
    """sup over m, n in [N, H] of |psi_n - psi_m|, i.e. tail max - min."""
    tb = tail_bounds(tr, start)
    return tb.upper - tb.lower


def empirical_signature(system, point, n, observables):
    """Vector of psi_n values, one per observable in the family.

    Two signatures at different n further apart than a declared gap are
    weak*-divergence candidates, never a proof.
    """
    if not observables:
        raise DomainError("observable family must be nonempty")
    return np.array(
        [birkhoff_average(system, obs, point, n) for obs in observables]
    )
