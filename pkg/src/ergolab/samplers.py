"""Dense-set samplers: preimage trees, stable tails, jittered grids.

Preimage samples are produced with exact arithmetic and map onto their
target after exactly `depth` steps; stable-tail samples agree with the
chosen periodic word beyond the declared free prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SamplerError
from .points import EuclideanPoint, SymbolicWord, circle_point
from .systems import Doubling, FullShift, Rotation, SkewProduct, Viana


@dataclass(frozen=True)
class PreimageTree:
    target: object  # exact circle point or symbolic word
    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise SamplerError("preimage depth must be >= 1")


@dataclass(frozen=True)
class StableTail:
    word: SymbolicWord  # periodic target of the stable set
    prefix_len: int

    def __post_init__(self):
        if self.prefix_len < 1:
            raise SamplerError("free prefix length must be >= 1")
        if self.word.preperiod:
            raise SamplerError("stable-tail target must be purely periodic")


@dataclass(frozen=True)
class GridJitter:
    resolution: int
    seed: int

    def __post_init__(self):
        if self.resolution < 1:
            raise SamplerError("grid resolution must be >= 1")


@dataclass(frozen=True)
class DenseSampler:
    system: object
    strategy: object


def _spread_indices(stock, count):
    # evenly spaced ranks keep the sample spread over the full stock
    return [i * stock // count for i in range(count)]


def _doubling_preimages(system, target, depth, count):
    t = target.coords[0]
    if not isinstance(t, (Fraction, int)):
        raise SamplerError("preimage tree needs an exact rational target")
    t = Fraction(t)
    stock = system.d ** depth
    if count > stock:
        raise SamplerError(f"requested {count} preimages, stock is {stock}")
    out = []
    for j in _spread_indices(stock, count):
        out.append(circle_point((t + j) / stock))
    return out


def _shift_preimages(system, target, depth, count):
    a = system.alphabet
    stock = a ** depth
    if count > stock:
        raise SamplerError(f"requested {count} preimages, stock is {stock}")
    out = []
    for j in _spread_indices(stock, count):
        digits = []
        v = j
        for _ in range(depth):
            digits.append(v % a)
            v //= a
        digits.reverse()
        out.append(
            SymbolicWord(tuple(digits) + target.preperiod, target.period, a)
        )
    return out


def _stable_tail_samples(system, strategy, count):
    a = system.alphabet
    stock = a ** strategy.prefix_len
    if count > stock:
        raise SamplerError(f"requested {count} prefixes, stock is {stock}")
    out = []
    for j in _spread_indices(stock, count):
        digits = []
        v = j
        for _ in range(strategy.prefix_len):
            digits.append(v % a)
            v //= a
        digits.reverse()
        out.append(SymbolicWord(tuple(digits), strategy.word.period, a))
    return out


def _grid_jitter_samples(system, strategy, count):
    res = strategy.resolution
    if count > res:
        raise SamplerError(f"requested {count} grid points, stock is {res}")
    rng = np.random.Generator(
        np.random.Philox(key=np.array([strategy.seed, 0], dtype=np.uint64))
    )
    u = rng.random(res)
    cells = _spread_indices(res, count)
    xs = [(i + u[i]) / res for i in cells]
    if isinstance(system, Viana):
        return [EuclideanPoint((x, 0.0), ("circle", "line")) for x in xs]
    if isinstance(system, SkewProduct):
        v = rng.random(res)
        return [
            EuclideanPoint(((i + u[i]) / res, v[i]), ("circle", "circle"))
            for i in cells
        ]
    return [circle_point(x) for x in xs]


def make_dense_sample(sampler: DenseSampler, count):
    """Draw `count` distinct points per the sampler's strategy."""
    if count < 1:
        raise SamplerError("count must be >= 1")
    system, strategy = sampler.system, sampler.strategy
    if isinstance(strategy, PreimageTree):
        if isinstance(system, Doubling):
            return _doubling_preimages(system, strategy.target, strategy.depth, count)
        if isinstance(system, FullShift):
            return _shift_preimages(system, strategy.target, strategy.depth, count)
        raise SamplerError(
            "preimage tree needs computable preimages (doubling or full shift)"
        )
    if isinstance(strategy, StableTail):
        if not isinstance(system, FullShift):
            raise SamplerError("stable tails are defined on the full shift")
        return _stable_tail_samples(system, strategy, count)
    if isinstance(strategy, GridJitter):
        if isinstance(system, (Doubling, Rotation, SkewProduct, Viana)):
            return _grid_jitter_samples(system, strategy, count)
        raise SamplerError("grid jitter needs a Euclidean state space")
    raise SamplerError(f"unknown sampler strategy {strategy!r}")
