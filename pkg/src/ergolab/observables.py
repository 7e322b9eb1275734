"""Bounded observables over the state spaces.

Every observable records a finite bound on |phi|; tail-invariance checks
and the Lambda_N machinery rely on it. Observables over shift spaces carry
a per-symbol value table so that orbit sums reduce to exact integer (or
tabulated) counting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .points import CIRCLE, EuclideanPoint, PrefixWord, SymbolicWord

TWO_PI = 2.0 * math.pi

# kernel codes used by the compiled orbit engine
K_COS = 0
K_FIBER = 1
K_CONST = 2
K_PWLINEAR = 3


@dataclass(frozen=True)
class Observable:
    id: str
    bound: float
    kernel_code: int = -1
    kernel_params: tuple = ()
    symbol_values: tuple = None  # per-symbol table, shift systems only
    table: tuple = None  # (xs, ys) for piecewise-linear rules

    def __post_init__(self):
        if not math.isfinite(self.bound):
            raise DomainError("observable bound must be finite")

    def __call__(self, point):
        if isinstance(point, (SymbolicWord, PrefixWord)):
            if self.symbol_values is None:
                if self.kernel_code == K_CONST:
                    return self.kernel_params[0]
                raise DomainError(f"observable {self.id} undefined on symbolic points")
            return self.symbol_values[point[0]]
        return self._eval_euclidean(point)

    def _eval_euclidean(self, point: EuclideanPoint):
        if self.kernel_code == K_COS:
            for v, t in zip(point.coords, point.topology):
                if t == CIRCLE:
                    return math.cos(TWO_PI * float(v))
            raise DomainError("point has no circle coordinate")
        if self.kernel_code == K_FIBER:
            if len(point.coords) < 2:
                raise DomainError("fiber height needs a 2d state")
            return float(point.coords[1])
        if self.kernel_code == K_CONST:
            return self.kernel_params[0]
        if self.kernel_code == K_PWLINEAR:
            xs, ys = self.table
            x = float(point.coords[0]) % 1.0
            return float(np.interp(x, xs, ys))
        raise DomainError(f"observable {self.id} undefined on this state")


def cos_circle():
    """x -> cos(2*pi*x) on the first circle coordinate."""
    return Observable("cos_circle", bound=1.0, kernel_code=K_COS)


def fiber_height(bound=2.2):
    """(x, y) -> y; bound defaults to the standard Viana y-window."""
    return Observable("fiber_height", bound=float(bound), kernel_code=K_FIBER)


def constant(c):
    return Observable(f"constant({c})", bound=abs(float(c)),
                      kernel_code=K_CONST, kernel_params=(float(c),))


def coordinate0(alphabet=2):
    """Symbolic x -> x_0 as a real number."""
    vals = tuple(float(s) for s in range(alphabet))
    return Observable("coordinate0", bound=float(alphabet - 1), symbol_values=vals)


def symbol_table(values, id=None):
    """Symbolic x -> table[x_0]; the additive-potential workhorse."""
    vals = tuple(float(v) for v in values)
    return Observable(id or f"symbol_table{vals}", bound=max(abs(v) for v in vals),
                      symbol_values=vals)


def piecewise_linear(xs, ys, id="piecewise_linear"):
    """User-tabulated piecewise-linear observable on [0, 1)."""
    xs = tuple(float(v) for v in xs)
    ys = tuple(float(v) for v in ys)
    if len(xs) != len(ys) or len(xs) < 2:
        raise DomainError("need matching node/value lists of length >= 2")
    if list(xs) != sorted(xs) or xs[0] < 0 or xs[-1] >= 1:
        raise DomainError("nodes must be sorted inside [0, 1)")
    return Observable(id, bound=max(abs(v) for v in ys),
                      kernel_code=K_PWLINEAR, table=(xs, ys))


OBSERVABLE_KINDS = {
    "cos_circle": cos_circle,
    "fiber_height": fiber_height,
    "constant": constant,
    "coordinate0": coordinate0,
    "symbol_table": symbol_table,
    "piecewise_linear": piecewise_linear,
}
