"""Catalog of concrete dynamical systems and the exact/floating iteration
rules on their state spaces.

Exactness contract: rational circle coordinates are advanced with integer
arithmetic (no rounding) under the expanding circle maps; symbolic words
are shifted exactly; everything else advances in IEEE double arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, DomainEscapeError
from .points import (
    CIRCLE,
    LINE,
    EuclideanPoint,
    PrefixWord,
    SymbolicWord,
    circle_point,
    symbolic_distance,
)

TWO_PI = 2.0 * math.pi


def circle_distance(a, b):
    d = abs(float(a) - float(b)) % 1.0
    return min(d, 1.0 - d)


def _validate_rotation_angle(theta):
    """Reject low-denominator rationals: the continued-fraction expansion
    must survive to depth 20 without terminating."""
    if not (0.0 < theta < 1.0):
        raise DomainError("rotation angle must lie in (0, 1)")
    x = theta
    for _ in range(20):
        if x < 1e-12:
            raise DomainError(
                f"rotation angle {theta} is rational-like "
                "(continued fraction terminates before depth 20)"
            )
        x = 1.0 / x
        x -= math.floor(x)
    return theta


@dataclass(frozen=True)
class Doubling:
    """x -> d*x mod 1 on the circle."""

    d: int = 2

    def __post_init__(self):
        if self.d < 2:
            raise DomainError("expansion factor must be an integer >= 2")

    kind = "doubling"

    def step(self, p: EuclideanPoint) -> EuclideanPoint:
        (x,) = p.coords
        if isinstance(x, Fraction):
            return circle_point(Fraction(self.d * x.numerator % x.denominator, x.denominator))
        return circle_point((self.d * x) % 1.0)

    def distance(self, p, q):
        return circle_distance(p.coords[0], q.coords[0])

    def random_starts(self, rng, count):
        return [circle_point(v) for v in rng.random(count)]

    def describe(self):
        return f"doubling(d={self.d})"


@dataclass(frozen=True)
class Rotation:
    """x -> x + theta mod 1; theta validated irrational-like."""

    theta: float

    def __post_init__(self):
        _validate_rotation_angle(float(self.theta))

    kind = "rotation"

    def step(self, p: EuclideanPoint) -> EuclideanPoint:
        x = float(p.coords[0])
        return circle_point((x + self.theta) % 1.0)

    def distance(self, p, q):
        return circle_distance(p.coords[0], q.coords[0])

    def random_starts(self, rng, count):
        return [circle_point(v) for v in rng.random(count)]

    def describe(self):
        return f"rotation(theta={self.theta!r})"


@dataclass(frozen=True)
class SkewProduct:
    """(x, y) -> (x + theta, y + g(x)) on the 2-torus.

    A configurable stand-in for the Furstenberg-type skew products; whether
    a given fiber rule is non-uniquely ergodic is not decided here, so
    experiments over this system are exploratory.
    """

    theta: float
    fiber: str = "cos_circle"

    def __post_init__(self):
        _validate_rotation_angle(float(self.theta))
        if self.fiber not in ("cos_circle", "identity"):
            raise DomainError(f"unknown fiber rule {self.fiber!r}")

    kind = "skew"

    def _g(self, x):
        if self.fiber == "cos_circle":
            return math.cos(TWO_PI * x)
        return x

    def step(self, p: EuclideanPoint) -> EuclideanPoint:
        x, y = (float(v) for v in p.coords)
        return EuclideanPoint(
            (((x + self.theta) % 1.0), ((y + self._g(x)) % 1.0)), (CIRCLE, CIRCLE)
        )

    def distance(self, p, q):
        return max(
            circle_distance(p.coords[0], q.coords[0]),
            circle_distance(p.coords[1], q.coords[1]),
        )

    def random_starts(self, rng, count):
        xs = rng.random(count)
        ys = rng.random(count)
        return [
            EuclideanPoint((float(x), float(y)), (CIRCLE, CIRCLE))
            for x, y in zip(xs, ys)
        ]

    def describe(self):
        return f"skew(theta={self.theta!r}, fiber={self.fiber})"


@dataclass(frozen=True)
class FullShift:
    """One-sided full shift on {0, ..., A-1}^N."""

    alphabet: int = 2

    def __post_init__(self):
        if self.alphabet < 2:
            raise DomainError("alphabet size must be >= 2")

    kind = "shift"

    def step(self, p):
        if isinstance(p, (SymbolicWord, PrefixWord)):
            return p.shift(1)
        raise DomainError("full shift acts on symbolic points")

    def distance(self, p, q):
        return symbolic_distance(p, q)

    def random_starts(self, rng, count, length=256):
        return [
            PrefixWord(rng.integers(0, self.alphabet, size=length), self.alphabet, "iid")
            for _ in range(count)
        ]

    def describe(self):
        return f"fullshift(A={self.alphabet})"


def _viana_trapping_check(d, a0, alpha, y_lo, y_hi, orbits, steps, seed=20260823):
    """Monte-Carlo certificate that orbits started on the critical line
    y = 0 never leave [y_lo, y_hi]. Starts on the critical line because
    the attractor is the closure of its orbit; generic fiber starts near
    the edge of the y-window escape to -inf under y -> a(x) - y^2."""
    rng = np.random.default_rng(seed)
    x = rng.random(orbits)
    y = np.zeros(orbits)
    for step in range(steps):
        y_next = a0 + alpha * np.sin(TWO_PI * x) - y * y
        bad = (y_next < y_lo) | (y_next > y_hi)
        if bad.any():
            i = int(np.argmax(bad))
            return False, step + 1, (float(x[i]), float(y_next[i]))
        x = (d * x) % 1.0
        y = y_next
    return True, steps, None


@dataclass(frozen=True)
class Viana:
    """(x, y) -> (d*x mod 1, a(x) - y^2) with a(x) = a0 + alpha*sin(2*pi*x).

    Pre-periodicity of 0 for h(y) = a0 - y^2 is not enforced; a0 and alpha
    are user parameters, and fiber invariance of the y-window is certified
    empirically at construction time.
    """

    d: int = 16
    a0: float = 1.9
    alpha: float = 0.01
    y_domain: tuple = (-2.2, 2.2)
    trapping_orbits: int = field(default=1000, compare=False)
    trapping_steps: int = field(default=1000, compare=False)

    kind = "viana"

    def __post_init__(self):
        if self.d < 2:
            raise DomainError("expansion factor must be >= 2")
        if not (1.0 < self.a0 < 2.0):
            raise DomainError("a0 must lie in the open interval (1, 2)")
        if self.alpha <= 0:
            raise DomainError("alpha must be positive")
        y_lo, y_hi = self.y_domain
        if not y_lo < y_hi:
            raise DomainError("empty y-domain")
        ok, step, state = _viana_trapping_check(
            self.d, self.a0, self.alpha, y_lo, y_hi,
            self.trapping_orbits, self.trapping_steps,
        )
        if not ok:
            raise DomainError(
                f"trapping check failed at step {step} (state {state}): "
                f"orbits escape {self.y_domain}"
            )

    def a(self, x):
        return self.a0 + self.alpha * math.sin(TWO_PI * float(x))

    def step(self, p: EuclideanPoint, step_index=0) -> EuclideanPoint:
        x, y = p.coords
        if isinstance(x, Fraction):
            x_new = Fraction(self.d * x.numerator % x.denominator, x.denominator)
        else:
            x_new = (self.d * float(x)) % 1.0
        y_new = self.a(x) - float(y) ** 2
        y_lo, y_hi = self.y_domain
        if not (y_lo <= y_new <= y_hi):
            raise DomainEscapeError(step_index + 1, (float(x_new), y_new))
        return EuclideanPoint((x_new, y_new), (CIRCLE, LINE))

    def distance(self, p, q):
        return max(
            circle_distance(p.coords[0], q.coords[0]),
            abs(float(p.coords[1]) - float(q.coords[1])),
        )

    def random_starts(self, rng, count):
        # critical line y = 0; see _viana_trapping_check
        return [
            EuclideanPoint((float(x), 0.0), (CIRCLE, LINE)) for x in rng.random(count)
        ]

    def describe(self):
        return f"viana(d={self.d}, a0={self.a0}, alpha={self.alpha})"


def iterate(system, point, n):
    """f^n(point). Symbolic and exact-rational inputs advance exactly."""
    if n < 0:
        raise DomainError("iteration count must be nonnegative")
    if isinstance(system, FullShift):
        return point.shift(n) if n else point
    if isinstance(system, Doubling):
        (x,) = point.coords
        if isinstance(x, Fraction):
            num, den = x.numerator, x.denominator
            num = num * pow(system.d, n, den) % den if den > 1 else 0
            return circle_point(Fraction(num, den))
        for _ in range(n):
            point = system.step(point)
        return point
    if isinstance(system, Viana):
        for j in range(n):
            point = system.step(point, step_index=j)
        return point
    for _ in range(n):
        point = system.step(point)
    return point


SYSTEM_KINDS = {
    "doubling": Doubling,
    "rotation": Rotation,
    "skew": SkewProduct,
    "fullshift": FullShift,
    "viana": Viana,
}
