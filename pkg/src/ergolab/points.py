"""State-space points: real vectors with per-coordinate topology, and
symbolic sequences over a finite alphabet.

Symbolic points come in two flavours: eventually periodic words stored as
preperiod + primitive period (exact, infinitely indexable), and finite
prefix words carrying a construction tag (indexable up to their cap only).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError

CIRCLE = "circle"
LINE = "line"


def _check_coord(value, topology):
    if topology == CIRCLE:
        if not (0 <= value < 1):
            raise DomainError(f"circle coordinate {value!r} outside [0, 1)")
    elif topology == LINE:
        if not math.isfinite(float(value)):
            raise DomainError(f"line coordinate {value!r} is not finite")
    else:
        raise DomainError(f"unknown topology flag {topology!r}")


@dataclass(frozen=True)
class EuclideanPoint:
    """Real vector; each coordinate is a float or an exact Fraction."""

    coords: tuple
    topology: tuple

    def __post_init__(self):
        if len(self.coords) != len(self.topology):
            raise DomainError("coords and topology length mismatch")
        for v, t in zip(self.coords, self.topology):
            _check_coord(v, t)

    @property
    def is_exact(self):
        return all(isinstance(v, (Fraction, int)) for v in self.coords)

    def as_floats(self):
        return tuple(float(v) for v in self.coords)

    def describe(self):
        return "(" + ", ".join(str(v) for v in self.coords) + ")"


def circle_point(x):
    """Point on the circle; Fractions are kept exact, everything else
    becomes an IEEE double."""
    if isinstance(x, (Fraction, int)):
        x = Fraction(x) % 1
    else:
        x = float(x) % 1.0
    return EuclideanPoint((x,), (CIRCLE,))


def torus_point(x, y):
    xv = Fraction(x) % 1 if isinstance(x, (Fraction, int)) else float(x) % 1.0
    yv = Fraction(y) % 1 if isinstance(y, (Fraction, int)) else float(y) % 1.0
    return EuclideanPoint((xv, yv), (CIRCLE, CIRCLE))


def cylinder_point(x, y):
    """Circle x real-line point (Viana-type state)."""
    xv = Fraction(x) % 1 if isinstance(x, (Fraction, int)) else float(x) % 1.0
    return EuclideanPoint((xv, float(y)), (CIRCLE, LINE))


def primitive_root(block):
    """Shortest block whose repetition generates `block`."""
    block = tuple(block)
    n = len(block)
    for d in range(1, n + 1):
        if n % d == 0 and block == block[:d] * (n // d):
            return block[:d]
    return block


class SymbolicWord:
    """Eventually periodic one-sided word, canonical form.

    Canonical means: the period block is primitive, and the preperiod is
    minimal (its tail is never absorbed into a rotation of the period).
    """

    __slots__ = ("preperiod", "period", "alphabet")

    def __init__(self, preperiod, period, alphabet=2):
        pre = tuple(int(s) for s in preperiod)
        per = tuple(int(s) for s in period)
        if not per:
            raise DomainError("period block must be nonempty")
        if any(not (0 <= s < alphabet) for s in pre + per):
            raise DomainError(f"symbol outside alphabet of size {alphabet}")
        per = primitive_root(per)
        # absorb preperiod tail into the period by rotating it backwards
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        self.preperiod = pre
        self.period = per
        self.alphabet = alphabet

    def __getitem__(self, i):
        if i < 0:
            raise IndexError("one-sided word")
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n):
        out = np.empty(n, dtype=np.int64)
        p, q = len(self.preperiod), len(self.period)
        head = min(n, p)
        out[:head] = self.preperiod[:head]
        if n > p:
            reps = -(-(n - p) // q)
            tail = np.tile(np.array(self.period, dtype=np.int64), reps)
            out[p:] = tail[: n - p]
        return out

    def shift(self, n=1):
        if n < 0:
            raise DomainError("cannot shift backwards")
        pre, per = self.preperiod, self.period
        drop = min(n, len(pre))
        pre = pre[drop:]
        n -= drop
        if n:
            r = n % len(per)
            per = per[r:] + per[:r]
        return SymbolicWord(pre, per, self.alphabet)

    def symbol_frequency(self, symbol):
        """Asymptotic frequency of `symbol` (over the period block)."""
        return Fraction(self.period.count(symbol), len(self.period))

    def __eq__(self, other):
        return (
            isinstance(other, SymbolicWord)
            and self.preperiod == other.preperiod
            and self.period == other.period
            and self.alphabet == other.alphabet
        )

    def __hash__(self):
        return hash((self.preperiod, self.period, self.alphabet))

    def __repr__(self):
        pre = "".join(map(str, self.preperiod))
        per = "".join(map(str, self.period))
        return f"SymbolicWord({pre!r}+({per!r})^inf, A={self.alphabet})"

    def describe(self):
        pre = "".join(map(str, self.preperiod))
        per = "".join(map(str, self.period))
        return f"{pre}({per})*"


class PrefixWord:
    """Finite symbolic prefix with a construction tag.

    The prefix is fixed at construction (append-only contract is satisfied
    trivially: concurrent readers see the same immutable buffer).
    Coordinates past the cap are an error, never an implicit extension.
    """

    __slots__ = ("symbols", "alphabet", "generator", "offset", "meta")

    def __init__(self, symbols, alphabet=2, generator="explicit", offset=0, meta=None):
        arr = np.asarray(symbols, dtype=np.int64)
        arr.setflags(write=False)
        if arr.size and (arr.min() < 0 or arr.max() >= alphabet):
            raise DomainError(f"symbol outside alphabet of size {alphabet}")
        self.symbols = arr
        self.alphabet = alphabet
        self.generator = generator
        self.offset = offset  # how many shifts have been applied
        self.meta = meta or {}

    @property
    def cap(self):
        return self.symbols.size

    def __len__(self):
        return self.symbols.size

    def __getitem__(self, i):
        if not (0 <= i < self.symbols.size):
            raise DomainError(
                f"coordinate {i} beyond the construction cap {self.symbols.size}"
            )
        return int(self.symbols[i])

    def prefix(self, n):
        if n > self.symbols.size:
            raise DomainError(
                f"prefix length {n} beyond the construction cap {self.symbols.size}"
            )
        return self.symbols[:n]

    def shift(self, n=1):
        if n > self.symbols.size:
            raise DomainError("shift beyond the construction cap")
        return PrefixWord(
            self.symbols[n:], self.alphabet, self.generator, self.offset + n, self.meta
        )

    def describe(self):
        return f"prefix[{self.generator}, len={self.symbols.size}, shift={self.offset}]"


def symbolic_distance(x, y):
    """d(x, y) = A^(-k) with k the first disagreement index; 0 if equal."""
    if x.alphabet != y.alphabet:
        raise DomainError("words over different alphabets")
    a = x.alphabet
    if isinstance(x, SymbolicWord) and isinstance(y, SymbolicWord):
        if x == y:
            return 0.0
        bound = (
            max(len(x.preperiod), len(y.preperiod))
            + len(x.period) * len(y.period)
            + 1
        )
    else:
        bound = min(
            x.cap if isinstance(x, PrefixWord) else np.inf,
            y.cap if isinstance(y, PrefixWord) else np.inf,
        )
    k = 0
    while k < bound:
        if x[k] != y[k]:
            return float(a) ** (-k)
        k += 1
    if isinstance(x, SymbolicWord) and isinstance(y, SymbolicWord):
        return 0.0
    # finite prefixes that agree on their common range
    return float(a) ** (-bound)


@dataclass(frozen=True)
class BlockSchedule:
    """Targets and tolerance schedule for the irregular-word constructor."""

    alpha_word: SymbolicWord
    beta_word: SymbolicWord
    deltas: tuple = field(default_factory=tuple)  # delta_k, k = 1, 2, ...
    horizon_cap: int = 1 << 14

    def __post_init__(self):
        if not self.deltas:
            raise DomainError("tolerance sequence must be nonempty")
        prev = math.inf
        for d in self.deltas:
            if not (0 < float(d) <= prev):
                raise DomainError("delta_k must be positive and nonincreasing")
            prev = float(d)
        if self.alpha_word.alphabet != self.beta_word.alphabet:
            raise DomainError("target words over different alphabets")
        if self.horizon_cap < 2:
            raise DomainError("horizon cap must be at least 2")

    def delta(self, k):
        """delta_k with the last value extended past the stated sequence."""
        return float(self.deltas[min(k, len(self.deltas)) - 1])
