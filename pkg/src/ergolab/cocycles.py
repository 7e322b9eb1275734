"""Linear cocycles, sub-additive sequences, and the Lyapunov machinery.

Matrix products along orbits are renormalized whenever the running norm
leaves [2^-512, 2^512]; the factored-out norms accumulate in a compensated
log so horizons of 1e5+ steps stay exact to ~1e-12. Norms are operator
(spectral) norms: closed form for 2x2, SVD above that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .observables import Observable
from .points import PrefixWord, SymbolicWord
from .systems import FullShift, iterate

TWO_PI = 2.0 * math.pi
RENORM_HI = 2.0 ** 512
RENORM_LO = 2.0 ** -512


def spectral_norm(a):
    """Largest singular value; entries are pre-scaled so the closed form
    cannot overflow even at the renormalization threshold."""
    if a.shape == (2, 2):
        s = max(abs(a[0, 0]), abs(a[0, 1]), abs(a[1, 0]), abs(a[1, 1]))
        if s == 0.0 or not math.isfinite(s):
            return float(s)
        b00, b01 = a[0, 0] / s, a[0, 1] / s
        b10, b11 = a[1, 0] / s, a[1, 1] / s
        t = b00 * b00 + b01 * b01 + b10 * b10 + b11 * b11
        d = b00 * b11 - b01 * b10
        disc = t * t - 4.0 * d * d
        if disc < 0.0:
            disc = 0.0
        return s * math.sqrt((t + math.sqrt(disc)) / 2.0)
    s = float(np.abs(a).max())
    if s == 0.0 or not math.isfinite(s):
        return s
    return s * float(np.linalg.norm(a / s, 2))


def _state_x(point):
    if isinstance(point, (SymbolicWord, PrefixWord)):
        raise DomainError("this cocycle needs a Euclidean base point")
    return float(point.coords[0])


@dataclass(frozen=True)
class ConstantDiag:
    """Same diagonal matrix at every state."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) < 2:
            raise DomainError("cocycle dimension must be >= 2")
        if any(v == 0.0 for v in vals):
            raise DomainError("diagonal cocycle must be invertible")
        object.__setattr__(self, "values", vals)

    @property
    def dimension(self):
        return len(self.values)

    def matrix(self, point):
        return np.diag(self.values)

    def sup_log_norm(self):
        return math.log(max(abs(v) for v in self.values))

    def min_inv_norm(self):
        return min(abs(v) for v in self.values)

    def describe(self):
        return f"constant_diag{self.values}"


@dataclass(frozen=True)
class SymbolDiag:
    """Per-symbol diagonal matrices over a shift space."""

    tables: tuple  # tables[s] = diagonal for symbol s

    def __post_init__(self):
        tabs = tuple(tuple(float(v) for v in row) for row in self.tables)
        dims = {len(row) for row in tabs}
        if len(dims) != 1 or dims.pop() < 2:
            raise DomainError("all symbols need the same dimension >= 2")
        if any(v == 0.0 for row in tabs for v in row):
            raise DomainError("diagonal cocycle must be invertible")
        object.__setattr__(self, "tables", tabs)

    @property
    def dimension(self):
        return len(self.tables[0])

    def matrix(self, point):
        if not isinstance(point, (SymbolicWord, PrefixWord)):
            raise DomainError("symbol cocycle needs a symbolic base point")
        return np.diag(self.tables[point[0]])

    def sup_log_norm(self):
        return max(math.log(max(abs(v) for v in row)) for row in self.tables)

    def min_inv_norm(self):
        return min(min(abs(v) for v in row) for row in self.tables)

    def describe(self):
        return f"symbol_diag{self.tables}"


@dataclass(frozen=True)
class RotationMatrix:
    """Planar rotation by angle 2*pi*x; orthogonal, so all norms are 1."""

    dimension = 2

    def matrix(self, point):
        ang = TWO_PI * _state_x(point)
        c, s = math.cos(ang), math.sin(ang)
        return np.array([[c, -s], [s, c]])

    def sup_log_norm(self):
        return 0.0

    def min_inv_norm(self):
        return 1.0

    def describe(self):
        return "rotation_matrix"


@dataclass(frozen=True)
class Schrodinger:
    """Transfer matrix [[E - 2 v cos(2 pi x), -1], [1, 0]] of the
    quasi-periodic Schrodinger operator; det = 1."""

    energy: float
    amplitude: float  # v > 1 is the interesting positive-exponent regime

    dimension = 2

    def matrix(self, point):
        x = _state_x(point)
        return np.array(
            [[self.energy - 2.0 * self.amplitude * math.cos(TWO_PI * x), -1.0],
             [1.0, 0.0]]
        )

    def _grid_norms(self, n=10_000):
        xs = (np.arange(n) + 0.5) / n
        top = self.energy - 2.0 * self.amplitude * np.cos(TWO_PI * xs)
        t = top * top + 2.0
        disc = np.maximum(t * t - 4.0, 0.0)
        return np.sqrt((t + np.sqrt(disc)) / 2.0)

    def sup_log_norm(self):
        return float(np.log(self._grid_norms().max()))

    def min_inv_norm(self):
        # det = 1, so ||M^-1|| = ||M||
        return float(1.0 / self._grid_norms().max())

    def describe(self):
        return f"schrodinger(E={self.energy}, v={self.amplitude})"


@dataclass(frozen=True)
class InverseTranspose:
    """A(x)^-T; running the engine on it covers smallest exponents."""

    base: object

    @property
    def dimension(self):
        return self.base.dimension

    def matrix(self, point):
        return np.linalg.inv(self.base.matrix(point)).T

    def sup_log_norm(self):
        return -math.log(self.base.min_inv_norm())

    def min_inv_norm(self):
        return math.exp(-self.base.sup_log_norm())

    def describe(self):
        return f"inverse_transpose({self.base.describe()})"


def check_invertibility(cocycle, system, samples=10_000, seed=7):
    """Record min ||A(z)^-1||^-1 over a sample; must be positive."""
    m = cocycle.min_inv_norm()
    if not m > 0.0:
        raise DomainError(f"cocycle {cocycle.describe()} is not invertible")
    return m


def log_norm_series(cocycle, system, point, horizon):
    """log ||A^n(x)|| for n = 1..horizon, one renormalized pass."""
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    k = cocycle.dimension
    prod = np.eye(k)
    acc = 0.0
    comp = 0.0
    out = np.empty(horizon)
    state = point
    for n in range(1, horizon + 1):
        a = cocycle.matrix(state)
        prod = a @ prod
        nrm = spectral_norm(prod)
        if nrm == 0.0 or not math.isfinite(nrm):
            raise DomainError(
                f"singular or overflowed product at step {n} "
                f"for {cocycle.describe()}"
            )
        log_nrm = math.log(nrm)
        out[n - 1] = acc + log_nrm
        if nrm > RENORM_HI or nrm < RENORM_LO:
            t = log_nrm - comp
            u = acc + t
            comp = (u - acc) - t
            acc = u
            prod = prod / nrm
        if n < horizon:
            state = iterate(system, state, 1)
    return out


def direct_log_norm(cocycle, system, point, n):
    """Unrenormalized product; cross-check for small n only."""
    prod = np.eye(cocycle.dimension)
    state = point
    for j in range(n):
        prod = cocycle.matrix(state) @ prod
        if j < n - 1:
            state = iterate(system, state, 1)
    return math.log(spectral_norm(prod))


@dataclass(frozen=True)
class CocycleLogNorm:
    cocycle: object
    system: object

    def series(self, point, horizon):
        return log_norm_series(self.cocycle, self.system, point, horizon)

    def describe(self):
        return f"log_norm[{self.cocycle.describe()}]"


@dataclass(frozen=True)
class AdditiveFromObservable:
    """phi_n = Birkhoff sum of an observable; sub-additivity is equality."""

    observable: Observable
    system: object

    def series(self, point, horizon):
        from .birkhoff import psi_series

        psi = psi_series(self.system, self.observable, point, horizon)
        return psi * np.arange(1, horizon + 1, dtype=np.float64)

    def describe(self):
        return f"additive[{self.observable.id}]"


@dataclass(frozen=True)
class NegLogBallMeasure:
    """phi_n = -log mu(B_n(x, 1/2)) over a shift; the dynamical ball at
    radius 1/2 is exactly the length-n cylinder."""

    measure: object
    system: object

    def series(self, point, horizon):
        return -self.measure.log_cylinder_series(point, horizon)

    def describe(self):
        return f"neg_log_ball[{self.measure.describe()}]"


def subadditive_value(spec, point, n):
    """phi_n(x)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return float(spec.series(point, n)[-1])


def m_phi_estimate(spec, point, upto):
    """min over 1 <= n <= N of phi_n(x) / n; nonincreasing in N."""
    if upto < 1:
        raise DomainError("N must be >= 1")
    phi = spec.series(point, upto)
    return float((phi / np.arange(1, upto + 1, dtype=np.float64)).min())


@dataclass(frozen=True)
class LyapunovGap:
    point_descriptor: str
    tail_start: int
    horizon: int
    lower: float
    upper: float

    @property
    def gap(self):
        return self.upper - self.lower


def lyapunov_gap(cocycle, system, point, tail_start, horizon) -> LyapunovGap:
    """Tail min/max of (1/n) log ||A^n(x)|| over [N_tail, H]."""
    if not 1 <= tail_start <= horizon:
        raise DomainError("need 1 <= N_tail <= H")
    series = log_norm_series(cocycle, system, point, horizon)
    n = np.arange(1, horizon + 1, dtype=np.float64)
    tail = (series / n)[tail_start - 1:]
    descr = point.describe() if hasattr(point, "describe") else repr(point)
    return LyapunovGap(
        point_descriptor=descr,
        tail_start=tail_start,
        horizon=horizon,
        lower=float(tail.min()),
        upper=float(tail.max()),
    )


@dataclass(frozen=True)
class FirstIntegralReport:
    deviation: float
    envelope: float
    holds: bool
    m_at_x: float
    m_at_fx: float


def first_integral_deviation(cocycle, system, point, upto) -> FirstIntegralReport:
    """m(x, N) - m(f(x), N-1) against the (sup + |min-side|) / N envelope.

    The envelope is a finite-scale surrogate, not a theorem; the report
    says whether it held."""
    if upto < 2:
        raise DomainError("N must be >= 2")
    spec = CocycleLogNorm(cocycle, system)
    m_x = m_phi_estimate(spec, point, upto)
    m_fx = m_phi_estimate(spec, iterate(system, point, 1), upto - 1)
    envelope = (cocycle.sup_log_norm() + abs(math.log(cocycle.min_inv_norm()))) / upto
    dev = m_x - m_fx
    return FirstIntegralReport(
        deviation=dev,
        envelope=envelope,
        holds=dev <= envelope,
        m_at_x=m_x,
        m_at_fx=m_fx,
    )


COCYCLE_KINDS = {
    "constant_diag": ConstantDiag,
    "symbol_diag": SymbolDiag,
    "rotation_matrix": RotationMatrix,
    "schrodinger": Schrodinger,
}
