"""Finite-horizon probes of the category machinery: Lambda_N membership,
empty-interior escaper searches over covers, E_N(mu) sets, and the
dense-sample criterion checker with its |alpha - beta| / 6 tolerance
discipline.

Membership at a finite horizon is one-sided: a violated oscillation bound
is certain, a satisfied one is only "in Lambda_N up to horizon H".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import engine
from .birkhoff import DenseTail, tail_bounds, trace
from .errors import DomainError, HorizonError
from .observables import Observable
from .points import PrefixWord, SymbolicWord
from .samplers import DenseSampler, make_dense_sample
from .systems import FullShift


@dataclass(frozen=True)
class LambdaQuery:
    start: int
    epsilon: float
    horizon: int

    def __post_init__(self):
        if self.epsilon <= 0:
            raise DomainError("epsilon must be positive")
        if not 1 <= self.start <= self.horizon:
            raise DomainError("need 1 <= N <= H")


@dataclass(frozen=True)
class IntervalCell:
    lo: float
    hi: float


@dataclass(frozen=True)
class CylinderCell:
    word: tuple


@dataclass(frozen=True)
class CellResult:
    index: int
    cell: object
    status: str  # "escaper" or "exhausted"
    samples_used: int
    escaper: object = None  # sampled state (float x or symbol tuple)
    oscillation: float = None


@dataclass(frozen=True)
class LambdaReport:
    cover_description: str
    query: LambdaQuery
    budget: int
    seed: int
    system_id: str
    observable_id: str
    cells: tuple
    escaper_fraction: float


def dyadic_cover(resolution):
    """The circle split into `resolution` equal cells."""
    if resolution < 1:
        raise DomainError("cover resolution must be >= 1")
    return [IntervalCell(i / resolution, (i + 1) / resolution) for i in range(resolution)]


def cylinder_cover(alphabet, length):
    """All cylinders of the given length over the alphabet."""
    cells = []
    for j in range(alphabet ** length):
        digits = []
        v = j
        for _ in range(length):
            digits.append(v % alphabet)
            v //= alphabet
        digits.reverse()
        cells.append(CylinderCell(tuple(digits)))
    return cells


def lambda_membership(tr, query: LambdaQuery):
    """True iff |psi_n - psi_m| <= eps for all N <= m, n <= H; necessary
    for true Lambda_N membership, reported "up to horizon H"."""
    if not tr.dense_tail or tr.tail_start > query.start:
        raise HorizonError("need a dense-tail trace covering [N, H]")
    if tr.horizon < query.horizon:
        raise HorizonError(
            f"trace horizon {tr.horizon} below query horizon {query.horizon}"
        )
    mask = (tr.checkpoints >= query.start) & (tr.checkpoints <= query.horizon)
    vals = tr.values[mask]
    return float(vals.max() - vals.min()) <= query.epsilon


def _cell_rng(seed, index):
    return np.random.Generator(
        np.random.Philox(key=np.array([seed, index], dtype=np.uint64))
    )


def _probe_euclidean(system, observable, cover, query, budget, seed):
    sys_code, sparams = engine.system_kernel_args(system)
    obs_code, oparams, kx, ky = engine.observable_kernel_args(observable)
    n_cells = len(cover)
    # one uniform batch per cell up front: results do not depend on how
    # many rounds the search actually needs
    samples = np.empty((n_cells, budget))
    for i, cell in enumerate(cover):
        u = _cell_rng(seed, i).random(budget)
        samples[i] = cell.lo + (cell.hi - cell.lo) * u
    results = [None] * n_cells
    active = list(range(n_cells))
    for r in range(budget):
        if not active:
            break
        xs = np.ascontiguousarray(samples[active, r])
        ys = np.zeros_like(xs)
        lo, hi, escape = engine.orbit_tail_stats(
            sys_code, sparams, obs_code, oparams, kx, ky,
            xs, ys, query.start, query.horizon,
        )
        if (escape >= 0).any():
            j = int(np.argmax(escape >= 0))
            raise DomainError(
                f"orbit escaped at step {int(escape[j])} while probing cell "
                f"{active[j]}"
            )
        osc = hi - lo
        still = []
        for j, i in enumerate(active):
            if osc[j] > query.epsilon:
                results[i] = CellResult(
                    index=i, cell=cover[i], status="escaper",
                    samples_used=r + 1, escaper=float(xs[j]),
                    oscillation=float(osc[j]),
                )
            else:
                still.append(i)
        active = still
    for i in active:
        results[i] = CellResult(
            index=i, cell=cover[i], status="exhausted", samples_used=budget
        )
    return results


def _probe_shift(system, observable, cover, query, budget, seed):
    results = []
    for i, cell in enumerate(cover):
        rng = _cell_rng(seed, i)
        found = None
        used = 0
        for r in range(budget):
            used = r + 1
            tail = rng.integers(0, system.alphabet, size=query.horizon)
            word = PrefixWord(
                np.concatenate([np.array(cell.word, dtype=np.int64), tail]),
                system.alphabet, "probe-sample",
            )
            tr = trace(system, observable, word, query.horizon,
                       DenseTail(query.start))
            tb = tail_bounds(tr, query.start)
            osc = tb.upper - tb.lower
            if osc > query.epsilon:
                found = CellResult(
                    index=i, cell=cell, status="escaper", samples_used=used,
                    escaper=tuple(int(s) for s in word.symbols), oscillation=osc,
                )
                break
        results.append(
            found
            or CellResult(index=i, cell=cell, status="exhausted", samples_used=used)
        )
    return results


def escaper_probe(system, observable, cover, query: LambdaQuery, budget, seed):
    """Search every cell of the cover for a Lambda_N escaper.

    Escaper fraction 1.0 across refining covers is the empirical signature
    of empty interior; the category statement itself is never asserted.
    """
    if not cover:
        raise DomainError("cover must be nonempty")
    if budget < 1:
        raise DomainError("per-cell budget must be >= 1")
    if isinstance(system, FullShift):
        if not all(isinstance(c, CylinderCell) for c in cover):
            raise DomainError("full-shift probes need cylinder cells")
        results = _probe_shift(system, observable, cover, query, budget, seed)
        descr = f"{len(cover)} cylinders of length {len(cover[0].word)}"
    else:
        if not all(isinstance(c, IntervalCell) for c in cover):
            raise DomainError("Euclidean probes need interval cells")
        if engine.system_kernel_args(system) is None:
            raise DomainError(f"no orbit engine for {system.describe()}")
        results = _probe_euclidean(system, observable, cover, query, budget, seed)
        width = cover[0].hi - cover[0].lo
        descr = f"{len(cover)} intervals of width {width}"
    n_found = sum(1 for c in results if c.status == "escaper")
    return LambdaReport(
        cover_description=descr,
        query=query,
        budget=budget,
        seed=seed,
        system_id=system.describe(),
        observable_id=observable.id,
        cells=tuple(results),
        escaper_fraction=n_found / len(results),
    )


def replay_escaper(system, observable, report: LambdaReport, cell_index):
    """Re-trace a reported escaper; returns (lambda_member, oscillation).

    The orbit is seed-independent given the stored state, so this must
    reproduce oscillation > epsilon exactly."""
    cell = report.cells[cell_index]
    if cell.status != "escaper":
        raise DomainError(f"cell {cell_index} holds no escaper")
    q = report.query
    if isinstance(system, FullShift):
        point = PrefixWord(np.array(cell.escaper, dtype=np.int64),
                           system.alphabet, "replay")
    else:
        from .points import circle_point

        point = circle_point(float(cell.escaper))
    tr = trace(system, observable, point, q.horizon, DenseTail(q.start))
    member = lambda_membership(tr, q)
    tb = tail_bounds(tr, q.start)
    return member, tb.upper - tb.lower


def e_set_membership(tr, target, start):
    """x in E_N(mu) surrogate: some n in (N, H] has |psi_n - target| < 1/N."""
    if start < 1:
        raise DomainError("N must be >= 1")
    if not tr.dense_tail or tr.tail_start > start + 1:
        raise HorizonError("need a dense-tail trace covering (N, H]")
    mask = tr.checkpoints > start
    if not mask.any():
        raise HorizonError("trace horizon at or below N")
    return bool((np.abs(tr.values[mask] - target) < 1.0 / start).any())


@dataclass(frozen=True)
class CriterionVerdict:
    alpha_hat: float
    beta_hat: float
    dispersion_a: float
    dispersion_b: float
    epsilon: float
    verdict: str  # hypotheses-supported | inconclusive | refuted-at-horizon
    samples_a: tuple  # (point descriptor, tail-upper value)
    samples_b: tuple
    horizon: int
    tail_start: int


def criterion_check(system, observable, sampler_a: DenseSampler,
                    sampler_b: DenseSampler, count, horizon, tail_start=0):
    """Probe the two-dense-sets hypothesis: tail-upper values over both
    samples, their dispersions, and the epsilon = |gap| / 6 they imply."""
    if count < 2:
        raise DomainError("need at least 2 points per sample")
    n_tail = tail_start if tail_start > 0 else max(horizon // 2, 1)
    tables = []
    for sampler in (sampler_a, sampler_b):
        points = make_dense_sample(sampler, count)
        rows = []
        for p in points:
            tr = trace(system, observable, p, horizon, DenseTail(n_tail))
            tb = tail_bounds(tr, n_tail)
            rows.append((tr.point_descriptor, tb.upper))
        tables.append(rows)
    vals_a = np.array([v for _, v in tables[0]])
    vals_b = np.array([v for _, v in tables[1]])
    alpha_hat = float(vals_a.mean())
    beta_hat = float(vals_b.mean())
    disp_a = float(np.abs(vals_a - alpha_hat).max())
    disp_b = float(np.abs(vals_b - beta_hat).max())
    gap = abs(alpha_hat - beta_hat)
    eps = gap / 6.0
    if gap == 0.0:
        verdict = "refuted-at-horizon"
    elif disp_a < eps and disp_b < eps:
        verdict = "hypotheses-supported"
    else:
        verdict = "inconclusive"
    return CriterionVerdict(
        alpha_hat=alpha_hat,
        beta_hat=beta_hat,
        dispersion_a=disp_a,
        dispersion_b=disp_b,
        epsilon=eps,
        verdict=verdict,
        samples_a=tuple(tables[0]),
        samples_b=tuple(tables[1]),
        horizon=horizon,
        tail_start=n_tail,
    )
