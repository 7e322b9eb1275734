import math

import numpy as np
import pytest

import ergolab as eg
from ergolab.errors import DomainError

LOG2 = math.log(2.0)


class TestBernoulliMeasure:
    def test_weights_validated(self):
        with pytest.raises(DomainError):
            eg.BernoulliMeasure((0.5, 0.6))
        with pytest.raises(DomainError):
            eg.BernoulliMeasure((1.0, 0.0))
        with pytest.raises(DomainError):
            eg.BernoulliMeasure((1.0,))

    def test_cylinder_is_product(self):
        mu = eg.BernoulliMeasure((0.3, 0.7))
        w = eg.SymbolicWord((), (0, 1, 1), 2)
        got = mu.log_cylinder(w, 6)
        want = math.log(0.3 ** 2 * 0.7 ** 4)
        assert got == pytest.approx(want, rel=1e-13)

    def test_uniform_series_exact(self):
        mu = eg.BernoulliMeasure((0.5, 0.5))
        w = eg.SymbolicWord((1,), (0, 1), 2)
        series = mu.log_cylinder_series(w, 64)
        assert np.array_equal(series, math.log(0.5) * np.arange(1, 65))


class TestMarkovMeasure:
    def test_stationary_solved_exactly(self):
        mu = eg.MarkovMeasure(((0.9, 0.1), (0.2, 0.8)))
        pi = np.array(mu.stationary)
        p = np.array(mu.transition)
        assert np.abs(pi @ p - pi).max() <= 1e-12
        assert pi.sum() == pytest.approx(1.0, abs=1e-12)
        assert pi[0] == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_cylinder_uses_transitions(self):
        mu = eg.MarkovMeasure(((0.9, 0.1), (0.2, 0.8)))
        w = eg.SymbolicWord((), (0, 1), 2)  # 0101...
        got = mu.log_cylinder(w, 4)
        want = math.log(mu.stationary[0] * 0.1 * 0.2 * 0.1)
        assert got == pytest.approx(want, rel=1e-12)

    def test_cylinder_masses_sum_to_one(self):
        mu = eg.MarkovMeasure(((0.9, 0.1), (0.2, 0.8)))
        total = 0.0
        for j in range(16):
            digits = [(j >> (3 - i)) & 1 for i in range(4)]
            w = eg.SymbolicWord(tuple(digits), (0,), 2)
            total += math.exp(mu.log_cylinder(w, 4))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_validation(self):
        with pytest.raises(DomainError):
            eg.MarkovMeasure(((0.9, 0.2), (0.2, 0.8)))  # rows not stochastic
        with pytest.raises(DomainError):
            eg.MarkovMeasure(((1.0, 0.0), (0.2, 0.8)))  # zero entry


class TestBrinKatok:
    def test_uniform_constant_log2_every_n(self, shift):
        mu = eg.BernoulliMeasure((0.5, 0.5))
        tr = eg.brin_katok_trace(shift, mu, eg.SymbolicWord((1,), (0, 1), 2), 500)
        assert np.all(tr.values == LOG2)  # full double precision, no tolerance

    def test_zero_word_gives_minus_log_p0(self, shift):
        mu = eg.BernoulliMeasure((0.3, 0.7))
        tr = eg.brin_katok_trace(shift, mu, eg.SymbolicWord((), (0,), 2), 100)
        assert tr.value_at(100) == pytest.approx(-math.log(0.3), rel=1e-12)

    def test_irregular_word_diverges(self, shift, irregular_word):
        mu = eg.BernoulliMeasure((0.3, 0.7))
        tr = eg.brin_katok_trace(shift, mu, irregular_word, 1 << 14)
        lo, hi = tr.tail_bounds(1)
        # block oracle: value_n = (n_0 (-log .3) + n_1 (-log .7)) / n
        ones = np.cumsum(irregular_word.prefix(1 << 14) == 1)
        n = np.arange(1, (1 << 14) + 1)
        oracle = (ones * (-math.log(0.7)) + (n - ones) * (-math.log(0.3))) / n
        assert np.abs(tr.values - oracle).max() < 1e-12
        assert hi - lo > 0.5  # no Brin-Katok limit along this word

    def test_alphabet_mismatch_rejected(self, shift):
        mu = eg.BernoulliMeasure((0.2, 0.3, 0.5))
        with pytest.raises(DomainError):
            eg.brin_katok_trace(shift, mu, eg.SymbolicWord((), (0,), 3), 10)

    def test_non_shift_system_rejected(self):
        mu = eg.BernoulliMeasure((0.5, 0.5))
        with pytest.raises(DomainError):
            eg.brin_katok_trace(eg.Doubling(2), mu, eg.circle_point(0.5), 10)


class TestWeakGibbs:
    def test_matching_potential_ratio_one(self, shift):
        mu = eg.BernoulliMeasure((0.3, 0.7))
        pot = eg.symbol_table((math.log(0.3), math.log(0.7)), "log-weights")
        spec = eg.AdditiveFromObservable(pot, shift)
        for w in (eg.SymbolicWord((), (0, 1), 2), eg.SymbolicWord((1,), (0,), 2)):
            for n in (1, 7, 100, 1000):
                r = eg.weak_gibbs_ratio(shift, mu, spec, 0.0, w, n)
                assert abs(r - 1.0) <= 1e-12

    def test_uniform_constant_potential(self, shift):
        mu = eg.BernoulliMeasure((0.5, 0.5))
        spec = eg.AdditiveFromObservable(eg.constant(-LOG2), shift)
        r = eg.weak_gibbs_ratio(shift, mu, spec, 0.0,
                                eg.SymbolicWord((), (0, 1), 2), 50)
        assert r == pytest.approx(1.0, abs=1e-12)

    def test_wrong_pressure_flagged(self, shift):
        mu = eg.BernoulliMeasure((0.5, 0.5))
        spec = eg.AdditiveFromObservable(eg.constant(-LOG2), shift)
        w = eg.SymbolicWord((), (0, 1), 2)
        r = eg.weak_gibbs_ratio(shift, mu, spec, 0.1, w, 50)
        assert math.log(r) / 50 == pytest.approx(0.1, abs=1e-12)
        rep = eg.weak_gibbs_check(shift, mu, spec, 0.1, [w], 100, 1e-9)
        assert not rep.is_weak_gibbs
        assert rep.max_rate == pytest.approx(0.1, abs=1e-12)

    def test_check_passes_matching_family(self, shift, irregular_word):
        mu = eg.BernoulliMeasure((0.3, 0.7))
        pot = eg.symbol_table((math.log(0.3), math.log(0.7)), "log-weights")
        spec = eg.AdditiveFromObservable(pot, shift)
        rep = eg.weak_gibbs_check(shift, mu, spec, 0.0,
                                  [irregular_word, eg.SymbolicWord((), (0, 1), 2)],
                                  1000, 1e-12)
        assert rep.is_weak_gibbs
