import numpy as np
import pytest

import ergolab as eg

GOLDEN = (5.0 ** 0.5 - 1.0) / 2.0


@pytest.fixture(scope="session")
def shift():
    return eg.FullShift(2)


@pytest.fixture(scope="session")
def rotation():
    return eg.Rotation(GOLDEN)


@pytest.fixture(scope="session")
def standard_schedule():
    return eg.BlockSchedule(
        alpha_word=eg.SymbolicWord((), (0,), 2),
        beta_word=eg.SymbolicWord((), (1,), 2),
        deltas=tuple(1.0 / (k + 1) for k in range(1, 64)),
        horizon_cap=1 << 14,
    )


@pytest.fixture(scope="session")
def irregular_word(shift, standard_schedule):
    return eg.build_irregular_word(shift, standard_schedule)


@pytest.fixture(scope="session")
def irregular_word_64k(shift):
    schedule = eg.BlockSchedule(
        alpha_word=eg.SymbolicWord((), (0,), 2),
        beta_word=eg.SymbolicWord((), (1,), 2),
        deltas=tuple(1.0 / (k + 1) for k in range(1, 64)),
        horizon_cap=1 << 16,
    )
    return eg.build_irregular_word(shift, schedule)
