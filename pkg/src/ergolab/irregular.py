"""Constructive irregular points on shift spaces.

The greedy block construction alternates between two periodic target
patterns, switching whenever the global running frequency of symbol 1
enters the current tolerance of the active target, and tightening the
tolerance after each full alpha -> beta cycle. The emitted prefix is the
brute-force witness used by the oscillation and Lyapunov-gap probes.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .points import BlockSchedule, PrefixWord
from .systems import FullShift


def build_irregular_word(system: FullShift, schedule: BlockSchedule) -> PrefixWord:
    """Greedy alternating-block word; returns the prefix with its realized
    switch positions in meta["switches"]."""
    if not isinstance(system, FullShift):
        raise DomainError("irregular words are built over the full shift")
    a = system.alphabet
    alpha_w, beta_w = schedule.alpha_word, schedule.beta_word
    if alpha_w.alphabet != a or beta_w.alphabet != a:
        raise DomainError("target words must live over the system's alphabet")
    alpha_t = float(alpha_w.symbol_frequency(1))
    beta_t = float(beta_w.symbol_frequency(1))
    if alpha_t == beta_t:
        raise DomainError("targets must have distinct frequencies of symbol 1")

    cap = schedule.horizon_cap
    symbols = np.empty(cap, dtype=np.int64)
    switches = []
    ones = 0
    k = 1
    on_alpha = True
    block_pos = 0
    for n in range(1, cap + 1):
        pattern = alpha_w if on_alpha else beta_w
        s = pattern[block_pos]
        symbols[n - 1] = s
        ones += 1 if s == 1 else 0
        block_pos += 1
        target = alpha_t if on_alpha else beta_t
        if abs(ones / n - target) <= schedule.delta(k):
            switches.append(n)
            if not on_alpha:
                k += 1
            on_alpha = not on_alpha
            block_pos = 0
    if len(switches) < 2:
        raise DomainError(
            f"horizon cap {cap} too small to complete one alpha->beta cycle"
        )
    return PrefixWord(
        symbols,
        alphabet=a,
        generator="irregular-greedy",
        meta={
            "switches": tuple(switches),
            "alpha_target": alpha_t,
            "beta_target": beta_t,
            "cycles_completed": k - 1,
            "last_delta": schedule.delta(max(k - 1, 1)),
        },
    )
