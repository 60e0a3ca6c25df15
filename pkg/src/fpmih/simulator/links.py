"""Link delay models used by the event loop.

Deterministic mode uses expected delays. Sampled mode draws one ARQ
outcome per message from the same outcome distribution the expected
delay is built from, renormalised over the truncated retransmission range.
"""

from functools import lru_cache

import numpy as np

from ..analytic.delay import frames, packet_delay_wd, packet_delay_wl, retransmission_outcomes
from ..params import DelayParams


@lru_cache(maxsize=64)
def _outcome_table(params: DelayParams):
    outcomes = retransmission_outcomes(params)
    probs = np.array([p for p, _ in outcomes], dtype=float)
    delays = np.array([d for _, d in outcomes], dtype=float)
    cdf = np.cumsum(probs / probs.sum())
    cdf[-1] = 1.0
    return cdf, delays


def sample_frame_delay(params: DelayParams, rng: np.random.Generator, size=None):
    """Draw one-way frame delays (ms); scalar when ``size`` is None."""
    if params.rho_f == 0:
        if size is None:
            return float(params.D_wl)
        return np.full(size, float(params.D_wl))
    cdf, delays = _outcome_table(params)
    u = rng.random(size)
    idx = np.searchsorted(cdf, u, side="right")
    idx = np.minimum(idx, len(delays) - 1)
    if size is None:
        return float(delays[idx])
    return delays[idx]


class LinkModel:
    def __init__(self, params: DelayParams, mode="deterministic", rng=None, p_f=0.0):
        if mode not in ("deterministic", "sampled"):
            raise ValueError(f"unknown mode {mode!r}")
        self.params = params
        self.mode = mode
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self.p_f = p_f

    @property
    def sampled(self):
        return self.mode == "sampled"

    def wireless(self, size: int) -> float:
        if not self.sampled:
            return packet_delay_wl(size, self.params)
        k = frames(size, self.params.L_f)
        return sample_frame_delay(self.params, self.rng) + (k - 1) * self.params.tau

    def wired(self, size: int, hops: int) -> float:
        return packet_delay_wd(size, hops, self.params)

    def message_fails(self) -> bool:
        """Whole-message loss on the air interface; only drawn in sampled mode."""
        if not self.sampled or self.p_f <= 0:
            return False
        return bool(self.rng.random() < self.p_f)
