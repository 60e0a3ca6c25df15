"""Cross-check the simulator against the closed-form model.

For each scheme that has a closed form, one deterministic run is compared
twice: its handover delay against the analytic delay (within DELAY_TOL ms),
and its transcript octet*hop tallies against the per-handover cost terms
(exactly, with unit costs and the retransmission factor left out). The
analytic side always uses the built-in message sizes, so a run configured
with altered sizes shows up as a mismatch.
"""

import math
from dataclasses import dataclass

from .analytic.catalog import DEFAULT_CATALOG
from .analytic.cost import GROUP_HOPS, group_octets
from .analytic.delay import handover_delay
from .config import RunConfig
from .params import Scheme
from .simulator.run import run_scenario
from .simulator.transcript import signaling_tally

DELAY_TOL = 0.1  # ms
CHECKED = (Scheme.STANDARD_MOBILE, Scheme.STANDARD_NETWORK, Scheme.FAST_MIH, Scheme.PROPOSED)


@dataclass(frozen=True)
class Check:
    scheme: str
    name: str
    simulated: object
    expected: object
    passed: bool

    def line(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.scheme} {self.name}: simulated={self.simulated} expected={self.expected}"


def expected_tally(family, cfg: RunConfig):
    """(wireless, wired) octet*hops from the cost terms, unit costs 1."""
    octets = group_octets(family, cfg.cost, DEFAULT_CATALOG)
    topo = cfg.topology
    hops = {g: getattr(topo, attr) * octets[g] for g, attr in GROUP_HOPS.items()}
    return hops["air"], hops["mag_mag"] + hops["mag_miis"] + hops["mag_lma"]


def run_checks(cfg: RunConfig = RunConfig(), schemes=CHECKED):
    checks = []
    for scheme in schemes:
        sc = cfg.scenario(scheme=scheme, mode="deterministic")
        res = run_scenario(sc)
        sim_delay = res.metrics.handover_delay_ms
        want_delay = handover_delay(scheme.family, sc.delay, DEFAULT_CATALOG, sc.topology)
        ok = not math.isnan(sim_delay) and abs(sim_delay - want_delay) <= DELAY_TOL
        checks.append(Check(scheme.value, "handover_delay_ms", f"{sim_delay:.4f}",
                            f"{want_delay:.4f}", ok))
        got = signaling_tally(res.transcript, sc.topology)
        want = expected_tally(scheme.family, cfg)
        checks.append(Check(scheme.value, "signaling_octet_hops(wireless,wired)",
                            f"{got[0]},{got[1]}", f"{want[0]},{want[1]}", tuple(got) == want))
    return checks


def report(checks):
    return "\n".join(c.line() for c in checks) + "\n"
