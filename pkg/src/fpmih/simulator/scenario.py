from dataclasses import dataclass, field, fields

from ..params import CostParams, DelayParams, DomainError, Scheme, Topology


class ConfigInvalid(ValueError):
    """Raised with one diagnostic per offending field."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class Scenario:
    scheme: Scheme = Scheme.PROPOSED
    topology: Topology = field(default_factory=Topology)
    delay: DelayParams = field(default_factory=DelayParams)
    cost: CostParams = field(default_factory=CostParams)
    cbr_interval: float = 10.0  # ms between downlink packets
    seed: int = 0
    mode: str = "deterministic"
    buffer_capacity: int = 256
    commit_status: int = 0  # status the target MAG answers the commit request with
    hack_status: int = 0  # HAck code answered by the MAG receiving HI(P)
    candidate_ok: tuple = ()  # per-candidate resource availability; empty means all
    forward: bool = True  # FPMIPv6 'F' flag
    old_ap: str = "PoA1"  # previous AP reported after a reactive attach
    t_trigger: float = 400.0  # ms; handover preparation starts here
    tail: float = 400.0  # ms of traffic after the handover completes
    sizes: tuple = ()  # ((abbrev, octets), ...) overriding catalog sizes

    def validate(self):
        problems = []
        try:
            Scheme(self.scheme)
        except ValueError:
            problems.append(f"scheme: unknown scheme {self.scheme!r}")
        if self.mode not in ("deterministic", "sampled"):
            problems.append(f"mode: must be deterministic or sampled, got {self.mode!r}")
        if not self.cbr_interval > 0:
            problems.append("cbr_interval: must be > 0")
        if not 0 <= self.seed < 2**64:
            problems.append("seed: must be an unsigned 64-bit integer")
        if self.buffer_capacity < 1:
            problems.append("buffer_capacity: must be >= 1")
        if not 0 <= self.commit_status <= 255:
            problems.append("commit_status: must lie in 0..255")
        if not 0 <= self.hack_status <= 255:
            problems.append("hack_status: must lie in 0..255")
        if self.candidate_ok and len(self.candidate_ok) != self.cost.m:
            problems.append(
                f"candidate_ok: {len(self.candidate_ok)} entries for m={self.cost.m} candidates"
            )
        if self.t_trigger < 0 or self.tail < 0:
            problems.append("t_trigger/tail: must be >= 0")
        for abbrev, octets in self.sizes:
            if octets <= 0:
                problems.append(f"size.{abbrev}: must be > 0")
        if problems:
            raise ConfigInvalid(problems)
        return self

    def replace(self, **changes):
        from dataclasses import replace

        return replace(self, **changes)


def scenario_fields():
    return [f.name for f in fields(Scenario)]


__all__ = ["ConfigInvalid", "DomainError", "Scenario", "scenario_fields"]
