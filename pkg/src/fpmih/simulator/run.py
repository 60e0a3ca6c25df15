import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields

from ..params import DomainError, Scheme
from .scenario import ConfigInvalid, Scenario
from .transcript import signaling_tally


@dataclass(frozen=True)
class MetricsRecord:
    scheme: str
    mode: str
    seed: int
    handover_delay_ms: float
    packets_generated: int
    packets_lost: int
    packets_buffered: int
    packets_duplicated_suppressed: int
    signaling_wireless: int  # octet*hops over the air
    signaling_wired: int  # octet*hops over wired links
    transcript_len: int

    @classmethod
    def header(cls):
        return [f.name for f in fields(cls)]

    def row(self):
        out = []
        for v in astuple(self):
            out.append(f"{v:.6f}" if isinstance(v, float) else str(v))
        return out


@dataclass
class RunResult:
    metrics: MetricsRecord
    transcript: list
    network: object  # protocol.network.Network


def run_scenario(scenario: Scenario) -> RunResult:
    try:
        scenario.validate()
    except DomainError as exc:
        raise ConfigInvalid(str(exc)) from exc
    # the protocol layer imports simulator pieces, so bind it late
    from ..protocol.network import Network
    from ..protocol.schemes import run_scheme

    net = Network(scenario)
    transcript = run_scheme(net, scenario.scheme)
    wireless, wired = signaling_tally(transcript, scenario.topology)
    metrics = MetricsRecord(
        scheme=Scheme(scenario.scheme).value,
        mode=scenario.mode,
        seed=scenario.seed,
        handover_delay_ms=net.handover_delay,
        packets_generated=net.generated,
        packets_lost=net.lost,
        packets_buffered=net.buffered_delivered,
        packets_duplicated_suppressed=net.duplicates,
        signaling_wireless=wireless,
        signaling_wired=wired,
        transcript_len=len(transcript),
    )
    return RunResult(metrics, transcript, net)


def collect_sweep(scenarios, workers=None) -> list:
    """One MetricsRecord per scenario, in input order.

    Invalid scenarios are reported together in a single ConfigInvalid.
    """
    scenarios = list(scenarios)
    if not scenarios:
        raise ConfigInvalid("sweep needs at least one scenario")
    problems = []
    for i, sc in enumerate(scenarios):
        try:
            sc.validate()
        except ConfigInvalid as exc:
            problems += [f"scenario {i}: {p}" for p in exc.problems]
    if problems:
        raise ConfigInvalid(problems)
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return [r.metrics for r in pool.map(run_scenario, scenarios)]
    return [run_scenario(sc).metrics for sc in scenarios]


def metrics_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(MetricsRecord.header())
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()
