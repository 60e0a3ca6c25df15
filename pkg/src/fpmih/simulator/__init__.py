from .engine import EventLoop
from .links import LinkModel, sample_frame_delay
from .run import MetricsRecord, RunResult, collect_sweep, metrics_csv, run_scenario
from .scenario import ConfigInvalid, Scenario
from .transcript import Transcript, TranscriptEvent, signaling_by_group, signaling_tally

__all__ = [
    "ConfigInvalid",
    "EventLoop",
    "LinkModel",
    "MetricsRecord",
    "RunResult",
    "Scenario",
    "Transcript",
    "TranscriptEvent",
    "collect_sweep",
    "metrics_csv",
    "run_scenario",
    "sample_frame_delay",
    "signaling_by_group",
    "signaling_tally",
]
