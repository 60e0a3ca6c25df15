from .bce import BceState, BindingCache, BindingCacheEntry, DeregUnknownBinding, Pba, Pbu, lma_process_pbu
from .buffer import Packet, PacketBuffer, buffer_release_on_una
from .entities import EntityId, HandoverContext, HoFlag, MnProfile, Role
from .network import Network
from .schemes import (
    CommitRejected,
    HandoverError,
    HandoverReject,
    NoCandidate,
    UnknownPreviousMag,
    run_fast_handover_mih,
    run_fpmip_predictive,
    run_fpmip_reactive,
    run_proposed,
    run_scheme,
    run_standard,
)
