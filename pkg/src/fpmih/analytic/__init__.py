from .catalog import DEFAULT_CATALOG, Catalog, MessageCatalogEntry, UnknownMessage, message_size
from .cost import SCHEME_TERMS, CostBreakdown, per_handover_cost, retx_factor, total_cost
from .delay import (
    TUNNEL_HEADER,
    frame_delay,
    handover_delay,
    outcome_mass,
    p_ij,
    packet_delay_wd,
    packet_delay_wl,
)
from .mobility import epoch_length, epoch_time, expected_crossings, handover_rate

__all__ = [
    "Catalog",
    "CostBreakdown",
    "DEFAULT_CATALOG",
    "MessageCatalogEntry",
    "SCHEME_TERMS",
    "TUNNEL_HEADER",
    "UnknownMessage",
    "epoch_length",
    "epoch_time",
    "expected_crossings",
    "frame_delay",
    "handover_delay",
    "handover_rate",
    "message_size",
    "outcome_mass",
    "p_ij",
    "packet_delay_wd",
    "packet_delay_wl",
    "per_handover_cost",
    "retx_factor",
    "total_cost",
]
