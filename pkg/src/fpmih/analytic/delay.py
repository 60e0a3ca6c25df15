"""Wireless/wired transport delay and per-scheme handover delay (ms)."""

import math

from ..params import DelayParams, DomainError, Topology
from .catalog import DEFAULT_CATALOG, Catalog

TUNNEL_HEADER = 40  # octets added to data packets replayed from a MAG buffer


def p_ij(rho_f: float, i: int, j: int) -> float:
    """Probability that a frame needs ``i`` ARQ rounds and ``j`` slots in the last one."""
    if i < 1 or not 1 <= j <= i:
        raise DomainError(f"need i >= 1 and 1 <= j <= i, got i={i} j={j}")
    if not 0 <= rho_f < 1:
        raise DomainError("rho_f must lie in [0, 1)")
    if rho_f == 0:
        return 0.0
    return rho_f * (1 - rho_f) ** 2 * ((2 - rho_f) * rho_f) ** ((i * i - i) // 2 + j - 1)


def retransmission_outcomes(params: DelayParams):
    """List of (probability, delay) for every ARQ outcome, direct success first."""
    out = [(1 - params.rho_f, params.D_wl)]
    for i in range(1, params.retx_limit + 1):
        for j in range(1, i + 1):
            out.append((p_ij(params.rho_f, i, j), 2 * i * params.D_wl + 2 * (j - 1) * params.tau))
    return out


def outcome_mass(params: DelayParams) -> float:
    return math.fsum(p for p, _ in retransmission_outcomes(params))


def frame_delay(params: DelayParams) -> float:
    return math.fsum(p * d for p, d in retransmission_outcomes(params))


def frames(L_p: int, L_f: int) -> int:
    if L_p <= 0:
        raise DomainError("packet size must be > 0")
    return -(-L_p // L_f)


def packet_delay_wl(L_p: int, params: DelayParams) -> float:
    k = frames(L_p, params.L_f)
    return frame_delay(params) + (k - 1) * params.tau


def packet_delay_wd(L_p: int, h: int, params: DelayParams) -> float:
    if L_p <= 0 or h <= 0:
        raise DomainError("wired delay needs L_p > 0 and h > 0")
    return L_p * h / params.bw_wired * 1000.0 + params.d_wired


def handover_delay(
    family: str,
    params: DelayParams = DelayParams(),
    catalog: Catalog = DEFAULT_CATALOG,
    topology: Topology = Topology(),
) -> float:
    """Handover delay for ``family`` in {'standard', 'fast', 'proposed'}."""
    family = getattr(family, "family", None) or family
    wl = lambda size: packet_delay_wl(size, params)
    if family == "standard":
        h = topology.h_mag_lma
        return (
            wl(catalog.size("M_RS"))
            + wl(catalog.size("M_RA"))
            + packet_delay_wd(catalog.size("M_PBU"), h, params)
            + packet_delay_wd(catalog.size("M_PBA"), h, params)
            + wl(params.L_D)
            + params.t_l2
        )
    if family == "fast":
        return params.t_l2 + wl(catalog.size("M_RS")) + wl(params.L_D + TUNNEL_HEADER)
    if family == "proposed":
        return params.t_l2 + wl(catalog.size("M_UNA")) + wl(params.L_D + TUNNEL_HEADER)
    raise DomainError(f"no closed-form delay for {family!r}")
