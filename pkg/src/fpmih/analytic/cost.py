"""Per-handover signaling cost and cost per unit time.

Cost of a message is its size times the hops it crosses. Wireless messages
are additionally scaled by a retransmission factor derived from the
wireless failure probability, and each medium by its unit cost
(``B`` wireless, ``A`` wired).

Arithmetic is done in ``Fraction`` so the per-scheme sums are exact.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..params import CostParams, DomainError, MobilityParams, Topology
from .catalog import DEFAULT_CATALOG, Catalog
from .mobility import handover_rate

M = "m"  # multiplier placeholder: one pair per preferred PoA

# (abbreviation, multiplicity) per link group
SCHEME_TERMS = {
    "standard": {
        "air": [("M_3", 1), ("M_4", 1), ("M_5", 1), ("M_6", 1), ("M_15", 1), ("M_16", 1),
                ("M_RS", 1), ("M_RA", 1)],
        "mag_mag": [("M_7", M), ("M_8", M), ("M_9", 1), ("M_10", 1), ("M_13", 1), ("M_14", 1)],
        "mag_miis": [("M_3", 1), ("M_4", 1)],
        "mag_lma": [("M_17", 1), ("M_18", 1), ("M_PBU", 3), ("M_PBA", 3)],
    },
    "fast": {
        "air": [("M_1", 1), ("M_5", 1), ("M_6", 1), ("M_11", 1), ("M_12", 1), ("M_RS", 1),
                ("M_RA", 1)],
        "mag_mag": [("M_7", M), ("M_8", M), ("M_9", 1), ("M_10", 1), ("M_13", 1), ("M_14", 1),
                    ("M_HI", 1), ("M_HACK", 1)],
        "mag_miis": [("M_3", 1), ("M_4", 1)],
        "mag_lma": [("M_PBU", 3), ("M_PBA", 3)],
    },
    "proposed": {
        "air": [("M_1", 1), ("M_2", 1), ("M_5", 1), ("M_6", 1), ("M_11", 1), ("M_12", 1),
                ("M_UNA", 1)],
        "mag_mag": [("M_7", M), ("M_8", M), ("M_9e", 1), ("M_10e", 1), ("M_13", 1),
                    ("M_14", 1)],
        "mag_miis": [("M_3", 1), ("M_4", 1)],
        "mag_lma": [("M_PBU", 2), ("M_PBA", 2)],
    },
}

GROUP_HOPS = {
    "air": "h_mn_mag",
    "mag_mag": "h_mag_mag",
    "mag_miis": "h_mag_miis",
    "mag_lma": "h_mag_lma",
}


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def retx_factor(cost: CostParams) -> Fraction:
    p = _q(cost.p_f)
    if cost.retx_factor == "paper":
        return p / (1 - p)
    return 1 / (1 - p)


def term_multiset(family: str, m: int) -> dict:
    """{group: {abbrev: count}} with the ``m`` multiplier resolved."""
    out = {}
    for group, terms in SCHEME_TERMS[family].items():
        counts = {}
        for abbrev, mult in terms:
            counts[abbrev] = counts.get(abbrev, 0) + (m if mult == M else mult)
        out[group] = counts
    return out


def group_octets(family: str, cost: CostParams = CostParams(),
                 catalog: Catalog = DEFAULT_CATALOG) -> dict:
    """Sum of message sizes per link group (octets, before hops)."""
    if family not in SCHEME_TERMS:
        raise DomainError(f"no cost equation for {family!r}")
    return {
        group: sum(catalog.size(a, cost.n, cost.m) * c for a, c in counts.items())
        for group, counts in term_multiset(family, cost.m).items()
    }


@dataclass(frozen=True)
class CostBreakdown:
    family: str
    octets: dict  # group -> octets
    octet_hops: dict  # group -> octets * hops
    wireless: Fraction
    wired: Fraction

    @property
    def total(self) -> Fraction:
        return self.wireless + self.wired


def per_handover_cost(family, cost: CostParams = CostParams(), topology: Topology = Topology(),
                      catalog: Catalog = DEFAULT_CATALOG) -> CostBreakdown:
    family = getattr(family, "family", None) or family
    octets = group_octets(family, cost, catalog)
    hops = {g: getattr(topology, attr) * octets[g] for g, attr in GROUP_HOPS.items()}
    wireless = _q(cost.B) * retx_factor(cost) * hops["air"]
    wired = _q(cost.A) * (hops["mag_mag"] + hops["mag_miis"] + hops["mag_lma"])
    return CostBreakdown(family, octets, hops, wireless, wired)


def total_cost(family, cost: CostParams = CostParams(), mob: MobilityParams = MobilityParams(),
               topology: Topology = Topology(), catalog: Catalog = DEFAULT_CATALOG) -> float:
    """Signaling cost per second: handover rate times per-handover cost."""
    return handover_rate(mob) * float(per_handover_cost(family, cost, topology, catalog).total)
