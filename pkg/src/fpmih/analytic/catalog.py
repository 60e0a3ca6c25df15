"""Signaling message catalog: names, abbreviations and sizes in octets.

Sizes count protocol headers only (no outer IPv6 header). Three entries
grow with the number of neighbouring networks ``n`` and preferred PoAs
``m``.
"""

from dataclasses import dataclass
from typing import Callable, Optional


class UnknownMessage(KeyError):
    pass


@dataclass(frozen=True)
class MessageCatalogEntry:
    abbrev: str
    name: str
    service: str
    size: Optional[int] = None
    formula: Optional[Callable[[int, int], int]] = None
    formula_text: str = ""

    def size_for(self, n: int, m: int) -> int:
        if self.formula is not None:
            return self.formula(n, m)
        return self.size

    @property
    def is_constant(self) -> bool:
        return self.formula is None


_ROWS = [
    ("M_1", "MIH_Link_Going_Down", "Event service", 78),
    ("M_2", "MIH_Link_Up", "Event service", 95),
    ("M_3", "MIH_Get_Information_request", "Information service", 1500),
    ("M_4", "MIH_Get_Information_response", "Information service", 1500),
    ("M_5", "MIH_Net_HO_Candidate_Query_request", "Command service",
     (lambda n, m: 63 + 11 * n + 8 * m * n, "63+11*n+8*m*n")),
    ("M_6", "MIH_Net_HO_Candidate_Query_response", "Command service",
     (lambda n, m: 77 + 101 * m, "77+101*m")),
    ("M_7", "MIH_N2N_HO_Query_Resource_request", "Command service",
     (lambda n, m: 150 + 11 * m, "150+11*m")),
    ("M_8", "MIH_N2N_HO_Query_Resource_response", "Command service", 165),
    ("M_9", "MIH_N2N_HO_Commit_request", "Command service", 213),
    ("M_9e", "MIH_N2N_HO_Commit_request_ext", "Command service", 264),
    ("M_10", "MIH_N2N_HO_Commit_response", "Command service", 92),
    ("M_10e", "MIH_N2N_HO_Commit_response_ext", "Command service", 92),
    ("M_11", "MIH_Net_HO_Commit_request", "Command service", 122),
    ("M_12", "MIH_Net_HO_Commit_response", "Command service", 103),
    ("M_13", "MIH_N2N_HO_Complete_request", "Command service", 109),
    ("M_14", "MIH_N2N_HO_Complete_response", "Command service", 112),
    ("M_15", "MIH_MN_HO_Commit_request", "Command service", 75),
    ("M_16", "MIH_MN_HO_Commit_response", "Command service", 78),
    ("M_17", "AAA_Query", "Mobility management", 32),
    ("M_18", "AAA_Reply", "Mobility management", 60),
    ("M_HI", "HI", "Mobility management", 72),
    ("M_HACK", "HACK", "Mobility management", 32),
    ("M_PBU", "PBU", "Mobility management", 76),
    ("M_PBA", "PBA", "Mobility management", 52),
    ("M_RS", "RS", "Mobility management", 16),
    ("M_RA", "RA", "Mobility management", 64),
    ("M_UNA", "UNA", "Mobility management", 52),
]


def _build(rows):
    entries = []
    for abbrev, name, service, size in rows:
        if isinstance(size, tuple):
            fn, text = size
            entries.append(MessageCatalogEntry(abbrev, name, service, None, fn, text))
        else:
            entries.append(MessageCatalogEntry(abbrev, name, service, size))
    return entries


class Catalog:
    """Lookup by abbreviation (``M_PBU``) or by message name (``PBU``)."""

    def __init__(self, entries):
        self._by_abbrev = {e.abbrev: e for e in entries}
        self._by_name = {e.name: e for e in entries}

    def __iter__(self):
        return iter(self._by_abbrev.values())

    def __len__(self):
        return len(self._by_abbrev)

    def __contains__(self, key):
        return key in self._by_abbrev or key in self._by_name

    def entry(self, key: str) -> MessageCatalogEntry:
        e = self._by_abbrev.get(key) or self._by_name.get(key)
        if e is None:
            raise UnknownMessage(key)
        return e

    def size(self, key: str, n: int = 6, m: int = 6) -> int:
        return self.entry(key).size_for(n, m)

    def abbrev_of(self, name: str) -> str:
        return self.entry(name).abbrev

    def with_sizes(self, **overrides) -> "Catalog":
        """Copy with constant sizes replaced, e.g. ``with_sizes(M_PBU=77)``."""
        out = []
        for e in self:
            if e.abbrev in overrides:
                e = MessageCatalogEntry(e.abbrev, e.name, e.service, int(overrides[e.abbrev]))
            out.append(e)
        unknown = set(overrides) - {e.abbrev for e in self}
        if unknown:
            raise UnknownMessage(", ".join(sorted(unknown)))
        return Catalog(out)


DEFAULT_CATALOG = Catalog(_build(_ROWS))


def message_size(abbrev: str, n: int = 6, m: int = 6, catalog: Catalog = DEFAULT_CATALOG) -> int:
    return catalog.size(abbrev, n, m)
