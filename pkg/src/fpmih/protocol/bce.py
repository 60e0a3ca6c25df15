"""LMA binding cache with transient (bicast) bindings."""

import copy
from dataclasses import dataclass, field
from enum import Enum


class DeregUnknownBinding(KeyError):
    pass


class BceState(str, Enum):
    ACTIVE = "Active"
    TRANSIENT_BICAST = "TransientBicast"


@dataclass
class BindingCacheEntry:
    mn_id: str
    hnps: tuple
    serving_mag: str
    state: BceState = BceState.ACTIVE
    bicast: tuple = ()  # (pmag, nmag) while in TRANSIENT_BICAST
    lifetime: float = 3600.0

    def destinations(self):
        if self.state is BceState.TRANSIENT_BICAST:
            return list(self.bicast)
        return [self.serving_mag]

    def __str__(self):
        if self.state is BceState.TRANSIENT_BICAST:
            return f"{self.mn_id}: TransientBicast({self.bicast[0]}, {self.bicast[1]})"
        return f"{self.mn_id}: Active({self.serving_mag})"


@dataclass(frozen=True)
class Pbu:
    mn_id: str
    mag: str
    transient: bool = False
    dereg: bool = False
    hnps: tuple = ()
    lifetime: float = 3600.0


@dataclass(frozen=True)
class Pba:
    mn_id: str
    mag: str
    status: int = 0
    transient: bool = False
    dereg: bool = False


@dataclass
class BindingCache:
    entries: dict = field(default_factory=dict)

    def get(self, mn_id):
        return self.entries.get(mn_id)

    def destinations(self, mn_id):
        entry = self.entries.get(mn_id)
        return entry.destinations() if entry else []

    def is_active_at(self, mn_id, mag) -> bool:
        entry = self.entries.get(mn_id)
        return entry is not None and entry.state is BceState.ACTIVE and entry.serving_mag == mag

    def process(self, pbu: Pbu) -> Pba:
        """Apply one PBU and return the acknowledgement."""
        entry = self.entries.get(pbu.mn_id)
        ack = Pba(pbu.mn_id, pbu.mag, 0, pbu.transient, pbu.dereg)

        if pbu.dereg:
            if entry is None:
                raise DeregUnknownBinding(pbu.mn_id)
            if entry.state is BceState.TRANSIENT_BICAST:
                if pbu.mag in entry.bicast:
                    survivor = [m for m in entry.bicast if m != pbu.mag][0]
                    entry.state, entry.bicast, entry.serving_mag = BceState.ACTIVE, (), survivor
            elif entry.serving_mag == pbu.mag:
                del self.entries[pbu.mn_id]
            # a stale dereg from a MAG that no longer serves is acknowledged as is
            return ack

        if entry is None:
            self.entries[pbu.mn_id] = BindingCacheEntry(
                pbu.mn_id, tuple(pbu.hnps), pbu.mag, lifetime=pbu.lifetime
            )
            return ack

        if pbu.transient:
            if entry.serving_mag != pbu.mag:
                entry.state = BceState.TRANSIENT_BICAST
                entry.bicast = (entry.serving_mag, pbu.mag)
            return ack

        entry.state, entry.bicast, entry.serving_mag = BceState.ACTIVE, (), pbu.mag
        entry.lifetime = pbu.lifetime
        if pbu.hnps:
            entry.hnps = tuple(pbu.hnps)
        return ack

    def copy(self) -> "BindingCache":
        return copy.deepcopy(self)


def lma_process_pbu(table: BindingCache, pbu: Pbu):
    """Functional form: return (updated copy of ``table``, PBA)."""
    out = table.copy()
    pba = out.process(pbu)
    return out, pba
