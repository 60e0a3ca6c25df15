import ipaddress
from dataclasses import dataclass, field
from enum import Enum

from ..mih.codec import LinkAddress


class Role(str, Enum):
    MN = "MN"
    POA = "PoA"
    MAG = "MAG"
    LMA = "LMA"
    MIIS = "MIIS"
    CN = "CN"


@dataclass(frozen=True, order=True)
class EntityId:
    role: Role
    index: int = 1

    def __str__(self):
        return f"{self.role.value}{self.index}"


@dataclass(frozen=True)
class Interface:
    name: str  # "IF_S" or "IF_C"
    technology: str


@dataclass(frozen=True)
class MnProfile:
    mn_id: str = "mn1@example.org"
    ll_id: LinkAddress = LinkAddress.mac("02:00:00:00:00:01")
    lla_iid: LinkAddress = LinkAddress.iid(0x0200_00FF_FE00_0001)
    hnps: tuple = ((64, ipaddress.IPv6Address("2001:db8:1::")),)
    lmaa: ipaddress.IPv6Address = ipaddress.IPv6Address("2001:db8::1")
    interfaces: tuple = (Interface("IF_S", "802.11"), Interface("IF_C", "LTE"))

    def __post_init__(self):
        if not self.hnps:
            raise ValueError("an MN needs at least one home network prefix")

    @property
    def heterogeneous(self) -> bool:
        techs = {i.technology for i in self.interfaces}
        return len(techs) > 1


class HoFlag(str, Enum):
    P = "P"  # predictive / pre-registration
    F = "F"  # forward through inter-MAG tunnel
    U = "U"  # buffer request


@dataclass(frozen=True)
class HandoverContext:
    """MN state moved between MAGs by HI/HAck or the extended commit request."""

    mn_id: str
    lla_iid: LinkAddress
    lmaa: object
    hnps: tuple
    flags: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_profile(cls, profile: MnProfile, *flags) -> "HandoverContext":
        return cls(profile.mn_id, profile.lla_iid, profile.lmaa, profile.hnps, frozenset(flags))

    def flag_text(self) -> str:
        return "".join(sorted(f.value for f in self.flags))
