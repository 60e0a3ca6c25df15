"""Handover status codes carried by the extended N2N_HO_Commit response.

The extended response reuses the IANA handover status registry (shared by
RFC 5568 and RFC 5949) instead of the five-value MIH status set.
"""

from dataclasses import dataclass

UNASSIGNED = "Unassigned"

IANA_STATUS = {
    0: "Handover accept or success",
    1: "Handover Accepted, NCoA not valid",
    2: "Handover Accepted, NCoA assigned",
    3: "Handover Accepted, use PCoA",
    4: "Message sent unsolicited",
    5: "Context Transfer Accepted or Successful",
    6: "All available Context Transferred",
    128: "Handover Not Accepted, reason unspecified",
    129: "Administratively prohibited",
    130: "Insufficient resources",
    131: "Requested Context Not Available",
    132: "Forwarding Not Available",
}

# legacy MIH status meanings, kept for listings that compare both columns
MIH_STATUS = {
    0: "Success",
    1: "Unspecified Failure",
    2: "Rejected",
    3: "Authorization failure",
    4: "Network error",
}

REJECT_CODES = frozenset(range(128, 133))


@dataclass(frozen=True)
class StatusCode:
    value: int

    def __post_init__(self):
        if not 0 <= self.value <= 255:
            raise ValueError(f"status code out of range: {self.value}")

    @property
    def meaning(self) -> str:
        return IANA_STATUS.get(self.value, UNASSIGNED)

    @property
    def mih_meaning(self) -> str:
        return MIH_STATUS.get(self.value, UNASSIGNED)

    @property
    def accepted(self) -> bool:
        return self.value < 128

    @property
    def rejected(self) -> bool:
        return self.value in REJECT_CODES

    def __str__(self):
        return f"{self.value} ({self.meaning})"
