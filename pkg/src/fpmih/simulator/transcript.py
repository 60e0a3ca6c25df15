"""Timed message transcript and its text form.

One event per line::

    t_ms | src | dst | message_kind | size_octets | link_kind | note

``link_kind`` is one of ``air`` (MN-MAG), ``mag_mag``, ``mag_lma``,
``mag_miis`` or ``local`` (state changes and link-layer indications that
cross no network link). Data packets use kinds ``DATA`` and ``DATA_UL``.
"""

from dataclasses import dataclass

from ..params import Topology

LINK_KINDS = ("air", "mag_mag", "mag_lma", "mag_miis", "local")
DATA_KINDS = ("DATA", "DATA_UL")
HOP_ATTR = {
    "air": "h_mn_mag",
    "mag_mag": "h_mag_mag",
    "mag_lma": "h_mag_lma",
    "mag_miis": "h_mag_miis",
}


@dataclass(frozen=True)
class TranscriptEvent:
    t_ms: float
    src: str
    dst: str
    kind: str
    size: int
    link: str
    note: str = ""

    @property
    def is_signaling(self) -> bool:
        return self.link in HOP_ATTR and self.kind not in DATA_KINDS

    def format(self) -> str:
        return (
            f"{self.t_ms:.6f} | {self.src} | {self.dst} | {self.kind} | "
            f"{self.size} | {self.link} | {self.note}"
        )

    @classmethod
    def parse(cls, line: str) -> "TranscriptEvent":
        parts = [p.strip() for p in line.rstrip("\n").split("|")]
        if len(parts) != 7:
            raise ValueError(f"expected 7 fields, got {len(parts)}: {line!r}")
        t, src, dst, kind, size, link, note = parts
        if link not in LINK_KINDS:
            raise ValueError(f"unknown link kind {link!r}")
        return cls(float(t), src, dst, kind, int(size), link, note)


class Transcript(list):
    def record(self, t, src, dst, kind, size, link, note=""):
        ev = TranscriptEvent(float(t), str(src), str(dst), kind, int(size), link, note)
        self.append(ev)
        return ev

    def kinds(self, signaling_only=False):
        return [e.kind for e in self if not signaling_only or e.is_signaling]

    def count(self, kind):
        return sum(1 for e in self if e.kind == kind)

    def dumps(self) -> str:
        return "".join(e.format() + "\n" for e in self)

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        out = cls()
        for line in text.splitlines():
            if line.strip() and not line.startswith("#"):
                out.append(TranscriptEvent.parse(line))
        return out


def signaling_by_group(transcript) -> dict:
    """{link_kind: {message_kind: count}} over signaling events."""
    out = {k: {} for k in HOP_ATTR}
    for e in transcript:
        if e.is_signaling:
            bucket = out[e.link]
            bucket[e.kind] = bucket.get(e.kind, 0) + 1
    return out


def signaling_tally(transcript, topology: Topology = Topology(), A=1, B=1):
    """(wireless, wired) cost: unit cost times sum of size x hops."""
    wireless = wired = 0
    for e in transcript:
        if not e.is_signaling:
            continue
        cost = e.size * getattr(topology, HOP_ATTR[e.link])
        if e.link == "air":
            wireless += cost
        else:
            wired += cost
    return B * wireless, A * wired
