"""The simulated network: entities, control-message transport and data plane.

Downlink traffic is a constant-bit-rate stream injected at the LMA and
routed by the binding cache. A MAG handles each packet according to its
current mode for the MN:

``deliver``  transmit over the air link (if the MN is attached)
``buffer``   hold in the handover buffer until released
``hold``     one-packet neighbor-discovery queue (newest wins)
``tunnel``   forward through the inter-MAG tunnel
``drop``     discard

Packets still in flight on an air link when it goes down are handed back
to the transmitting MAG, which forwards them if it is tunnelling and
drops them otherwise.
"""

import itertools
import math

import numpy as np

from ..analytic.catalog import DEFAULT_CATALOG
from ..analytic.delay import TUNNEL_HEADER
from ..simulator.engine import EventLoop
from ..simulator.links import LinkModel
from ..simulator.transcript import HOP_ATTR, Transcript
from .bce import BindingCache, Pbu
from .buffer import Packet, PacketBuffer
from .entities import MnProfile


class AirLink:
    def __init__(self, mag):
        self.mag = mag
        self.up = False
        self.inflight = {}


class Mag:
    def __init__(self, name, poa):
        self.name = name
        self.poa = poa
        self.mode = "drop"
        self.buffer = None
        self.tunnel_peer = None
        self.ip_ready = False  # MN has an IPv6 configuration through this MAG
        self.resources = True


class Network:
    def __init__(self, scenario, profile: MnProfile = MnProfile()):
        self.scenario = scenario
        self.params = scenario.delay
        self.topology = scenario.topology
        self.n = scenario.cost.n
        self.m = scenario.cost.m
        self.catalog = DEFAULT_CATALOG.with_sizes(**dict(scenario.sizes))
        self.rng = np.random.default_rng(scenario.seed)
        self.links = LinkModel(self.params, scenario.mode, self.rng, scenario.cost.p_f)
        self.loop = EventLoop()
        self.transcript = Transcript()
        self.profile = profile
        self.mn = "MN1"
        self.lma = "LMA1"
        self.miis = "MIIS1"
        self.bce = BindingCache()

        self.mags = {}
        self.pmag = self._add_mag("MAG1", "PoA1")
        self.candidates = [self._add_mag(f"MAG{i + 2}", f"PoA{i + 2}") for i in range(self.m)]
        ok = scenario.candidate_ok or (True,) * self.m
        for mag, avail in zip(self.candidates, ok):
            self.mags[mag].resources = bool(avail)
        # predictive/reactive runs have no candidate phase; the target is MAG2
        if not self.candidates:
            self._add_mag("MAG2", "PoA2")
        self.nmag = "MAG2"
        self.ap_to_mag = {m.poa: name for name, m in self.mags.items()}

        self.air = {name: AirLink(name) for name in self.mags}

        # MN receive side
        self.delivered = {}  # seq -> (t, mag, via_buffer)
        self.duplicates = 0
        self.generated = 0
        self.t_detach = None
        self.first_target_rx = None
        self.on_native_rx = None
        self.completed_at = None
        self._stop_traffic = math.inf
        self._ids = itertools.count()

    def _add_mag(self, name, poa):
        self.mags[name] = Mag(name, poa)
        return name

    @property
    def now(self):
        return self.loop.now

    # -- control plane --------------------------------------------------------

    def size_of(self, kind):
        if kind in self.catalog:
            return self.catalog.size(kind, self.n, self.m)
        raise KeyError(f"no size for message kind {kind!r}")

    def send(self, src, dst, kind, link, on_arrival=None, note="", payload=None, size=None):
        """Transmit a control message; ``on_arrival(payload)`` runs at the receiver."""
        size = self.size_of(kind) if size is None else size
        if link == "air":
            delay = self.links.wireless(size)
            if self.links.message_fails():
                self.transcript.record(self.now, src, dst, kind, size, link, _join(note, "lost"))
                self.loop.after(
                    delay + self.params.tau,
                    lambda: self.send(src, dst, kind, link, on_arrival, _join(note, "retx"),
                                      payload, size),
                )
                return
        elif link == "local":
            delay = 0.0
        else:
            delay = self.links.wired(size, getattr(self.topology, HOP_ATTR[link]))
        self.transcript.record(self.now, src, dst, kind, size, link,
                               _join(note, f"rx={self.now + delay:.6f}"))
        if on_arrival is not None:
            self.loop.after(delay, lambda: on_arrival(payload))

    def local(self, entity, kind, note=""):
        self.transcript.record(self.now, entity, entity, kind, 0, "local", note)

    def lma_pbu(self, mag, on_pba=None, transient=False, dereg=False, note=""):
        pbu = Pbu(self.profile.mn_id, mag, transient, dereg, self.profile.hnps)
        flags = "T" if transient else ("dereg" if dereg else "")

        def at_lma(_):
            pba = self.bce.process(pbu)
            self.local(self.lma, "BCE", str(self.bce.get(pbu.mn_id) or f"{pbu.mn_id}: none"))
            self.send(self.lma, mag, "PBA", "mag_lma", on_pba, _join(flags, note), pba)

        self.send(mag, self.lma, "PBU", "mag_lma", at_lma, _join(flags, note), pbu)

    # -- air interface --------------------------------------------------------

    def attach(self, mag):
        self.air[mag].up = True
        self.local(self.mn, "L2_ATTACH", f"mag={mag}")

    def detach(self, mag, note=""):
        link = self.air[mag]
        if not link.up:
            return
        link.up = False
        self.local(self.mn, "L2_DETACH", _join(f"mag={mag}", note))
        returned = list(link.inflight.values())
        link.inflight.clear()
        for ev, pkt in returned:
            ev.cancel()
        for ev, pkt in returned:
            self._returned(mag, pkt)

    def mark_handover_start(self):
        self.t_detach = self.now
        self.local(self.mn, "HO_START", "connectivity to serving MAG lost")

    # -- data plane -----------------------------------------------------------

    def start_traffic(self, until=None):
        self._stop_traffic = math.inf if until is None else until
        self._next_packet(0)

    def stop_traffic_after(self, delay):
        self._stop_traffic = min(self._stop_traffic, self.now + delay)

    def complete(self):
        if self.completed_at is None:
            self.completed_at = self.now
            self.local(self.mn, "HO_COMPLETE")
            self.stop_traffic_after(self.scenario.tail)

    def _next_packet(self, seq):
        t = seq * self.scenario.cbr_interval
        if t > self._stop_traffic:
            return

        def emit():
            if self.now > self._stop_traffic:
                return
            pkt = Packet(seq, self.params.L_D, self.now)
            self.generated += 1
            self._lma_downlink(pkt)
            self._next_packet(seq + 1)

        self.loop.at(t, emit)

    def _lma_downlink(self, pkt):
        dests = self.bce.destinations(self.profile.mn_id)
        if not dests:
            self._drop(self.lma, pkt, "no binding")
        for mag in dests:
            self._wired_data(self.lma, mag, pkt, "mag_lma", pkt.size + TUNNEL_HEADER,
                             lambda mag=mag: self.mag_receive(mag, pkt))

    def _wired_data(self, src, dst, pkt, link, size, then, kind="DATA"):
        delay = self.links.wired(size, getattr(self.topology, HOP_ATTR[link]))
        self.transcript.record(self.now, src, dst, kind, size, link, f"seq={pkt.seq}")
        self.loop.after(delay, then)

    def mag_receive(self, mag, pkt):
        m = self.mags[mag]
        if m.mode == "deliver":
            self._air_transmit(mag, pkt)
        elif m.mode in ("buffer", "hold"):
            evicted = m.buffer.push(pkt, self.now)
            self.local(mag, "BUFFER", f"seq={pkt.seq}")
            if evicted is not None:
                self._drop(mag, evicted, "buffer overflow")
        elif m.mode == "tunnel":
            self._tunnel(mag, pkt)
        else:
            self._drop(mag, pkt, "no route to MN")

    def _tunnel(self, mag, pkt):
        peer = self.mags[mag].tunnel_peer
        self._wired_data(mag, peer, pkt, "mag_mag", pkt.size + TUNNEL_HEADER,
                         lambda: self.mag_receive(peer, pkt))

    def _returned(self, mag, pkt):
        if self.mags[mag].mode == "tunnel":
            self._tunnel(mag, pkt)
        else:
            self._drop(mag, pkt, "air link down")

    def _air_transmit(self, mag, pkt, via_buffer=False):
        link = self.air[mag]
        if not link.up:
            self._returned(mag, pkt)
            return
        native = self.bce.is_active_at(self.profile.mn_id, mag)
        size = pkt.size if native else pkt.size + TUNNEL_HEADER
        delay = self.links.wireless(size)
        key = next(self._ids)
        note = f"seq={pkt.seq}" + (" buffered" if via_buffer else "")
        self.transcript.record(self.now, mag, self.mn, "DATA", size, "air", note)

        def arrive():
            link.inflight.pop(key, None)
            self._mn_receive(pkt, mag, via_buffer, native)

        link.inflight[key] = (self.loop.after(delay, arrive), pkt)

    def release_buffer(self, mag):
        m = self.mags[mag]
        pkts = m.buffer.release() if m.buffer is not None else []
        self.local(mag, "BUFFER_FLUSH", f"{len(pkts)} packets")
        for pkt in pkts:
            self._air_transmit(mag, pkt, via_buffer=True)

    def _drop(self, where, pkt, why):
        self.local(where, "DROP", f"seq={pkt.seq} {why}")

    def _mn_receive(self, pkt, mag, via_buffer, native):
        # reception from the new MAG ends the handover even if dedup discards it
        if mag != self.pmag and self.first_target_rx is None and self.t_detach is not None:
            self.first_target_rx = self.now
            self.local(self.mn, "FIRST_RX", f"seq={pkt.seq} from {mag}")
        if pkt.seq in self.delivered:
            self.duplicates += 1
        else:
            self.delivered[pkt.seq] = (self.now, mag, via_buffer)
        if native and mag != self.pmag and self.on_native_rx is not None:
            cb, self.on_native_rx = self.on_native_rx, None
            cb()

    def uplink(self, path):
        """Send one uplink data packet along ``path`` = [(src, dst, link), ...]."""
        pkt = Packet(-1, self.params.L_D, self.now)

        def hop(i):
            if i == len(path):
                return
            src, dst, link = path[i]
            size = pkt.size if i == 0 else pkt.size + TUNNEL_HEADER
            if link == "air":
                delay = self.links.wireless(size)
                self.transcript.record(self.now, src, dst, "DATA_UL", size, link, "uplink")
                self.loop.after(delay, lambda: hop(i + 1))
            else:
                self._wired_data(src, dst, pkt, link, size, lambda: hop(i + 1), kind="DATA_UL")

        hop(0)

    # -- results --------------------------------------------------------------

    @property
    def lost(self):
        return self.generated - len(self.delivered)

    @property
    def buffered_delivered(self):
        return sum(1 for _, _, b in self.delivered.values() if b)

    @property
    def handover_delay(self):
        if self.first_target_rx is None or self.t_detach is None:
            return math.nan
        return self.first_target_rx - self.t_detach


def _join(*parts):
    return " ".join(p for p in parts if p)
