"""Message sequences of the six handover schemes.

Each ``run_*`` function installs the scheme on a fresh :class:`Network`,
runs the event loop to completion and returns the transcript. The
binding cache, buffers and per-MN receive log stay on the network object
for inspection.

Timing conventions shared by all schemes:

* connectivity loss (``HO_START``) is the instant the MN stops using its
  serving link; the handover delay runs from there to the first downlink
  packet received from the new MAG;
* the resource-query round is sequential but sits before ``HO_START``, so
  it never adds to the handover delay.
"""

from ..mih.codec import (
    TLV_HNP_LIST,
    TLV_LMA_ADDRESS,
    TLV_MN_ID,
    TLV_MN_LLA_IID,
    LinkAddress,
    MihMessage,
    Tlv,
    build_commit_request_ext,
    build_commit_response_ext,
    commit_status,
    decode_hnp_list,
    decode_message,
    decode_transport_addr,
    encode_message,
)
from ..mih.status import StatusCode
from ..params import Scheme
from .buffer import PacketBuffer
from .entities import HandoverContext, HoFlag
from .network import Network


class HandoverError(Exception):
    network = None


class HandoverReject(HandoverError):
    pass


class CommitRejected(HandoverError):
    pass


class UnknownPreviousMag(HandoverError):
    pass


class NoCandidate(HandoverError):
    pass


# -- shared pieces ------------------------------------------------------------


def _initial_state(net: Network):
    """MN attached at the serving MAG with an Active binding there."""
    from .bce import Pbu

    net.bce.process(Pbu(net.profile.mn_id, net.pmag, hnps=net.profile.hnps))
    net.mags[net.pmag].mode = "deliver"
    net.mags[net.pmag].ip_ready = True
    net.air[net.pmag].up = True
    net.start_traffic()


def _run(net: Network):
    try:
        net.loop.run()
    except HandoverError as exc:
        exc.network = net
        raise
    return net.transcript


def _prepare_buffer(net: Network, mag, mode="buffer"):
    m = net.mags[mag]
    capacity = 1 if mode == "hold" else net.scenario.buffer_capacity
    m.buffer = PacketBuffer(mag, capacity)
    m.mode = mode


def _query_resources(net: Network, then):
    """Ask every candidate for resources in MN-preference order; pick the first yes."""
    p = net.pmag
    if not net.candidates:
        raise NoCandidate("candidate list is empty")
    answers = []

    def query(i):
        if i == len(net.candidates):
            for cmag, ok in zip(net.candidates, answers):
                if ok:
                    net.nmag = cmag
                    net.local(p, "TARGET_SELECTED", cmag)
                    then(cmag)
                    return
            raise NoCandidate("no candidate MAG has resources")
        cmag = net.candidates[i]

        def at_candidate(_):
            ok = net.mags[cmag].resources
            net.send(cmag, p, "MIH_N2N_HO_Query_Resource_response", "mag_mag",
                     lambda _: (answers.append(ok), query(i + 1)),
                     note="available" if ok else "unavailable")

        net.send(p, cmag, "MIH_N2N_HO_Query_Resource_request", "mag_mag", at_candidate,
                 note=f"candidate {i + 1}/{len(net.candidates)}")

    query(0)


def _candidate_query(net: Network, then):
    p, mn = net.pmag, net.mn
    net.send(p, mn, "MIH_Net_HO_Candidate_Query_request", "air",
             lambda _: net.send(mn, p, "MIH_Net_HO_Candidate_Query_response", "air",
                                lambda _: then(), note="preferred PoA list"))


def _miis_query(net: Network, then=None, note=""):
    p = net.pmag
    net.send(p, net.miis, "MIH_Get_Information_request", "mag_miis",
             lambda _: net.send(net.miis, p, "MIH_Get_Information_response", "mag_miis",
                                (lambda _: then()) if then else None, note=note),
             note=note)


def _completion_exchange(net: Network, target, dereg=True):
    """Target reports completion; old MAG deregisters, answers and releases."""
    p = net.pmag

    def at_pmag(_):
        def answer(_=None):
            net.send(p, target, "MIH_N2N_HO_Complete_response", "mag_mag",
                     lambda _: net.complete())
            net.local(p, "RESOURCE_RELEASE")

        if dereg:
            net.lma_pbu(p, answer, dereg=True)
        else:
            answer()

    net.send(target, p, "MIH_N2N_HO_Complete_request", "mag_mag", at_pmag)


def _tunnel_up(net: Network, pmag, nmag):
    net.mags[pmag].tunnel_peer = nmag
    net.local(pmag, "TUNNEL_UP", f"{pmag}<->{nmag}")


def _tunnel_down_after_drain(net: Network, pmag, nmag):
    """Tear the tunnel down once packets already routed to the old MAG are through."""
    L = net.params.L_D
    drain = net.links.wired(L + 40, net.topology.h_mag_lma) + net.links.wired(
        L + 40, net.topology.h_mag_mag
    )

    def teardown():
        net.mags[pmag].mode = "drop"
        net.mags[pmag].tunnel_peer = None
        net.local(nmag, "TUNNEL_DOWN", f"{pmag}<->{nmag}")
        net.complete()

    net.loop.after(drain, teardown)


def context_from_commit(msg: MihMessage) -> HandoverContext:
    return HandoverContext(
        msg.find(TLV_MN_ID).value.decode(),
        LinkAddress.decode(msg.find(TLV_MN_LLA_IID).value),
        decode_transport_addr(msg.find(TLV_LMA_ADDRESS).value),
        tuple(decode_hnp_list(msg.find(TLV_HNP_LIST).value)),
        frozenset({HoFlag.P}),
    )


# -- FPMIPv6 ------------------------------------------------------------------


def run_fpmip_predictive(net: Network):
    """Predictive FPMIPv6: HI/HAck pre-registration, then tunnel forwarding."""
    sc = net.scenario
    mn, p, t = net.mn, net.pmag, net.nmag
    ctx = HandoverContext.from_profile(net.profile, HoFlag.P)
    _initial_state(net)

    def report():
        net.send(mn, p, "Report", "air", indication, note="MN ID, new AP ID",
                 size=net.size_of("MIH_Link_Going_Down"))

    def indication(_):
        net.local(p, "HO_Indication", "from PoA1: MN ID, new AP ID")
        net.send(p, t, "HI", "mag_mag", at_nmag_hi, note="P", payload=ctx)

    def at_nmag_hi(ctx):
        code = sc.hack_status
        if code >= 128:
            net.send(t, p, "HACK", "mag_mag", reject, note=f"P code={code}", payload=code)
            return
        net.send(t, p, "HACK", "mag_mag", None, note="P code=0", payload=0)
        flag = HoFlag.F if sc.forward else HoFlag.U
        _prepare_buffer(net, t)
        net.send(t, p, "HI", "mag_mag", at_pmag_hi2, note=flag.value,
                 payload=HandoverContext(ctx.mn_id, ctx.lla_iid, ctx.lmaa, ctx.hnps,
                                         frozenset({flag})))

    def reject(code):
        net.local(p, "HO_REJECTED", f"HAck code {code}")
        raise HandoverReject(f"NMAG rejected pre-registration with code {code}")

    def at_pmag_hi2(ctx2):
        if HoFlag.F in ctx2.flags:
            _tunnel_up(net, p, t)
            net.mags[p].mode = "tunnel"
        else:
            net.mags[p].mode = "drop"
        net.local(p, "L2_HO_COMMAND", "access-specific trigger to MN")
        net.mark_handover_start()
        net.detach(p)
        net.loop.after(sc.delay.t_l2, attach)

    def attach():
        net.attach(t)
        net.send(mn, t, "RS", "air", at_nmag_attach, note="attach, IPv6 configuration")

    def at_nmag_attach(_):
        net.mags[t].mode = "deliver"
        net.mags[t].ip_ready = True
        net.release_buffer(t)
        if net.mags[p].tunnel_peer == t:
            net.uplink([(mn, t, "air"), (t, p, "mag_mag"), (p, net.lma, "mag_lma")])
        net.lma_pbu(t, registered)

    def registered(_):
        if net.mags[p].tunnel_peer == t:
            _tunnel_down_after_drain(net, p, t)
        else:
            net.complete()

    net.loop.at(sc.t_trigger, report)
    return _run(net)


def run_fpmip_reactive(net: Network):
    """Reactive FPMIPv6: the MN is already gone when the new MAG learns of it."""
    sc = net.scenario
    mn, p, t = net.mn, net.pmag, net.nmag

    _initial_state(net)

    def lose_link():
        net.mags[p].mode = "drop"
        net.mark_handover_start()
        net.detach(p)
        net.loop.after(sc.delay.t_l2, attach)

    def attach():
        net.attach(t)
        net.send(mn, t, "UNA", "air", at_nmag, note=f"MN ID, old AP ID={sc.old_ap}",
                 payload=sc.old_ap)

    def at_nmag(old_ap):
        prev = net.ap_to_mag.get(old_ap)
        if prev is None or prev == t:
            net.local(t, "HO_REJECTED", f"unknown previous AP {old_ap}")
            raise UnknownPreviousMag(f"old AP {old_ap!r} maps to no previous MAG")
        flags = {HoFlag.P} | ({HoFlag.F} if sc.forward else set())
        ctx = HandoverContext(net.profile.mn_id, None, None, (), frozenset(flags))
        net.send(t, prev, "HI", "mag_mag", at_pmag, note="".join(sorted(f.value for f in flags)),
                 payload=ctx)

    def at_pmag(ctx):
        full = HandoverContext.from_profile(net.profile, HoFlag.P)
        if HoFlag.F in ctx.flags:
            _tunnel_up(net, p, t)
            net.mags[p].mode = "tunnel"
        net.send(p, t, "HACK", "mag_mag", at_nmag_hack, note="P HNP LMAA", payload=full)

    def at_nmag_hack(ctx):
        net.mags[t].mode = "deliver"
        net.mags[t].ip_ready = True
        if net.mags[p].tunnel_peer == t:
            net.uplink([(mn, t, "air"), (t, p, "mag_mag"), (p, net.lma, "mag_lma")])
        net.lma_pbu(t, registered)

    def registered(_):
        if net.mags[p].tunnel_peer == t:
            _tunnel_down_after_drain(net, p, t)
        else:
            net.complete()

    net.loop.at(sc.t_trigger, lose_link)
    return _run(net)


# -- MIH-assisted -------------------------------------------------------------


def run_standard(net: Network, initiator="mobile"):
    """PMIPv6 handover with MIH queries; no buffering beyond ND, no tunnel."""
    if initiator not in ("mobile", "network"):
        raise ValueError(f"initiator must be 'mobile' or 'network', got {initiator!r}")
    sc = net.scenario
    mn, p = net.mn, net.pmag
    _initial_state(net)

    def info_query(then):
        def relay(_):
            _miis_query(net, lambda: net.send(p, mn, "MIH_Get_Information_response", "air",
                                              lambda _: then()))

        net.send(mn, p, "MIH_Get_Information_request", "air", relay)

    def start():
        if initiator == "mobile":
            info_query(lambda: _candidate_query(net, lambda: _query_resources(net, commit)))
        else:
            _candidate_query(net, lambda: info_query(lambda: _query_resources(net, commit)))

    def commit(t):
        def at_pmag(_):
            net.send(p, t, "MIH_N2N_HO_Commit_request", "mag_mag", at_target,
                     payload=encode_message(MihMessage.create(
                         "MIH_N2N_HO_Commit_request", (Tlv(TLV_MN_ID, net.profile.mn_id.encode()),))))

        def at_target(wire):
            decode_message(wire)
            net.send(t, p, "MIH_N2N_HO_Commit_response", "mag_mag", aaa,
                     payload=encode_message(MihMessage.create(
                         "MIH_N2N_HO_Commit_response", (Tlv(3, bytes([0])),))))

        def aaa(_):
            net.send(p, net.lma, "AAA_Query", "mag_lma",
                     lambda _: net.send(net.lma, p, "AAA_Reply", "mag_lma", refresh),
                     note="MN profile")

        def refresh(_):
            net.lma_pbu(p, lambda _: net.send(p, mn, "MIH_MN_HO_Commit_response", "air", switch),
                        note="refresh")

        def switch(_):
            net.mags[p].mode = "drop"
            net.mark_handover_start()
            net.detach(p)
            net.loop.after(sc.delay.t_l2, lambda: attach(t))

        net.send(mn, p, "MIH_MN_HO_Commit_request", "air", at_pmag)

    def attach(t):
        net.attach(t)
        _prepare_buffer(net, t, "hold")
        net.send(mn, t, "RS", "air", lambda _: net.lma_pbu(t, lambda _: ra(t)))

    def ra(t):
        def configured(_):
            net.mags[t].mode = "deliver"
            net.mags[t].ip_ready = True
            net.release_buffer(t)

        net.send(t, mn, "RA", "air", configured)
        _completion_exchange(net, t, dereg=True)

    net.loop.at(sc.t_trigger, start)
    return _run(net)


def run_fast_handover_mih(net: Network):
    """MIH fast handover: commit plus HI/HACK context transfer and transient binding."""
    sc = net.scenario
    mn, p = net.mn, net.pmag
    _initial_state(net)

    def start():
        net.send(mn, p, "MIH_Link_Going_Down", "air",
                 lambda _: _miis_query(net, lambda: _candidate_query(
                     net, lambda: _query_resources(net, commit))))

    def commit(t):
        def at_target(wire):
            decode_message(wire)
            net.send(t, p, "MIH_N2N_HO_Commit_response", "mag_mag", hi,
                     payload=encode_message(MihMessage.create(
                         "MIH_N2N_HO_Commit_response", (Tlv(3, bytes([0])),))))

        def hi(_):
            ctx = HandoverContext.from_profile(net.profile, HoFlag.P)
            net.send(p, t, "HI", "mag_mag", at_target_hi, note="P MN ID IID LMAA", payload=ctx)

        def at_target_hi(ctx):
            _prepare_buffer(net, t)
            net.lma_pbu(t, transient=True)
            net.send(t, p, "HACK", "mag_mag", ho_command, note="P")

        def ho_command(_):
            net.send(p, mn, "MIH_Net_HO_Commit_request", "air",
                     lambda _: net.send(mn, p, "MIH_Net_HO_Commit_response", "air", switch))

        def switch(_):
            net.mags[p].mode = "drop"
            net.mark_handover_start()
            net.detach(p)
            net.loop.after(sc.delay.t_l2, lambda: attach(t))

        net.send(p, t, "MIH_N2N_HO_Commit_request", "mag_mag", at_target,
                 payload=encode_message(MihMessage.create(
                     "MIH_N2N_HO_Commit_request", (Tlv(TLV_MN_ID, net.profile.mn_id.encode()),))))

    def attach(t):
        net.attach(t)
        net.local(mn, "MIH_Link_Up", "local indication to MIHF")
        net.send(mn, t, "RS", "air", lambda _: at_rs(t))

    def at_rs(t):
        net.mags[t].mode = "deliver"
        net.mags[t].ip_ready = True
        net.release_buffer(t)
        net.send(t, mn, "RA", "air")
        net.lma_pbu(t, lambda _: _completion_exchange(net, t, dereg=True))

    net.loop.at(sc.t_trigger, start)
    return _run(net)


def run_proposed(net: Network):
    """Integrated scheme: the extended commit carries the MN context; no HI/HAck."""
    sc = net.scenario
    mn, p = net.mn, net.pmag
    prof = net.profile
    _initial_state(net)
    _miis_query(net, note="bootstrap")

    def start():
        net.send(mn, p, "MIH_Link_Going_Down", "air",
                 lambda _: _candidate_query(net, lambda: _query_resources(net, commit)),
                 note="IF_S")

    def commit(t):
        req = build_commit_request_ext(prof.mn_id, prof.lla_iid, prof.lmaa, prof.hnps)

        def at_target(wire):
            ctx = context_from_commit(decode_message(wire))
            net.local(t, "CONTEXT", f"{ctx.mn_id} {ctx.lmaa} {len(ctx.hnps)} HNP")
            status = StatusCode(sc.commit_status)
            if not status.rejected:
                _prepare_buffer(net, t)
                net.lma_pbu(t, transient=True)
            net.send(t, p, "MIH_N2N_HO_Commit_response_ext", "mag_mag", at_pmag,
                     payload=encode_message(build_commit_response_ext(status)),
                     note=f"status={status}")

        def at_pmag(wire):
            status = commit_status(decode_message(wire))
            if status.rejected:
                net.local(p, "HO_REJECTED", str(status))
                raise CommitRejected(f"target {t} answered {status}")
            net.send(p, mn, "MIH_Net_HO_Commit_request", "air", lambda _: switch(t))

        net.send(p, t, "MIH_N2N_HO_Commit_request_ext", "mag_mag", at_target,
                 payload=encode_message(req), note="TLV 101 102 103")

    def switch(t):
        # IF_S keeps receiving until Link_Down; the MN stops using it from here
        net.mark_handover_start()
        net.loop.after(sc.delay.t_l2, lambda: link_up(t))

    def link_up(t):
        net.attach(t)
        net.send(mn, t, "MIH_Link_Up", "air", note="IF_C")
        net.send(mn, p, "MIH_Net_HO_Commit_response", "air")
        net.on_native_rx = lambda: link_down(t)
        net.send(mn, t, "UNA", "air", lambda _: at_una(t))

    def at_una(t):
        net.mags[t].mode = "deliver"
        net.mags[t].ip_ready = True
        net.release_buffer(t)
        net.lma_pbu(t)

    def link_down(t):
        net.local(p, "MIH_Link_Down", "IF_S released")
        net.mags[p].mode = "drop"
        net.detach(p)
        _completion_exchange(net, t, dereg=False)

    net.loop.at(sc.t_trigger, start)
    return _run(net)


RUNNERS = {
    Scheme.STANDARD_MOBILE: lambda net: run_standard(net, "mobile"),
    Scheme.STANDARD_NETWORK: lambda net: run_standard(net, "network"),
    Scheme.FPMIP_PREDICTIVE: run_fpmip_predictive,
    Scheme.FPMIP_REACTIVE: run_fpmip_reactive,
    Scheme.FAST_MIH: run_fast_handover_mih,
    Scheme.PROPOSED: run_proposed,
}


def run_scheme(net: Network, scheme=None):
    scheme = Scheme(scheme or net.scenario.scheme)
    return RUNNERS[scheme](net)
