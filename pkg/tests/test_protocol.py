import pytest

from fpmih.params import CostParams, Scheme
from fpmih.protocol import (
    BceState,
    BindingCache,
    CommitRejected,
    DeregUnknownBinding,
    HandoverReject,
    NoCandidate,
    Packet,
    PacketBuffer,
    Pbu,
    UnknownPreviousMag,
    buffer_release_on_una,
    lma_process_pbu,
)
from fpmih.protocol.entities import HandoverContext, HoFlag, MnProfile
from fpmih.protocol.schemes import context_from_commit
from fpmih.mih.codec import build_commit_request_ext, decode_message, encode_message
from fpmih.simulator import Scenario, run_scenario

MN = "mn1@example.org"


def bound(mag="MAG1"):
    bc = BindingCache()
    bc.process(Pbu(MN, mag))
    return bc


# -- binding cache -------------------------------------------------------------


def test_first_pbu_creates_active_entry():
    bc = bound()
    assert str(bc.get(MN)) == f"{MN}: Active(MAG1)"
    assert bc.destinations(MN) == ["MAG1"]


def test_transient_pbu_bicasts_then_plain_pbu_completes():
    bc = bound()
    bc.process(Pbu(MN, "MAG2", transient=True))
    assert bc.get(MN).state is BceState.TRANSIENT_BICAST
    assert bc.destinations(MN) == ["MAG1", "MAG2"]
    bc.process(Pbu(MN, "MAG2"))
    assert bc.is_active_at(MN, "MAG2")
    assert bc.destinations(MN) == ["MAG2"]


def test_dereg_during_bicast_keeps_survivor():
    bc = bound()
    bc.process(Pbu(MN, "MAG2", transient=True))
    bc.process(Pbu(MN, "MAG1", dereg=True))
    assert bc.is_active_at(MN, "MAG2")


def test_dereg_from_serving_mag_removes_entry():
    bc = bound()
    bc.process(Pbu(MN, "MAG1", dereg=True))
    assert bc.get(MN) is None and bc.destinations(MN) == []


def test_stale_dereg_is_acknowledged_without_change():
    bc = bound("MAG2")
    pba = bc.process(Pbu(MN, "MAG1", dereg=True))
    assert pba.status == 0 and bc.is_active_at(MN, "MAG2")


def test_dereg_unknown_binding():
    with pytest.raises(DeregUnknownBinding):
        BindingCache().process(Pbu(MN, "MAG1", dereg=True))


def test_functional_form_leaves_input_untouched():
    bc = bound()
    new, pba = lma_process_pbu(bc, Pbu(MN, "MAG2"))
    assert bc.is_active_at(MN, "MAG1") and new.is_active_at(MN, "MAG2")
    assert pba.mag == "MAG2"


# -- buffer ----------------------------------------------------------------------


def test_buffer_fifo_and_single_release():
    buf = PacketBuffer("MAG2", capacity=3)
    for s in range(3):
        assert buf.push(Packet(s, 1024, 0), 0) is None
    assert [p.seq for p in buf.release()] == [0, 1, 2]
    assert buf.release() == []


def test_buffer_overflow_drops_oldest():
    buf = PacketBuffer("MAG2", capacity=2)
    buf.push(Packet(0, 1, 0), 0)
    buf.push(Packet(1, 1, 0), 0)
    evicted = buf.push(Packet(2, 1, 0), 0)
    assert evicted.seq == 0
    assert [p.seq for p in buf.release()] == [1, 2]


def test_buffer_release_before_native():
    buf = PacketBuffer("MAG2")
    buf.push(Packet(5, 1, 0), 0)
    order = buffer_release_on_una(buf, native=[Packet(6, 1, 0)])
    assert [p.seq for p in order] == [5, 6]


def test_buffer_capacity_must_be_positive():
    with pytest.raises(ValueError):
        PacketBuffer("MAG2", capacity=0)


# -- context transfer ------------------------------------------------------------


def test_commit_request_carries_context():
    prof = MnProfile()
    wire = encode_message(build_commit_request_ext(prof.mn_id, prof.lla_iid, prof.lmaa, prof.hnps))
    ctx = context_from_commit(decode_message(wire))
    assert ctx == HandoverContext.from_profile(prof, HoFlag.P)


def test_profile_needs_prefix():
    with pytest.raises(ValueError):
        MnProfile(hnps=())


def test_profile_is_heterogeneous():
    assert MnProfile().heterogeneous


# -- scheme flows --------------------------------------------------------------


def kinds(transcript, link=None):
    return [e.kind for e in transcript if e.is_signaling and (link is None or e.link == link)]


def test_proposed_flow_order():
    res = run_scenario(Scenario(scheme=Scheme.PROPOSED))
    seq = [k for k in kinds(res.transcript) if "Query_Resource" not in k]
    assert seq == [
        "MIH_Get_Information_request",
        "MIH_Get_Information_response",
        "MIH_Link_Going_Down",
        "MIH_Net_HO_Candidate_Query_request",
        "MIH_Net_HO_Candidate_Query_response",
        "MIH_N2N_HO_Commit_request_ext",
        "PBU",
        "MIH_N2N_HO_Commit_response_ext",
        "PBA",
        "MIH_Net_HO_Commit_request",
        "MIH_Link_Up",
        "MIH_Net_HO_Commit_response",
        "UNA",
        "PBU",
        "PBA",
        "MIH_N2N_HO_Complete_request",
        "MIH_N2N_HO_Complete_response",
    ]
    assert "HI" not in kinds(res.transcript) and "HACK" not in kinds(res.transcript)


def test_proposed_queries_every_candidate():
    res = run_scenario(Scenario(scheme=Scheme.PROPOSED, cost=CostParams(m=3)))
    qr = [e for e in res.transcript if e.kind == "MIH_N2N_HO_Query_Resource_request"]
    assert [e.dst for e in qr] == ["MAG2", "MAG3", "MAG4"]


def test_proposed_picks_first_available_candidate():
    sc = Scenario(scheme=Scheme.PROPOSED, cost=CostParams(m=3), candidate_ok=(False, True, True))
    res = run_scenario(sc)
    assert res.network.bce.is_active_at(MN, "MAG3")


def test_proposed_no_candidate_with_resources():
    sc = Scenario(scheme=Scheme.PROPOSED, cost=CostParams(m=2), candidate_ok=(False, False))
    with pytest.raises(NoCandidate):
        run_scenario(sc)


@pytest.mark.parametrize("code", [128, 129, 130, 131, 132])
def test_proposed_commit_rejected(code):
    with pytest.raises(CommitRejected) as exc:
        run_scenario(Scenario(scheme=Scheme.PROPOSED, commit_status=code))
    net = exc.value.network
    # no transient binding was requested, so the serving MAG still owns the MN
    assert net.bce.is_active_at(MN, "MAG1")
    assert not any(e.kind == "PBU" for e in net.transcript)


def test_proposed_accepts_non_reject_codes():
    res = run_scenario(Scenario(scheme=Scheme.PROPOSED, commit_status=4))
    assert res.network.bce.is_active_at(MN, "MAG2")


def test_predictive_flow_uses_hi_hack_and_tunnel():
    res = run_scenario(Scenario(scheme=Scheme.FPMIP_PREDICTIVE))
    ks = kinds(res.transcript)
    # HI(P), HAck(P), then the F/U request
    assert ks.count("HI") == 2 and ks.count("HACK") == 1
    assert ks.index("HI") < ks.index("HACK")
    assert any(e.kind == "DATA" and e.link == "mag_mag" for e in res.transcript)
    assert res.metrics.packets_lost == 0


def test_predictive_hack_reject():
    with pytest.raises(HandoverReject) as exc:
        run_scenario(Scenario(scheme=Scheme.FPMIP_PREDICTIVE, hack_status=130))
    net = exc.value.network
    assert net.bce.is_active_at(MN, "MAG1")
    assert net.mags["MAG1"].tunnel_peer is None


def test_predictive_without_forwarding_buffers_at_target():
    res = run_scenario(Scenario(scheme=Scheme.FPMIP_PREDICTIVE, forward=False))
    assert not any(e.kind == "DATA" and e.link == "mag_mag" for e in res.transcript)
    assert res.network.bce.is_active_at(MN, "MAG2")


def test_reactive_unknown_previous_ap():
    with pytest.raises(UnknownPreviousMag):
        run_scenario(Scenario(scheme=Scheme.FPMIP_REACTIVE, old_ap="PoA9"))


def test_reactive_completes_through_tunnel():
    res = run_scenario(Scenario(scheme=Scheme.FPMIP_REACTIVE))
    ks = kinds(res.transcript)
    assert ks.index("UNA") < ks.index("HI") < ks.index("HACK") < ks.index("PBU")
    assert res.network.bce.is_active_at(MN, "MAG2")


@pytest.mark.parametrize("scheme", [Scheme.STANDARD_MOBILE, Scheme.STANDARD_NETWORK])
def test_standard_flow_has_aaa_and_three_pbu_pairs(scheme):
    ks = kinds(run_scenario(Scenario(scheme=scheme)).transcript)
    assert ks.count("AAA_Query") == 1 and ks.count("AAA_Reply") == 1
    assert ks.count("PBU") == 3 and ks.count("PBA") == 3
    assert "HI" not in ks


def test_standard_initiators_differ_in_first_message():
    mob = kinds(run_scenario(Scenario(scheme=Scheme.STANDARD_MOBILE)).transcript, "air")
    net = kinds(run_scenario(Scenario(scheme=Scheme.STANDARD_NETWORK)).transcript, "air")
    assert mob[0] == "MIH_Get_Information_request"
    assert net[0] == "MIH_Net_HO_Candidate_Query_request"


def test_fast_flow_pre_registers_with_hi():
    ks = kinds(run_scenario(Scenario(scheme=Scheme.FAST_MIH)).transcript)
    assert ks.index("HI") < ks.index("HACK") < ks.index("MIH_Net_HO_Commit_request")
    assert ks.count("PBU") == 3


@pytest.mark.parametrize("scheme", list(Scheme))
def test_every_scheme_ends_active_at_new_mag(scheme):
    res = run_scenario(Scenario(scheme=scheme))
    assert res.network.bce.is_active_at(MN, "MAG2")
