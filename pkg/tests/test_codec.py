import ipaddress
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpmih.mih.codec import (
    EmptyHnpList,
    InvalidTlvValue,
    LinkAddress,
    MalformedLength,
    MihHeader,
    MihMessage,
    MissingMandatoryTlv,
    Tlv,
    Truncated,
    UnknownMessageKind,
    ValueTooLong,
    build_commit_request_ext,
    build_commit_response_ext,
    commit_status,
    decode_hnp_list,
    decode_message,
    decode_tlv,
    encode_hnp_list,
    encode_message,
    encode_tlv,
    from_hex,
    to_hex,
)
from fpmih.mih.status import IANA_STATUS, StatusCode
from fpmih.mih.text import SpecError, listing, parse_spec
from fpmih.protocol.entities import MnProfile

from helpers import TESTDATA, messages, random_message, read_hex, tlv_vectors


@pytest.mark.parametrize("code,value,wire", tlv_vectors())
def test_tlv_golden_vectors(code, value, wire):
    assert encode_tlv(Tlv(code, value)) == wire
    tlv, rest = decode_tlv(wire + b"\x99")
    assert tlv == Tlv(code, value) and rest == b"\x99"


def test_commit_request_golden():
    p = MnProfile()
    msg = build_commit_request_ext(p.mn_id, p.lla_iid, p.lmaa, p.hnps, transaction_id=5)
    assert encode_message(msg) == read_hex("commit_request_ext.hex")
    back = decode_message(read_hex("commit_request_ext.hex"))
    assert back == msg
    assert decode_hnp_list(back.find(103).value) == [(64, ipaddress.IPv6Address("2001:db8:1::"))]


def test_commit_response_golden_and_listing():
    data = read_hex("commit_response_ext_130.hex")
    msg = decode_message(data)
    assert commit_status(msg).meaning == "Insufficient resources"
    assert commit_status(msg).rejected
    assert encode_message(build_commit_response_ext(130)) == data
    assert listing(msg) == (TESTDATA / "commit_response_ext_130.txt").read_text()


def test_truncated_payload_reports_offset():
    with pytest.raises(Truncated) as exc:
        decode_message(read_hex("truncated.hex"))
    assert exc.value.offset == 9
    with pytest.raises(Truncated):
        decode_message(b"\x10\x00")


@given(messages())
@settings(max_examples=300, deadline=None)
def test_roundtrip_property(msg):
    assert decode_message(encode_message(msg)) == msg


@given(messages())
@settings(max_examples=100, deadline=None)
def test_listing_is_encode_input(msg):
    assert encode_message(parse_spec(listing(msg))) == encode_message(msg)


def test_random_messages_roundtrip_bulk():
    rng = random.Random(2024)
    for _ in range(1000):
        msg = random_message(rng)
        assert decode_message(encode_message(msg)) == msg


@pytest.mark.parametrize("n", [0, 1, 127, 128])
def test_short_length_form(n):
    assert encode_tlv(Tlv(60, bytes(n)))[1] == n


def test_non_minimal_length_rejected():
    # 5 encoded with the long form is not minimal
    with pytest.raises(MalformedLength):
        decode_tlv(bytes([60, 0x81, 5]) + bytes(5))
    # 200 in two octets where one would do
    with pytest.raises(MalformedLength):
        decode_tlv(bytes([60, 0x82, 0, 200]) + bytes(200))


def test_length_octet_0x80_is_short_form_and_wide_prefix_rejected():
    # 0x80 is the one-octet form of 128, so two octets of value is a truncation
    with pytest.raises(Truncated):
        decode_tlv(bytes([60, 0x80, 1, 2]))
    with pytest.raises(MalformedLength):
        decode_tlv(bytes([60, 0x83, 1, 0, 0]))


def test_value_too_long():
    with pytest.raises(ValueTooLong):
        encode_tlv(Tlv(60, bytes(1 << 16)))


def test_tlv_truncated_value():
    with pytest.raises(Truncated):
        decode_tlv(bytes([60, 4, 1, 2]))


def test_hnp_list_rules():
    with pytest.raises(EmptyHnpList):
        encode_hnp_list([])
    with pytest.raises(InvalidTlvValue):
        encode_hnp_list([(129, "2001:db8::")])
    good = encode_hnp_list([(64, "2001:db8::"), (48, "2001:db8:2::")])
    assert good[0] == 2 and len(good) == 1 + 2 * 17
    with pytest.raises(InvalidTlvValue):
        decode_hnp_list(good[:-1])
    with pytest.raises(InvalidTlvValue):
        decode_hnp_list(b"\x00")


def test_link_address_shapes():
    assert LinkAddress.iid(1).encode() == bytes([2]) + (1).to_bytes(8, "big")
    assert LinkAddress.mac("02:00:00:00:00:01").encode() == bytes([1, 2, 0, 0, 0, 0, 1])
    with pytest.raises(InvalidTlvValue):
        LinkAddress.decode(bytes([2, 1, 2, 3]))


def test_bad_extended_value_in_frame_has_offset():
    msg = MihMessage.create("MIH_N2N_HO_Commit_response_ext", [Tlv(3, b"\x00")])
    data = bytearray(encode_message(msg))
    data[-2:] = b"\x02\x00"  # status TLV claims two octets
    data += b"\x00"
    data[7] += 1
    with pytest.raises(InvalidTlvValue) as exc:
        decode_message(bytes(data))
    assert exc.value.offset == 8


def test_missing_mandatory_tlv():
    msg = MihMessage.create("MIH_N2N_HO_Commit_request_ext", [Tlv(60, b"mn")])
    with pytest.raises(MissingMandatoryTlv):
        encode_message(msg)
    frame = MihHeader(3, 1, 13).encode()
    with pytest.raises(MissingMandatoryTlv):
        decode_message(frame)


def test_unknown_kind():
    with pytest.raises(UnknownMessageKind):
        MihMessage.create("MIH_Nonsense")
    with pytest.raises(UnknownMessageKind):
        decode_message(MihHeader(15, 3, 1000).encode())


def test_plain_and_extended_commit_are_distinct_kinds():
    plain = MihMessage.create("MIH_N2N_HO_Commit_request", [Tlv(60, b"mn")])
    assert decode_message(encode_message(plain)).kind == "MIH_N2N_HO_Commit_request"


@pytest.mark.parametrize("code", sorted(IANA_STATUS))
def test_status_meanings(code):
    msg = decode_message(encode_message(build_commit_response_ext(code)))
    assert commit_status(msg).meaning == IANA_STATUS[code]


@given(st.integers(min_value=0, max_value=255))
def test_status_classification(code):
    s = StatusCode(code)
    if code in IANA_STATUS:
        assert s.meaning == IANA_STATUS[code]
    else:
        assert s.meaning == "Unassigned"
    assert s.rejected == (128 <= code <= 132)


def test_hex_helpers():
    data = bytes(range(40))
    assert from_hex(to_hex(data)) == data
    assert from_hex("0a 0b # comment\n0c") == b"\n\x0b\x0c"
    with pytest.raises(ValueError):
        from_hex("abc")


def test_spec_errors_carry_line():
    with pytest.raises(SpecError) as exc:
        parse_spec("kind = MIH_Link_Up\ntlv LMA_ADDRESS = not-an-address\n")
    assert exc.value.line == 2
    with pytest.raises(SpecError):
        parse_spec("tlv STATUS = 1\n")
