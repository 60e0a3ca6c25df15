"""Wire codec for the MIH message subset and the extended commit TLVs.

Frame layout (8-octet header, big-endian)::

    octet 0   version(4) | ack_req | ack_rsp | uir | more
    octet 1   fragment_no(7) | reserved(1)
    octet 2-3 sid(4) | opcode(2) | aid(10)
    octet 4-5 reserved(4) | transaction_id(12)
    octet 6-7 payload_len(16)

followed by ``payload_len`` octets of TLVs. A TLV is ``code(1) | length |
value`` where length is a single octet for values up to 128 octets and
``0x80 + k`` followed by ``k`` big-endian octets otherwise.
"""

import ipaddress
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

from .status import StatusCode

HEADER_LEN = 8
MIH_VERSION = 1
MAX_VALUE_LEN = 1 << 16

TLV_SOURCE_ID = 1
TLV_DESTINATION_ID = 2
TLV_STATUS = 3
TLV_MN_ID = 60
TLV_MN_LLA_IID = 101
TLV_LMA_ADDRESS = 102
TLV_HNP_LIST = 103

EXTENDED_CODES = (TLV_MN_LLA_IID, TLV_LMA_ADDRESS, TLV_HNP_LIST)

LINK_ADDR_MAC48 = 0x01
LINK_ADDR_IID64 = 0x02
_LINK_ADDR_LEN = {LINK_ADDR_MAC48: 6, LINK_ADDR_IID64: 8}

FAMILY_IPV4 = 1
FAMILY_IPV6 = 2


class CodecError(Exception):
    """Base class for wire-format errors; ``offset`` points into the input."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class ValueTooLong(CodecError):
    pass


class Truncated(CodecError):
    pass


class MalformedLength(CodecError):
    pass


class InvalidTlvValue(MalformedLength):
    """An extended TLV whose value does not have the registered shape."""


class UnknownMessageKind(CodecError):
    pass


class MissingMandatoryTlv(CodecError):
    pass


class EmptyHnpList(CodecError):
    pass


# -- registry -----------------------------------------------------------------


@dataclass(frozen=True)
class KindInfo:
    kind: str
    sid: int
    opcode: int
    aid: int
    mandatory: tuple


def _load_registry():
    text = resources.files("fpmih.data").joinpath("mih_registry.json").read_text()
    raw = json.loads(text)
    by_kind, by_id = {}, {}
    for entry in raw["messages"]:
        info = KindInfo(
            entry["kind"], entry["sid"], entry["opcode"], entry["aid"], tuple(entry["mandatory"])
        )
        key = (info.sid, info.opcode, info.aid)
        if info.kind in by_kind or key in by_id:
            raise RuntimeError(f"registry is not one-to-one at {info.kind}")
        by_kind[info.kind] = info
        by_id[key] = info
    tlv_names = {int(k): v for k, v in raw["tlvs"].items()}
    return by_kind, by_id, tlv_names


KINDS, _KINDS_BY_ID, TLV_NAMES = _load_registry()


def kind_info(kind: str) -> KindInfo:
    try:
        return KINDS[kind]
    except KeyError:
        raise UnknownMessageKind(f"unknown message kind {kind!r}") from None


def lookup_kind(sid: int, opcode: int, aid: int) -> KindInfo:
    try:
        return _KINDS_BY_ID[(sid, opcode, aid)]
    except KeyError:
        raise UnknownMessageKind(
            f"no message registered for sid={sid} opcode={opcode} aid={aid}", 2
        ) from None


# -- TLV ----------------------------------------------------------------------


@dataclass(frozen=True)
class Tlv:
    code: int
    value: bytes = b""

    def __post_init__(self):
        if not 0 <= self.code <= 255:
            raise ValueError(f"TLV code out of range: {self.code}")

    @property
    def name(self) -> str:
        return TLV_NAMES.get(self.code, f"TLV_{self.code}")


def _encode_length(n: int) -> bytes:
    if n <= 128:
        return bytes([n])
    k = (n.bit_length() + 7) // 8
    return bytes([128 + k]) + n.to_bytes(k, "big")


def encode_tlv(tlv: Tlv) -> bytes:
    n = len(tlv.value)
    if n >= MAX_VALUE_LEN:
        raise ValueTooLong(f"TLV {tlv.code} value is {n} octets, limit is {MAX_VALUE_LEN - 1}")
    return bytes([tlv.code]) + _encode_length(n) + bytes(tlv.value)


def decode_tlv(data: bytes, offset: int = 0) -> tuple[Tlv, bytes]:
    """Decode one TLV from the front of ``data``; return it and the remainder.

    ``offset`` only shifts the positions reported in errors.
    """
    data = bytes(data)
    if len(data) < 2:
        raise Truncated("TLV header needs 2 octets", offset + len(data))
    code, first = data[0], data[1]
    pos = 2
    if first <= 128:
        n = first
    else:
        k = first - 128
        if k > 2:
            raise MalformedLength(f"length field of {k} octets exceeds 16-bit limit", offset + 1)
        if len(data) < pos + k:
            raise Truncated("TLV length field cut short", offset + len(data))
        n = int.from_bytes(data[pos:pos + k], "big")
        if n <= 128 or data[pos] == 0:
            raise MalformedLength(f"non-minimal length encoding for {n}", offset + 1)
        pos += k
    if len(data) < pos + n:
        raise Truncated(
            f"TLV {code} declares {n} value octets, {len(data) - pos} available",
            offset + len(data),
        )
    return Tlv(code, data[pos:pos + n]), data[pos + n:]


# -- typed TLV values ---------------------------------------------------------


@dataclass(frozen=True)
class LinkAddress:
    kind: int
    address: bytes

    def __post_init__(self):
        want = _LINK_ADDR_LEN.get(self.kind)
        if want is None or len(self.address) != want:
            raise InvalidTlvValue(f"bad link address kind={self.kind} len={len(self.address)}")

    @classmethod
    def iid(cls, value: int) -> "LinkAddress":
        return cls(LINK_ADDR_IID64, value.to_bytes(8, "big"))

    @classmethod
    def mac(cls, text: str) -> "LinkAddress":
        return cls(LINK_ADDR_MAC48, bytes.fromhex(text.replace(":", "").replace("-", "")))

    def encode(self) -> bytes:
        return bytes([self.kind]) + self.address

    @classmethod
    def decode(cls, value: bytes) -> "LinkAddress":
        if not value:
            raise InvalidTlvValue("empty link address")
        return cls(value[0], bytes(value[1:]))

    def __str__(self):
        if self.kind == LINK_ADDR_MAC48:
            return ":".join(f"{b:02x}" for b in self.address)
        return "iid:" + ":".join(self.address[i:i + 2].hex() for i in range(0, 8, 2))


def encode_transport_addr(addr) -> bytes:
    addr = ipaddress.ip_address(addr)
    family = FAMILY_IPV4 if addr.version == 4 else FAMILY_IPV6
    return bytes([family]) + addr.packed


def decode_transport_addr(value: bytes):
    if len(value) == 5 and value[0] == FAMILY_IPV4:
        return ipaddress.IPv4Address(value[1:])
    if len(value) == 17 and value[0] == FAMILY_IPV6:
        return ipaddress.IPv6Address(value[1:])
    raise InvalidTlvValue(f"bad LMA address value ({len(value)} octets)")


def encode_hnp_list(hnps: Sequence[tuple]) -> bytes:
    if not hnps:
        raise EmptyHnpList("home network prefix list is empty")
    if len(hnps) > 255:
        raise ValueTooLong("at most 255 prefixes fit the count octet")
    out = bytearray([len(hnps)])
    for plen, prefix in hnps:
        if not 0 <= plen <= 128:
            raise InvalidTlvValue(f"prefix length {plen} exceeds 128")
        out.append(plen)
        out += ipaddress.IPv6Address(prefix).packed
    return bytes(out)


def decode_hnp_list(value: bytes) -> list[tuple]:
    if not value:
        raise InvalidTlvValue("empty HNP list value")
    count = value[0]
    if count == 0:
        raise InvalidTlvValue("HNP list with zero elements")
    if len(value) != 1 + 17 * count:
        raise InvalidTlvValue(f"HNP list declares {count} elements in {len(value) - 1} octets")
    out = []
    for i in range(count):
        chunk = value[1 + 17 * i:18 + 17 * i]
        if chunk[0] > 128:
            raise InvalidTlvValue(f"prefix length {chunk[0]} exceeds 128")
        out.append((chunk[0], ipaddress.IPv6Address(chunk[1:])))
    return out


def decode_status(value: bytes) -> StatusCode:
    if len(value) != 1:
        raise InvalidTlvValue(f"status value must be 1 octet, got {len(value)}")
    return StatusCode(value[0])


def validate_tlv(tlv: Tlv) -> None:
    """Raise InvalidTlvValue if an extended/status TLV has the wrong shape."""
    if tlv.code == TLV_MN_LLA_IID:
        LinkAddress.decode(tlv.value)
    elif tlv.code == TLV_LMA_ADDRESS:
        decode_transport_addr(tlv.value)
    elif tlv.code == TLV_HNP_LIST:
        decode_hnp_list(tlv.value)
    elif tlv.code == TLV_STATUS:
        decode_status(tlv.value)


# -- messages -----------------------------------------------------------------


@dataclass(frozen=True)
class MihHeader:
    sid: int
    opcode: int
    aid: int
    transaction_id: int = 0
    payload_len: int = 0
    version: int = MIH_VERSION
    ack_req: bool = False
    ack_rsp: bool = False
    uir: bool = False
    more: bool = False
    fragment_no: int = 0

    def encode(self) -> bytes:
        for name, value, bits in (
            ("version", self.version, 4),
            ("fragment_no", self.fragment_no, 7),
            ("sid", self.sid, 4),
            ("opcode", self.opcode, 2),
            ("aid", self.aid, 10),
            ("transaction_id", self.transaction_id, 12),
            ("payload_len", self.payload_len, 16),
        ):
            if not 0 <= value < (1 << bits):
                raise ValueError(f"{name}={value} does not fit in {bits} bits")
        b0 = (
            (self.version << 4)
            | (self.ack_req << 3)
            | (self.ack_rsp << 2)
            | (self.uir << 1)
            | int(self.more)
        )
        b1 = self.fragment_no << 1
        mid = (self.sid << 12) | (self.opcode << 10) | self.aid
        return (
            bytes([b0, b1])
            + mid.to_bytes(2, "big")
            + self.transaction_id.to_bytes(2, "big")
            + self.payload_len.to_bytes(2, "big")
        )

    @classmethod
    def decode(cls, data: bytes) -> "MihHeader":
        if len(data) < HEADER_LEN:
            raise Truncated(f"header needs {HEADER_LEN} octets, got {len(data)}", len(data))
        b0, b1 = data[0], data[1]
        mid = int.from_bytes(data[2:4], "big")
        return cls(
            sid=mid >> 12,
            opcode=(mid >> 10) & 0x3,
            aid=mid & 0x3FF,
            transaction_id=int.from_bytes(data[4:6], "big") & 0xFFF,
            payload_len=int.from_bytes(data[6:8], "big"),
            version=b0 >> 4,
            ack_req=bool(b0 & 0x8),
            ack_rsp=bool(b0 & 0x4),
            uir=bool(b0 & 0x2),
            more=bool(b0 & 0x1),
            fragment_no=b1 >> 1,
        )


@dataclass(frozen=True)
class MihMessage:
    header: MihHeader
    kind: str
    tlvs: tuple = field(default_factory=tuple)

    @classmethod
    def create(cls, kind: str, tlvs: Iterable[Tlv] = (), transaction_id: int = 0) -> "MihMessage":
        """Build a message with header ids from the registry and a correct payload_len."""
        info = kind_info(kind)
        tlvs = tuple(tlvs)
        plen = sum(len(encode_tlv(t)) for t in tlvs)
        header = MihHeader(info.sid, info.opcode, info.aid, transaction_id, plen)
        return cls(header, kind, tlvs)

    def find(self, code: int):
        for t in self.tlvs:
            if t.code == code:
                return t
        return None


def _check_mandatory(kind: KindInfo, tlvs, offset=None):
    present = {t.code for t in tlvs}
    missing = [c for c in kind.mandatory if c not in present]
    if missing:
        names = ", ".join(TLV_NAMES.get(c, str(c)) for c in missing)
        raise MissingMandatoryTlv(f"{kind.kind} lacks mandatory TLV(s): {names}", offset)


def encode_message(msg: MihMessage) -> bytes:
    info = kind_info(msg.kind)
    h = msg.header
    if (h.sid, h.opcode, h.aid) != (info.sid, info.opcode, info.aid):
        raise UnknownMessageKind(
            f"header ids ({h.sid},{h.opcode},{h.aid}) do not match kind {msg.kind}"
        )
    _check_mandatory(info, msg.tlvs)
    for t in msg.tlvs:
        validate_tlv(t)
    payload = b"".join(encode_tlv(t) for t in msg.tlvs)
    if len(payload) >= MAX_VALUE_LEN:
        raise ValueTooLong(f"payload of {len(payload)} octets exceeds 16-bit length")
    header = MihHeader(
        h.sid, h.opcode, h.aid, h.transaction_id, len(payload),
        h.version, h.ack_req, h.ack_rsp, h.uir, h.more, h.fragment_no,
    )
    return header.encode() + payload


def decode_message(data: bytes) -> MihMessage:
    data = bytes(data)
    header = MihHeader.decode(data)
    info = lookup_kind(header.sid, header.opcode, header.aid)
    end = HEADER_LEN + header.payload_len
    if len(data) < end:
        raise Truncated(
            f"payload_len {header.payload_len} exceeds {len(data) - HEADER_LEN} available octets",
            len(data),
        )
    rest = data[HEADER_LEN:end]
    tlvs = []
    pos = HEADER_LEN
    while rest:
        before = len(rest)
        tlv, rest = decode_tlv(rest, pos)
        try:
            validate_tlv(tlv)
        except CodecError as exc:
            raise type(exc)(str(exc), pos) from None
        tlvs.append(tlv)
        pos += before - len(rest)
    _check_mandatory(info, tlvs, HEADER_LEN)
    return MihMessage(header, info.kind, tuple(tlvs))


# -- extended commit builders -------------------------------------------------


def build_commit_request_ext(mn_id: str, lla_iid: LinkAddress, lmaa, hnps, transaction_id=0):
    if not hnps:
        raise EmptyHnpList("home network prefix list is empty")
    tlvs = (
        Tlv(TLV_MN_ID, mn_id.encode()),
        Tlv(TLV_MN_LLA_IID, lla_iid.encode()),
        Tlv(TLV_LMA_ADDRESS, encode_transport_addr(lmaa)),
        Tlv(TLV_HNP_LIST, encode_hnp_list(hnps)),
    )
    return MihMessage.create("MIH_N2N_HO_Commit_request_ext", tlvs, transaction_id)


def build_commit_response_ext(status, transaction_id=0):
    if not isinstance(status, StatusCode):
        status = StatusCode(status)
    return MihMessage.create(
        "MIH_N2N_HO_Commit_response_ext", (Tlv(TLV_STATUS, bytes([status.value])),), transaction_id
    )


def commit_status(msg: MihMessage) -> StatusCode:
    tlv = msg.find(TLV_STATUS)
    if tlv is None:
        raise MissingMandatoryTlv(f"{msg.kind} carries no status")
    return decode_status(tlv.value)


# -- hex dumps ----------------------------------------------------------------


def to_hex(data: bytes, per_line: int = 16) -> str:
    lines = [
        " ".join(f"{b:02x}" for b in data[i:i + per_line]) for i in range(0, len(data), per_line)
    ]
    return "\n".join(lines) + "\n"


def from_hex(text: str) -> bytes:
    """Parse whitespace-separated two-digit hex octets; ``#`` starts a comment."""
    out = bytearray()
    for lineno, line in enumerate(text.splitlines(), 1):
        for tok in line.split("#", 1)[0].split():
            if len(tok) != 2:
                raise ValueError(f"line {lineno}: expected two hex digits, got {tok!r}")
            out.append(int(tok, 16))
    return bytes(out)
