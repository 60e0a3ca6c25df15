"""Human-readable field listing for MIH frames.

The listing printed for a decoded frame is also the input format for
encoding, so ``encode(parse(listing(m))) == encode(m)``::

    kind = MIH_N2N_HO_Commit_response_ext
    version = 1
    transaction_id = 7
    tlv STATUS = 130  # Insufficient resources

Header flags default to 0 and version to 1. TLV values are typed by code:
status as an integer, MN LLA-IID as ``iid:xxxx:xxxx:xxxx:xxxx`` or a MAC,
LMA address as an IP address, HNP list as ``prefix/len`` items separated
by commas, identifiers as text. ``hex:<digits>`` is accepted for any TLV.
"""

import ipaddress
from dataclasses import replace

from .codec import (
    TLV_HNP_LIST,
    TLV_LMA_ADDRESS,
    TLV_MN_LLA_IID,
    TLV_NAMES,
    TLV_STATUS,
    LinkAddress,
    MihMessage,
    Tlv,
    decode_hnp_list,
    decode_status,
    decode_transport_addr,
    encode_hnp_list,
    encode_transport_addr,
    kind_info,
)
from .status import StatusCode

HEADER_FIELDS = ("version", "ack_req", "ack_rsp", "uir", "more", "fragment_no", "transaction_id")
_CODES = {name: code for code, name in TLV_NAMES.items()}


class SpecError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _is_plain_text(value: bytes) -> bool:
    try:
        s = value.decode("utf-8")
    except UnicodeDecodeError:
        return False
    return bool(s) and s.isprintable() and "#" not in s and s == s.strip() and not s.startswith("hex:")


def format_value(tlv: Tlv) -> tuple[str, str]:
    """(value text, comment) for one TLV."""
    v = tlv.value
    try:
        if tlv.code == TLV_STATUS:
            st = decode_status(v)
            return str(st.value), st.meaning
        if tlv.code == TLV_MN_LLA_IID:
            return str(LinkAddress.decode(v)), ""
        if tlv.code == TLV_LMA_ADDRESS:
            return str(decode_transport_addr(v)), ""
        if tlv.code == TLV_HNP_LIST:
            return ", ".join(f"{p}/{n}" for n, p in decode_hnp_list(v)), ""
    except ValueError:
        pass
    if _is_plain_text(v):
        return v.decode("utf-8"), ""
    return "hex:" + v.hex(), ""


def listing(msg: MihMessage) -> str:
    h = msg.header
    info = kind_info(msg.kind)
    lines = [f"kind = {msg.kind}  # sid={info.sid} opcode={info.opcode} aid={info.aid}"]
    for name in HEADER_FIELDS:
        lines.append(f"{name} = {int(getattr(h, name))}")
    lines.append(f"# payload_len = {h.payload_len}")
    for t in msg.tlvs:
        text, note = format_value(t)
        name = TLV_NAMES.get(t.code, str(t.code))
        lines.append(f"tlv {name} = {text}" + (f"  # {note}" if note else ""))
    return "\n".join(lines) + "\n"


def _parse_value(code: int, text: str) -> bytes:
    if text.startswith("hex:"):
        return bytes.fromhex(text[4:])
    if code == TLV_STATUS:
        return bytes([StatusCode(int(text, 0)).value])
    if code == TLV_MN_LLA_IID:
        if text.startswith("iid:"):
            return LinkAddress.iid(int(text[4:].replace(":", ""), 16)).encode()
        return LinkAddress.mac(text).encode()
    if code == TLV_LMA_ADDRESS:
        return encode_transport_addr(text)
    if code == TLV_HNP_LIST:
        items = []
        for item in text.split(","):
            prefix, _, plen = item.strip().partition("/")
            items.append((int(plen), ipaddress.IPv6Address(prefix)))
        return encode_hnp_list(items)
    return text.encode("utf-8")


def parse_spec(text: str) -> MihMessage:
    kind, header, tlvs = None, {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if not sep:
            raise SpecError("expected 'field = value'", lineno)
        try:
            if key == "kind":
                kind_info(val)
                kind = val
            elif key in HEADER_FIELDS:
                header[key] = int(val, 0)
            elif key.startswith("tlv "):
                name = key[4:].strip()
                code = _CODES.get(name)
                if code is None:
                    code = int(name, 0)
                if not 0 <= code <= 255:
                    raise ValueError(f"TLV code {code} out of range")
                tlvs.append(Tlv(code, _parse_value(code, val)))
            else:
                raise ValueError(f"unknown field {key!r}")
        except SpecError:
            raise
        except Exception as exc:  # codec and ipaddress errors alike
            raise SpecError(str(exc), lineno) from None
    if kind is None:
        raise SpecError("missing 'kind = <message kind>'")
    msg = MihMessage.create(kind, tlvs, header.pop("transaction_id", 0))
    flags = {k: (bool(v) if k in ("ack_req", "ack_rsp", "uir", "more") else v)
             for k, v in header.items()}
    return replace(msg, header=replace(msg.header, **flags))
