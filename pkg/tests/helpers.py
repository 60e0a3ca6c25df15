"""Shared test helpers: random valid messages and golden-file readers."""

import ipaddress
import random
from pathlib import Path

from hypothesis import strategies as st

from fpmih.mih.codec import (
    KINDS,
    LINK_ADDR_IID64,
    LINK_ADDR_MAC48,
    LinkAddress,
    MihMessage,
    Tlv,
    encode_hnp_list,
    encode_transport_addr,
)

TESTDATA = Path(__file__).parent / "testdata"


def read_hex(name):
    from fpmih.mih.codec import from_hex

    return from_hex((TESTDATA / name).read_text())


def _expand(field):
    out = bytearray()
    for tok in field.split():
        if "*" in tok:
            byte, count = tok.split("*")
            out += bytes.fromhex(byte) * int(count)
        else:
            out += bytes.fromhex(tok)
    return bytes(out)


def tlv_vectors():
    rows = []
    for line in (TESTDATA / "tlv_vectors.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        code, value, wire = (p.strip() for p in line.split("|"))
        rows.append((int(code), _expand(value), _expand(wire)))
    return rows


# -- random valid messages ----------------------------------------------------


def _value_for(code, rng):
    if code == 3:
        return bytes([rng.randrange(256)])
    if code == 101:
        kind = rng.choice([LINK_ADDR_MAC48, LINK_ADDR_IID64])
        n = 6 if kind == LINK_ADDR_MAC48 else 8
        return LinkAddress(kind, rng.randbytes(n)).encode()
    if code == 102:
        if rng.random() < 0.5:
            return encode_transport_addr(ipaddress.IPv4Address(rng.randbytes(4)))
        return encode_transport_addr(ipaddress.IPv6Address(rng.randbytes(16)))
    if code == 103:
        k = rng.randint(1, 4)
        return encode_hnp_list(
            [(rng.randint(0, 128), ipaddress.IPv6Address(rng.randbytes(16))) for _ in range(k)]
        )
    # opaque TLVs: lengths around both length-form boundaries
    n = rng.choice([0, 1, 5, 127, 128, 129, 255, 256, 300, rng.randrange(600)])
    return rng.randbytes(n)


def random_message(rng: random.Random) -> MihMessage:
    kind = rng.choice(sorted(KINDS))
    info = KINDS[kind]
    codes = list(info.mandatory)
    for _ in range(rng.randint(0, 3)):
        codes.append(rng.choice([1, 2, 60, 3, 101, 102, 103, 200, 250]))
    rng.shuffle(codes)
    tlvs = [Tlv(c, _value_for(c, rng)) for c in codes]
    msg = MihMessage.create(kind, tlvs, rng.randrange(4096))
    h = msg.header
    from dataclasses import replace

    header = replace(h, ack_req=rng.random() < 0.5, ack_rsp=rng.random() < 0.5,
                     uir=rng.random() < 0.5, more=rng.random() < 0.5,
                     fragment_no=rng.randrange(128))
    return replace(msg, header=header)


@st.composite
def messages(draw):
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_message(random.Random(seed))
