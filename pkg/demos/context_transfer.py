"""Carrying the MN context inside the commit request.

The target MAG learns everything it needs for the transient binding from
three extra TLVs, so no HI/HAck exchange is needed.
"""

from fpmih.mih.codec import (
    build_commit_request_ext,
    build_commit_response_ext,
    commit_status,
    decode_message,
    encode_message,
    to_hex,
)
from fpmih.mih.text import listing
from fpmih.protocol.entities import MnProfile
from fpmih.protocol.schemes import context_from_commit

prof = MnProfile()
req = build_commit_request_ext(prof.mn_id, prof.lla_iid, prof.lmaa, prof.hnps, transaction_id=5)
wire = encode_message(req)
print(f"extended commit request, {len(wire)} octets on the wire:")
print(to_hex(wire))
print(listing(decode_message(wire)))

ctx = context_from_commit(decode_message(wire))
print(f"the target MAG now knows {ctx.mn_id}, its LMA {ctx.lmaa} and {len(ctx.hnps)} prefix(es)")
print()

for code in (0, 130, 200):
    status = commit_status(decode_message(encode_message(build_commit_response_ext(code))))
    verdict = "rejected" if status.rejected else "go ahead"
    print(f"status {code:3d}: {status.meaning!r} -> {verdict}")
