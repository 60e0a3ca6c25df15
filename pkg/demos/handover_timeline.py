"""Follow one proposed-scheme handover message by message.

Prints the signaling part of the transcript, then what the MN saw on the
data plane around the switch.
"""

from fpmih.params import Scheme
from fpmih.simulator import Scenario, run_scenario

res = run_scenario(Scenario(scheme=Scheme.PROPOSED))
for e in res.transcript:
    if e.is_signaling or e.kind in ("BCE", "HO_START", "BUFFER_FLUSH", "FIRST_RX", "MIH_Link_Down"):
        print(f"{e.t_ms:10.3f}  {e.src:>5s} -> {e.dst:<5s}  {e.kind:38s} {e.note}")

m = res.metrics
print(f"\nhandover delay {m.handover_delay_ms:.3f} ms, {m.packets_generated} packets sent, "
      f"{m.packets_lost} lost, {m.packets_duplicated_suppressed} bicast duplicates dropped by the MN")

print("\nthe same handover without context in the commit (standard, mobile-initiated):")
std = run_scenario(Scenario(scheme=Scheme.STANDARD_MOBILE)).metrics
print(f"handover delay {std.handover_delay_ms:.3f} ms, {std.packets_lost} packets lost")
