"""Where the handover delay goes.

Builds the three closed-form delays from their pieces, then runs the
simulator in deterministic mode and checks it lands on the same numbers.
"""

from fpmih.analytic import DEFAULT_CATALOG, frame_delay, handover_delay, packet_delay_wd, packet_delay_wl
from fpmih.params import DelayParams, Scheme
from fpmih.simulator import Scenario, run_scenario

p = DelayParams()
print(f"one frame over the air, ARQ included: {frame_delay(p):.4f} ms")
print(f"a 1024-octet data packet needs 11 frames: {packet_delay_wl(1024, p):.4f} ms")
print(f"a PBU crossing 10 wired hops: {packet_delay_wd(76, 10, p):.4f} ms")
print()

rs, una = DEFAULT_CATALOG.size("M_RS"), DEFAULT_CATALOG.size("M_UNA")
print(f"fast handover waits for RS ({rs} octets), the proposed scheme for UNA ({una} octets).")
print("Both fit in one 100-octet frame, so the two delays coincide:")
for fam in ("standard", "fast", "proposed"):
    print(f"  {fam:9s} {handover_delay(fam, p):9.4f} ms")

small_frames = DelayParams(L_f=40)
print("\nwith 40-octet frames UNA needs two frames and the tie breaks:")
for fam in ("fast", "proposed"):
    print(f"  {fam:9s} {handover_delay(fam, small_frames):9.4f} ms")

print("\nsimulated (deterministic mode):")
for scheme in (Scheme.STANDARD_MOBILE, Scheme.FAST_MIH, Scheme.PROPOSED):
    m = run_scenario(Scenario(scheme=scheme)).metrics
    print(f"  {scheme.value:16s} {m.handover_delay_ms:9.4f} ms, {m.packets_lost} packets lost")

print("\nframe errors push every scheme up:")
for rho in (0.0, 0.1, 0.2, 0.3):
    d = DelayParams(rho_f=rho)
    print(f"  rho_f={rho:.1f}  " + "  ".join(f"{handover_delay(f, d):8.3f}" for f in ("standard", "fast", "proposed")))
