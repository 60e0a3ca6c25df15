"""How often does a car in the city section hand over?

Evaluates the closed-form epoch length, crossings and handover rate, then
checks the epoch travel time with a Monte Carlo draw of speeds.
"""

import math

import numpy as np

from fpmih.analytic import epoch_length, epoch_time, expected_crossings, handover_rate
from fpmih.params import MobilityParams

mob = MobilityParams()
print(f"city {mob.a:.0f} m x {mob.b:.0f} m, roads every {mob.d_x:.0f} m, cells of radius {mob.r:.0f} m")
print(f"expected epoch length  {epoch_length(mob):12.4f} m")
print(f"expected crossings     {expected_crossings(mob):12.6f}")
print(f"expected travel time   {epoch_time(mob):12.3f} s")
print(f"handovers per second   {handover_rate(mob):12.4e}")

rng = np.random.default_rng(1)
v = rng.uniform(mob.v_min, mob.v_max, 1_000_000)
print(f"\nMonte Carlo travel time {epoch_length(mob) * np.mean(1 / v):.3f} s "
      f"(closed form uses ln(50)/49 = {math.log(50) / 49:.5f} per unit length)")

print("\nfaster minimum speed, more handovers per second:")
for vmin in (1, 10, 20, 36):
    print(f"  v_min={vmin:2d} m/s  {handover_rate(mob.replace(v_min=vmin)):.4e}")

print("\nthe crossing formula grows with the cell radius:")
for r in (50, 100, 200, 400):
    print(f"  r={r:3d} m  {handover_rate(mob.replace(r=r)):.4e}")
