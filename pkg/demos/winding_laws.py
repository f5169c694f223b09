"""Winding laws at a geometric time: closed forms against exact DP mixing and
a Monte Carlo run."""
from winding.distributions import charfun, geometric_mix_dp, secant_law, secant_table
from winding.excursions import return_angle_prob
from winding.oracle import simulate_winding

k = 0.5
d = secant_table("square", k)
sim = simulate_winding("square", 200_000, seed=1, k=k)
print("alpha   closed       dp-mix       monte-carlo")
for a in sorted(d.buckets):
    if d.buckets[a] < 1e-6:
        continue
    mix, _ = geometric_mix_dp("square", k, a)
    print(f"{a:5d}  {secant_law('square', k, a):.9f}  {mix:.9f}  {sim.buckets.get(a, 0.0):.4f}")

for v in ("dn", "cn"):
    r = charfun(v, k, 0.7)
    print(v, r["lattice_sum"], r["jacobi"])

# first-return angle law of the excursion, m in units of pi/2
print("return angles:", [round(return_angle_prob(m), 6) for m in range(4)])
