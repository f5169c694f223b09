"""Loop generating functions and mean cluster sizes against enumeration."""
from winding.loops import LoopQuery, cluster_expectation, loop_gf
from winding.oracle import cluster_stats, count_loops

ser = loop_gf(LoopQuery(1, "both", 10)).t_coeffs(10)
dp = count_loops(1, "both", 10).biased
print("loops n=1:", [str(ser[j]) for j in range(4, 11, 2)], [str(dp[j]) for j in range(4, 11, 2)])

for l in (2, 3):
    st = cluster_stats(l)
    for n in (1, 2):
        print(f"l={l} n={n} area {cluster_expectation(n, l, 'area')} (enum {st.area.get(n, 0)})"
              f" boundary {cluster_expectation(n, l, 'boundary')} (enum {st.boundary_minus_2.get(n, 0)})")
