"""Winding-constrained walk counts three ways, and a look at the cone series."""
from winding.angles import WalkQuery
from winding.blocks import assemble_W_ints
from winding.excursions import ExcursionQuery, cone_F_ints, hypergeometric_gessel
from winding.oracle import count_walks
from winding.spectral import spectral_W_ints

# origin-avoiding walks from (3,0) to (-3,0), winding exactly pi;
# the spectral sum, the operator blocks and the DP
q = WalkQuery(3, 3, 4, order=10)
for name, f in (("spectral", spectral_W_ints), ("operator", assemble_W_ints),
                ("dp", lambda q: count_walks(q).as_list(q.order))):
    print(f"{name:9s}", f(q))

# the narrow cone (-pi/4, pi/2): excursions here are Gessel walks
g = cone_F_ints(ExcursionQuery(0, -1, 2, 20))[2::2]
print("cone (-pi/4, pi/2):", g)
print("hypergeometric    :", [int(hypergeometric_gessel(n)) for n in range(len(g))])
