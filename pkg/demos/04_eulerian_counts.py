"""
Counting Eulerian orientations and circuits
===========================================

Exact counts for small even-degree graphs, set against the asymptotic
formulas that use the spanning tree count and a handful of correction
constants.
"""

# %%
from mixlab import (complete_graph, correction_constants, count_eulerian_circuits_best,
                    count_eulerian_circuits_trails, count_eulerian_orientations, ec_approx, eo_approx,
                    spanning_tree_count)

for n in (3, 5, 7):
    g = complete_graph(n)
    eo, ec = count_eulerian_orientations(g), count_eulerian_circuits_best(g)
    print(f"K{n}: t={spanning_tree_count(g)}  EO={eo} (approx {eo_approx(g):.4g})"
          f"  EC={ec} (approx {ec_approx(g):.4g})")

# %%
# Two independent ways to count circuits: sum the BEST formula over all
# Eulerian orientations, or walk every closed trail and divide by m.
g = complete_graph(5)
print("K5 circuits:", count_eulerian_circuits_best(g), "vs", count_eulerian_circuits_trails(g))

# %%
# The correction constants approach 1 for complete graphs.
for n in (5, 10, 20, 50):
    c = correction_constants(complete_graph(n))
    print(f"K{n:<3d} C1={c.c1:.5f} C2={c.c2:.5f} C3={c.c3:.5f} C4={c.c4:.5f} product={c.product:.5f}")
