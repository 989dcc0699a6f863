"""
Three ways a graph can mix
==========================

A dense graph can be "well connected" in a spectral sense (large second
Laplacian eigenvalue), a combinatorial sense (no cheap cut) or a random-walk
sense (a fast-mixing walk).  This script measures all three on a few small
families and shows where they agree and where they come apart.
"""

# %%
# Start with the complete graph.  Every vertex sees every other one, so all
# three measures sit at their maximum.
from mixlab import classify, complete_graph, spectral_summary, cheeger_constant

g = complete_graph(8)
s = spectral_summary(g)
print("K8  lambda2 =", s.lambda2, " gap =", round(s.spectral_gap, 4),
      " cheeger =", cheeger_constant(g).value)

# %%
# Two cliques joined by a perfect matching.  Each side is dense, but only n
# edges cross the middle, so the cut ratio falls like 1/n once you divide by n.
from mixlab import two_cliques_matched

for n in (4, 6, 8, 10):
    g = two_cliques_matched(n)
    ch = cheeger_constant(g)
    print(f"n={n:2d}  vertices={g.n:2d}  lambda2/n={spectral_summary(g).lambda2 / n:.3f}"
          f"  i/n={ch.value / n:.3f}  witness side={sorted(ch.witness)}")

# %%
# A clique with one pendant vertex hanging off it.  The walk gets stuck on
# the pendant, and the minimum degree is 1, so random-walk mixing fails even
# though the clique part is as dense as it gets.
from mixlab import clique_plus_pendant

for n in (10, 40, 160):
    s = spectral_summary(clique_plus_pendant(n))
    print(f"n={n:3d}  chi2={s.chi2:.4f}  chi2*sqrt(n)={s.chi2 * n ** 0.5:.3f}  min degree={s.min_degree}")

# %%
# Put the classification side by side at a fixed level gamma.
for name, g in [("K8", complete_graph(8)), ("two cliques", two_cliques_matched(8)),
                ("pendant", clique_plus_pendant(8))]:
    c = classify(g, 0.2)
    print(f"{name:12s} F={c.in_F!s:5s} C={c.in_C!s:5s} M={c.in_M!s:5s}  mixing={c.is_mixing}")
