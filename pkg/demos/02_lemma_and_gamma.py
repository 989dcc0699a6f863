"""
Translating one mixing level into another
=========================================

If a graph is in one class at level gamma0, it is in every class at some
smaller level.  The translation runs through an eigenvalue bound for the
pencil A - lambda B, which we check numerically here before walking the
small-graph corpus.
"""

# %%
from mixlab import (complete_bipartite, cycle_graph, complete_graph, laplacian_degree_instance,
                    lemma1_rho, min_positive_generalized_eigenvalue, normalized_instance)

for name, g in [("K5", complete_graph(5)), ("C6", cycle_graph(6)), ("K33", complete_bipartite(3, 3))]:
    for inst in (laplacian_degree_instance(g), normalized_instance(g)):
        mu = min_positive_generalized_eigenvalue(inst)
        rho = lemma1_rho(inst.a, inst.b1, inst.b2)
        print(f"{name:4s} smallest positive eigenvalue {mu:.4f} >= bound {rho:.4f}")

# %%
# The resulting gamma maps.  They shrink fast: a graph that is 0.5-mixing in
# one sense is only guaranteed about 0.008 in all three.
from mixlab import theorem1_components, theorem1_gamma

for g0 in (0.1, 0.3, 0.5):
    parts = theorem1_components(g0)
    print(f"gamma0={g0}: overall {theorem1_gamma(g0):.5f}; ",
          ", ".join(f"{k}={v:.4f}" for k, v in sorted(parts.items())))

# %%
# Now the empirical side.  Every connected even-degree graph on 6 vertices
# that lands in any class at 0.3 should land in all three at the smaller level.
from mixlab import cheeger_constant, classify, even_subgraph_corpus, spectral_summary

target = theorem1_gamma(0.3)
hits = fails = 0
for g in even_subgraph_corpus(6, connected_only=True):
    s, ch = spectral_summary(g), cheeger_constant(g).value
    c = classify(g, 0.3, summary=s, cheeger=ch)
    if c.in_F or c.in_C or c.in_M:
        hits += 1
        fails += not classify(g, target, summary=s, cheeger=ch).is_mixing
print(f"{hits} graphs qualify at 0.3, {fails} fail at {target:.5f}")
