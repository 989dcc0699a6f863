"""
Error against connectivity
==========================

Sweep every connected even-degree spanning subgraph of K6, compute the
relative error of both asymptotic formulas, and plot it against lambda2/n.
Writes ``error_eo.csv`` and ``error_eo.svg`` into the working directory.
"""

# %%
from mixlab import corpus_sweep, quartile_means, scatter_svg, write_chart_csv

rows = list(corpus_sweep(6))
print(len(rows), "graphs")

for metric in ("eo", "ec"):
    bottom, top = quartile_means(rows, metric)
    print(f"{metric}: mean |error| in lowest lambda2/n quartile {bottom:.3f}, highest {top:.3f}")

# %%
with open("error_eo.csv", "w", newline="\n") as fh:
    write_chart_csv(rows, fh)
pts = [(r.lambda2_over_n, r.error_eo) for r in rows]
with open("error_eo.svg", "w") as fh:
    fh.write(scatter_svg([x for x, _ in pts], [y for _, y in pts], title="n = 6", ylabel="Error (EO)"))
print("wrote error_eo.csv and error_eo.svg")
