# %% [markdown]
# Empirical success rate of a single random draw

# %%
from satgeom import ConstructorParams, build_pg2, field_of_order, monte_carlo

# %%
for q, c in ((32, 1.1), (64, 1.2), (128, 1.2)):
    P = build_pg2(field_of_order(q))
    r = monte_carlo(P, c, 200, ConstructorParams(c=c, seed=1), jobs=2)
    print(f"q={q} c={c}: w={r.w}  rate={r.empirical_rate:.3f}  guaranteed >= {r.theorem2_bound:.3f}")
