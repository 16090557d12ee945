# %% [markdown]
# Coverage multiplicities and random saturating sets

# %%
from satgeom import (ConstructorParams, build_pg2, construct_mu_iterative, construct_saturating,
                     coverage_profile, field_of_order, is_mu_saturating, is_saturating)
from satgeom.oracle import brute_min_saturating

# %%
P = build_pg2(field_of_order(2))
# (0,0,1), (0,1,0), (1,0,0), (1,1,1): no three collinear
arc = [0, 1, 3, 6]
prof = coverage_profile(P, arc)
print("m(Q) outside the set:", prof.multiplicity[prof.outside()].tolist())
print("saturating:", bool(is_saturating(P, arc)), " (1,3)-saturating:",
      bool(is_mu_saturating(P, arc, 3)))

# %%
# smallest sets on tiny planes, found exhaustively
for q in (2, 3, 4):
    Pq = build_pg2(field_of_order(q))
    print(f"q={q}: s_1={brute_min_saturating(Pq, 1).size}  s_2={brute_min_saturating(Pq, 2).size}")

# %%
P64 = build_pg2(field_of_order(64))
res = construct_saturating(P64, ConstructorParams(c=1, seed=7))
print(f"q=64: size {res.size} (w={res.w}), bound {res.size_bound:.3f}, trials {res.trials_used}")

# %%
P81 = build_pg2(field_of_order(81))
res = construct_mu_iterative(P81, 3, ConstructorParams(seed=1))
print("q=81, mu=3: size", res.size, "stage sizes", [s.w + 1 for s in res.stages])
print("D sequence:", [round(D, 4) for D in res.D_sequence], " bound", round(res.size_bound, 2))
print("verified:", bool(is_mu_saturating(P81, res.set, 3)))
