# %% [markdown]
# Saturating sets as parity-check matrices of covering codes

# %%
from satgeom import (brute_covering_radius, build_pg2, check_mcf, dump_matrix,
                     export_parity_check, field_of_order, is_saturating)
from satgeom.codes import length_function_table, write_table_csv
from satgeom.oracle import brute_min_saturating

# %%
P = build_pg2(field_of_order(3))
S = brute_min_saturating(P, 1).witness
H = export_parity_check(P, S)
print(dump_matrix(H))
print("covering radius:", brute_covering_radius(H), " saturating:", bool(is_saturating(P, S)))

# %%
S2 = brute_min_saturating(P, 2).witness
H2 = export_parity_check(P, S2)
print("(2,2)-MCF via geometry:", check_mcf(H2, 2), " via syndromes:", check_mcf(H2, 2, "syndrome"))

# %%
rows = length_function_table([81, 97, 256], [1, 2], [2, 6])
print(write_table_csv(rows))
