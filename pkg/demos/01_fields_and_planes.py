# %% [markdown]
# Finite fields and the plane PG(2, q)

# %%
import numpy as np

from satgeom import build_pg2, dump_plane, field_new, line_through, load_plane

# %%
F = field_new(3, 2)  # GF(9)
print("modulus (little-endian):", F.modulus)
x = F(3)
print("x =", x.value, " x^8 =", (x ** 8).value, " 1/x =", (1 / x).value)

# %%
P = build_pg2(F)
print(P.name, "points:", P.n_points, "lines:", P.n_lines)
print("first five points:", P.coords[:5].tolist())

# every point is on q+1 lines, every pair of points on exactly one
print("degrees:", set(np.bincount(P.lines.ravel()).tolist()))
print("line through 0 and 40:", P.lines[line_through(P, 0, 40)].tolist())

# %%
# the plane file format round-trips
text = dump_plane(build_pg2(field_new(2)))
print(text)
print("reloaded:", load_plane(text).name)
