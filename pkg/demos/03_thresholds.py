# %% [markdown]
# Where the closed-form failure estimate for the direct (1, mu) construction drops below 1

# %%
from satgeom.bounds import DIRECT_REGIMES, auxiliary_inequalities, pi_mu_closed, threshold_scan

# %%
for mu, (d, _) in DIRECT_REGIMES.items():
    r = threshold_scan(mu, d, 512)
    print(f"mu={mu} d={d}: first prime power {r.q_star} (last failure {r.last_failure}), "
          f"first integer {r.q_int}, real crossing {r.q_real:.3f}")

# %%
for q in (89, 97, 121, 125):
    print(q, "mu=2:", round(pi_mu_closed(q, 1.2, 2), 4), " mu=4:", round(pi_mu_closed(q, 1.4, 4), 4))

# %%
# the side condition w < (q+1)/2 does not hold yet at these orders
for q, d in ((97, 1.2), (181, 1.3), (125, 1.4)):
    print(q, d, auxiliary_inequalities(q, d)["q+1-2w>0"])
