# %% [markdown]
# # Two shortcuts, and when they apply
#
# 1. Exponential model on a line: kriging only needs the two bracketing sites.
# 2. Same sites for both variables: Y2 adds nothing.

# %%
import numpy as np

from cokrig import BivariateModel, Design, cokrige, krige, markov_krige
from cokrig.exceptions import PreconditionError

rng = np.random.default_rng(7)
sites = np.sort(rng.uniform(-1, 1, 40))
design = Design(sites, [], target=0.137)
model = BivariateModel(1.0, 1.0, 0.0, 3.0)

full, fast = krige(design, model), markov_krige(design, model)
print("sites with weight:", full.support())
print("max weight difference:", np.abs(full.weights - fast.weights).max())
print("variances:", full.variance, fast.variance)

# %% [markdown]
# With nu = 1.5 the field is smoother and the shortcut no longer holds.

# %%
smooth = BivariateModel(1.0, 1.0, 0.0, 3.0, nu=1.5)
print("nonzero weights at nu=1.5:", len(krige(design, smooth).support()))
try:
    markov_krige(design, smooth)
except PreconditionError as exc:
    print("markov_krige refuses:", exc)

# %%
corr = BivariateModel(2.0, 0.5, 0.9, 3.0)
for label, s2 in [("same sites", sites), ("Y2 on half the Y1 sites", sites[::2]),
                  ("Y2 on extra sites", np.concatenate([sites, sites[:-1] + 1e-3]))]:
    d = Design(sites, s2, target=0.137)
    c, k = cokrige(d, corr, method="dense"), krige(d, corr)
    print(f"{label:24s} cokrig/krig variance = {c.variance / k.variance:.12f}")
