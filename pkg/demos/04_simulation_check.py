# %% [markdown]
# # Do the exact variances survive a simulation?
#
# Draw the joint field many times, apply both predictors, and compare
# mean squared errors with the closed-form numbers.

# %%
import numpy as np

from cokrig import BivariateModel, cokrige, interleaved_design, krige
from cokrig.montecarlo import mc_validate
from cokrig.predictor import sample_paths

design = interleaved_design(10)
model = BivariateModel(1.0, 1.0, 0.5, 2.0)
paths = sample_paths(design, model, seed=1, count=20_000)
print("empirical Var Y1(0):", paths.target.var(), "(model: 1)")
print("empirical corr Y1, Y2 at 0.2:",
      np.corrcoef(paths.y1[:, list(design.sites1).index(0.2)], paths.y2[:, list(design.sites2).index(0.2)])[0, 1])

# %%
k, c = krige(design, model), cokrige(design, model)
ek = paths.target - k.predict(paths.y1)
ec = paths.target - c.predict(paths.observations())
print(f"kriging   mse {np.mean(ek ** 2):.4f}  exact {k.variance:.4f}")
print(f"cokriging mse {np.mean(ec ** 2):.4f}  exact {c.variance:.4f}")

# %% [markdown]
# The packaged version does the same with standard errors attached.

# %%
print(mc_validate(10, 2.0, 0.5, samples=50_000, seed=42).format())
