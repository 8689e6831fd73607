# %% [markdown]
# # Where the cokriging weight goes
#
# Y1 on every other grid point, Y2 on all of them, predict Y1 at 0.
# Solve the full system and look at which observations actually get weight.

# %%
import numpy as np

from cokrig import BivariateModel, cokrige, cokrige_weights_closed, interleaved_design, krige

n, alpha, r = 10, 2.0, 0.5
design = interleaved_design(n)
model = BivariateModel(1.0, 1.0, r, alpha)
print("Y1 sites:", np.round(design.sites1, 3))
print("Y2 sites:", np.round(design.sites2, 3))

# %%
pred = cokrige(design, model)
for (var, site), w in pred.weight_map.items():
    flag = "" if abs(w) > 1e-10 else "   (zero)"
    print(f"Y{var}({site:+.1f})  {w:+.3e}{flag}")

# %% [markdown]
# Six survivors. Compare them with the closed forms.

# %%
closed = cokrige_weights_closed(n, alpha, r)
for key, b in zip(closed.support_keys(n), closed.as_tuple()):
    print(key, f"dense {pred.weight(*key):+.15f}  closed {b:+.15f}")

# %%
k = krige(design, model)
print(f"kriging variance   {k.variance:.10f}")
print(f"cokriging variance {pred.variance:.10f}")
print(f"ratio              {pred.variance / k.variance:.10f}  (limit {1 - r * r / 2})")

# %% [markdown]
# Flip the sign of r: the Y2 weights flip, the Y1 weights and the variance don't.

# %%
neg = cokrige(design, BivariateModel(1.0, 1.0, -r, alpha))
print(np.allclose(neg.weights[:n], pred.weights[:n]), np.allclose(neg.weights[n:], -pred.weights[n:]))
print(neg.variance, pred.variance)
