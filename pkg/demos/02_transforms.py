# # Pushing the estimate upwards
#
# Four maps from r_hat to a corrected estimate. The first three are simple
# geometric tweaks; the last one solves F(r_hat | t) = 1 - alpha for t.

# %%
from pathlib import Path

import numpy as np

from corrbias import AffineTowardOne, NegativeShrink, QuantileBias, UpwardShift
from corrbias.underestimation import transform_curve
from corrbias.svg import line_plot

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

grid = np.linspace(-1, 1, 81)
maps = {
    "affine a=0.23": AffineTowardOne(0.23),
    "shrink b=0.7": NegativeShrink(0.7),
    "shrink b=1": NegativeShrink(1.0),
    "shift c=0.21": UpwardShift(0.21),
    "quantile 0.95": QuantileBias(0.95, 20),
}

# %%
series = [(label, grid, transform_curve(t, grid).r_tilde) for label, t in maps.items()]
(OUT / "transforms.svg").write_text(
    line_plot(series, (-1, 1), (-1, 1), "corrected estimators", "r_hat", "r_tilde"))

# %% [markdown]
# Only the quantile map is a bijection of [-1, 1]. The others leave part of
# the parameter range unreachable.

# %%
for label, t in maps.items():
    print(f"{label:15s} image starts at {t.apply(-1.0) + 0.0:+.3f}")

# %% [markdown]
# Several confidence levels at n = 20. Values near -1 are moved further
# than values near +1, and alpha = 0.5 stays close to the identity.

# %%
series = []
for alpha in (0.999, 0.99, 0.95, 0.5):
    series.append((f"alpha={alpha}", grid, transform_curve(QuantileBias(alpha, 20), grid).r_tilde))
(OUT / "quantile_levels.svg").write_text(
    line_plot(series, (-1, 1), (-1, 1), "quantile estimator, n=20", "r_hat", "r_tilde"))
