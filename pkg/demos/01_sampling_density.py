# # The sampling distribution of r
#
# The sample correlation of n bivariate normal pairs is not centred on the
# true correlation. Its density is skewed towards zero, and the skew grows
# as |rho| grows.

# %%
from pathlib import Path

import numpy as np

from corrbias import DensityParams, mean_approx, pearson_cdf, pearson_density
from corrbias.svg import line_plot

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

# %% [markdown]
# Density at n = 20 for a handful of correlations.

# %%
r = np.linspace(-1, 1, 401)
series = []
for rho in (-0.8, -0.4, 0.0, 0.4, 0.8):
    series.append((f"rho={rho:g}", r, pearson_density(r, DensityParams(20, rho))))
(OUT / "density_n20.svg").write_text(
    line_plot(series, (-1, 1), (0, 4), "density of r, n=20", "r", "p(r | rho)"))

# %% [markdown]
# At rho = 0 the density is symmetric, and at n = 4 it is flat.

# %%
print(pearson_density([-0.5, 0.0, 0.5], DensityParams(4, 0.0)))

# %% [markdown]
# Half the mass sits below rho only at rho = 0. Elsewhere the median is
# pulled towards zero, so r underestimates positive correlations more
# often than not.

# %%
for rho in (0.0, 0.3, 0.6, 0.9):
    p = DensityParams(20, rho)
    print(f"rho={rho:.1f}  P(r < rho)={pearson_cdf(rho, p):.4f}  E[r]~{mean_approx(p):.4f}")
