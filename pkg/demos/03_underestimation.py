# # How often is rho underestimated?

# %%
from pathlib import Path

from corrbias import AffineTowardOne, Identity, NegativeShrink, QuantileBias, UpwardShift, curve
from corrbias.underestimation import default_grid
from corrbias.svg import line_plot

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)
grid = default_grid()


def plot(name, title, transforms):
    series = [(label, grid, curve(t, 20, grid).prob) for label, t in transforms]
    (OUT / name).write_text(line_plot(series, (-1, 1), (0, 1), title, "rho", "P(r_tilde < rho)"))


# %%
plot("affine.svg", "affine, n=20",
     [(f"a={a}", AffineTowardOne(a)) for a in (0.0, 0.01, 0.05, 0.1, 0.238, 0.5)])
plot("shrink.svg", "shrink, n=20",
     [(f"b={b}", NegativeShrink(b)) for b in (0.0, 0.01, 0.05, 0.1, 0.5, 0.95)])
plot("shift.svg", "shift, n=20",
     [(f"c={c}", UpwardShift(c)) for c in (0.0, 0.01, 0.1, 0.21, 0.3)])

# %% [markdown]
# The raw estimate underestimates a little under or over half the time,
# depending on rho. The quantile estimator is flat at 1 - alpha.

# %%
raw = curve(Identity(), 20, grid).prob
flat = curve(QuantileBias(0.95, 20), 20, grid).prob
print(f"identity: {raw.min():.3f} .. {raw.max():.3f}")
print(f"quantile: {flat.min():.6f} .. {flat.max():.6f}")
