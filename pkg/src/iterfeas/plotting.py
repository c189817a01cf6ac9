"""Figure rendering for constructed curves (file output only)."""

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def curve_samples(curve, points=512):
    """(x, f(x), Df(x)) arrays on an interior-leaning uniform grid."""
    lo, hi = curve.domain
    # midpoints avoid the breakpoints, where step curves may jump
    xs = lo + (np.arange(points) + 0.5) * (hi - lo) / points
    fx = curve.eval_many(xs)
    dfx = np.array([curve.deriv(float(x)) for x in xs])
    return xs, fx, dfx


def save_curve_plot(curve, path, points=512, title=None):
    """Render f and Df side by side and write the figure to path."""
    xs, fx, dfx = curve_samples(curve, points)
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9, 3.4))
    ax0.plot(xs, fx, lw=1.2)
    ax0.set_xlabel("x")
    ax0.set_ylabel("f(x)")
    ax0.grid(alpha=0.3)
    ax1.semilogy(xs, np.maximum(dfx, 1e-300), lw=1.2, color="tab:red")
    ax1.set_xlabel("x")
    ax1.set_ylabel("Df(x)")
    ax1.grid(alpha=0.3)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
