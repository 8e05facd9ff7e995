"""Figure rendering for the report path: one PNG next to each CSV."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["render_figure"]


def _column(rows, idx):
    return np.asarray([row[idx] for row in rows], dtype=float)


def render_figure(mode: str, header: list[str], rows: list[list], path: Path) -> None:
    if not rows:
        return
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    if mode == "decay":
        t = _column(rows, 0)
        ax.semilogy(t, np.maximum(_column(rows, 3), 1e-300), label="|c0|^2")
        ax.semilogy(t, np.maximum(_column(rows, 4), 1e-300), "--",
                    label="weak coupling")
        ax.set_xlabel(header[0])
        ax.set_ylabel("survival probability")
        ax.legend()
    elif mode == "spectrum":
        w = _column(rows, 0)
        ax.plot(w, _column(rows, 3), label="g")
        ax.plot(w, _column(rows, 4), "--", label="g_weak")
        ax.set_xlabel(header[0])
        ax.set_ylabel("spectral density")
        ax.legend()
    elif mode in ("field", "asymptotics"):
        ok = np.asarray([row[-1] == "ok" for row in rows])
        r = _column(rows, 0)[ok]
        d = _column(rows, 4)[ok]
        if np.unique(r).size > 1:
            ax.loglog(r, d, "o-", ms=3)
            ax.set_xlabel(header[0])
        else:
            th = _column(rows, 1)[ok]
            ax.plot(th, d / d.max(), "o-", ms=3)
            ax.set_xlabel("theta_rad")
        ax.set_ylabel(header[4])
    elif mode == "angular":
        th = _column(rows, 0)
        ax.plot(th, _column(rows, 1))
        ax.set_xlabel("theta_rad")
        ax.set_ylabel("gamma")
    else:
        plt.close(fig)
        return
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)
