"""Figures for learner runs, written with the non-interactive Agg backend."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_size_stats(stats, path, title="exact learner"):
    """Clause count and solve time per size bound; SAT bounds drawn filled."""
    ns = [s.n for s in stats]
    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(6, 5))
    colors = ["tab:green" if s.verdict == "SAT" else "tab:gray" for s in stats]
    top.bar(ns, [s.clauses for s in stats], color=colors)
    top.set_ylabel("clauses")
    top.set_title(title)
    bottom.plot(ns, [s.solve_seconds for s in stats], marker="o", color="tab:blue")
    bottom.set_ylabel("solve time [s]")
    bottom.set_xlabel("size bound n")
    bottom.set_xticks(ns)
    return _finish(fig, path)


def plot_rounds(rounds, path, title="primitive sampling"):
    """Progress of the primitive search: separated pairs (or pairs left) per round."""
    xs = [r["round"] for r in rounds]
    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(6, 5))
    if rounds and "separated" in rounds[0]:
        top.plot(xs, [r["separated"] / r["pairs"] for r in rounds], marker=".", color="tab:green")
        top.set_ylabel("separated pairs (fraction)")
        top.set_ylim(0, 1.05)
    else:
        top.plot(xs, [r.get("remaining", 0) for r in rounds], marker=".", color="tab:red")
        top.set_ylabel("unseparated pairs")
    top.set_title(title)
    bottom.bar(xs, [r["size"] for r in rounds],
               color=["tab:blue" if r["new"] else "tab:gray" for r in rounds])
    bottom.set_ylabel("primitive size")
    bottom.set_xlabel("round")
    return _finish(fig, path)
