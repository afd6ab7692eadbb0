"""Render figure-N.csv files written by ``thermocasimir figure N`` (needs matplotlib)."""

from __future__ import annotations

import argparse
import csv
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_rows(path: Path) -> list[dict]:
    with path.open() as fh:
        return list(csv.DictReader(ln for ln in fh if not ln.startswith("#")))


def plot(path: Path) -> Path:
    rows = read_rows(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    if "gamma_tilde" in rows[0]:
        ax.plot([float(r["T_K"]) for r in rows], [float(r["gamma_tilde"]) for r in rows])
        ax.set(xlabel="T [K]", ylabel="gamma tilde")
    else:
        by_rule = defaultdict(list)
        for r in rows:
            by_rule[r["prescription"]].append(r)
        x_key = "a_m" if len({r["a_m"] for r in rows}) > 1 else "T_K"
        scale = 1e6 if x_key == "a_m" else 1.0
        for rule, rs in by_rule.items():
            ax.plot([float(r[x_key]) * scale for r in rs], [float(r["S_MeV_per_m2_K"]) for r in rs], label=rule)
        ax.axhline(0.0, color="grey", lw=0.5)
        ax.set(xlabel="a [um]" if x_key == "a_m" else "T [K]", ylabel="S [MeV/(m^2 K)]")
        ax.legend()
    out = path.with_suffix(".png")
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", nargs="+", type=Path)
    for p in parser.parse_args().csv:
        print(plot(p))


if __name__ == "__main__":
    main()
