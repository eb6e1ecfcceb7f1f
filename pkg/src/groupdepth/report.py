"""Corpus report: delimited summary table plus rendered figures.

Builds the enumerable corpus, writes one CSV row per group, and renders
three figures: a Hasse diagram of a small lattice, the depth/length
scatter for the corpus, and the smooth bound curves. Everything lands in
one output directory; matplotlib runs on the Agg backend so the command
works headless.
"""

from __future__ import annotations

import csv
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import formulas
from .acceptance import CONTROL_CORPUS, LatticeCache, P_GROUP_CORPUS, SIMPLE_CORPUS
from .numtheory import big_omega

_CSV_COLUMNS = ("target", "order", "subgroups", "depth", "length",
                "chain_difference", "chain_ratio", "simple")


def _corpus_rows(cache: LatticeCache):
    seen = set()
    for spec, simple in (
        [(s, True) for s in SIMPLE_CORPUS]
        + [(s, False) for s in P_GROUP_CORPUS]
        + [(s, False) for s in CONTROL_CORPUS]
    ):
        lat = cache.get(spec)
        if lat.group.label in seen:
            continue
        seen.add(lat.group.label)
        cr = lat.chain_ratio()
        yield {
            "target": spec,
            "order": lat.group.order,
            "subgroups": lat.node_count,
            "depth": lat.depth(),
            "length": lat.length(),
            "chain_difference": lat.chain_difference(),
            "chain_ratio": f"{cr.numerator}/{cr.denominator}",
            "simple": simple,
        }, lat


def _write_csv(path: Path, rows: list[dict]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)


def _hasse_figure(path: Path, lat) -> None:
    # Layer nodes by how many prime factors their order has; the cover
    # edges then always point one or more layers up.
    layers = defaultdict(list)
    for node in lat.nodes:
        layers[big_omega(node.order)].append(node.ident)
    pos = {}
    for layer, idents in sorted(layers.items()):
        for i, ident in enumerate(sorted(idents)):
            pos[ident] = (i - (len(idents) - 1) / 2, layer)

    fig, ax = plt.subplots(figsize=(8, 5))
    for upper in lat.nodes:
        for lower in lat.maximal_subgroups_of(upper.ident):
            (x0, y0), (x1, y1) = pos[upper.ident], pos[lower]
            ax.plot([x0, x1], [y0, y1], lw=0.4, color="#8899aa", zorder=1)
    xs = [pos[n.ident][0] for n in lat.nodes]
    ys = [pos[n.ident][1] for n in lat.nodes]
    ax.scatter(xs, ys, s=90, color="#2b6cb0", zorder=2)
    for node in lat.nodes:
        x, y = pos[node.ident]
        ax.annotate(str(node.order), (x, y), ha="center", va="center",
                    fontsize=6, color="white", zorder=3)
    ax.set_title(f"Subgroup lattice of {lat.group.label} "
                 f"({lat.node_count} subgroups, by order)")
    ax.set_ylabel("prime factors of the order, with multiplicity")
    ax.set_xticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _scatter_figure(path: Path, rows: list[dict]) -> None:
    fig, ax = plt.subplots(figsize=(7, 5))
    for simple, color in ((True, "#c0392b"), (False, "#2b6cb0")):
        pts = [(r["depth"], r["length"], r["target"]) for r in rows
               if r["simple"] is simple]
        if not pts:
            continue
        ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=45, color=color,
                   label="simple" if simple else "not simple", alpha=0.8)
        for d, l, name in pts:
            ax.annotate(name, (d, l), textcoords="offset points",
                        xytext=(5, 3), fontsize=7)
    top = max(r["length"] for r in rows) + 1
    ax.plot([0, top], [0, top], ls="--", lw=0.8, color="#888888",
            label="equal chains")
    ax.set_xlabel("depth (shortest unrefinable chain)")
    ax.set_ylabel("length (longest chain)")
    ax.set_title("Depth versus length across the corpus")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _bounds_figure(path: Path) -> None:
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))

    ks = [k / 4 for k in range(4, 161)]
    left.plot(ks, [formulas.depth_bound_from_exponent(k) for k in ks],
              color="#2b6cb0")
    left.set_xlabel("field exponent k")
    left.set_ylabel("depth bound")
    left.set_title("Depth bound against the field exponent")

    ls = list(range(4, 201))
    right.plot(ls, [formulas.depth_bound_from_length(l) for l in ls],
               color="#c0392b", label="envelope")
    right.plot(ls, ls, ls=":", color="#888888", label="depth = length")
    right.axvline(36, lw=0.8, ls="--", color="#888888")
    right.annotate("envelope bites", (36, 150), fontsize=8, rotation=90,
                   va="top", ha="right")
    right.set_xlabel("chain length l")
    right.set_ylabel("depth bound")
    right.set_title("Depth bound against the chain length")
    right.legend()

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(out_dir: str, config) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cache = LatticeCache(config)

    rows, hasse_lat = [], None
    for row, lat in _corpus_rows(cache):
        rows.append(row)
        if row["target"] == "alt:5":
            hasse_lat = lat

    files = [out / "corpus.csv", out / "hasse.png",
             out / "depth_vs_length.png", out / "bound_curves.png"]
    _write_csv(files[0], rows)
    _hasse_figure(files[1], hasse_lat)
    _scatter_figure(files[2], rows)
    _bounds_figure(files[3])
    return files
