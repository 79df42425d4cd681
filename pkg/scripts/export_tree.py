#!/usr/bin/env python3
"""Export the weighted tree and its derivative scatter data.

Writes two files into --outdir:
  tree_depth<N>.tsv      value, depth, path, numerator, denominator coefficients
  scatter_order<K>.csv   (x, value, b, depth) rows for plotting the derivative
                         of the chosen order over all nodes of the window
"""
import argparse
import pathlib
import sys

from qrationals.exact import rat_to_str
from qrationals.fit import plot_data_csv
from qrationals.sbtree import build_qtree


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--order", type=int, default=1, choices=(0, 1, 2))
    ap.add_argument("--start", type=int, default=0,
                    help="window is (start, start + 1)")
    ap.add_argument("--outdir", default="out")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    tree_path = outdir / f"tree_depth{args.depth}.tsv"
    with tree_path.open("w") as fh:
        fh.write("value\tdepth\tpath\tnum_coeffs\tden_coeffs\n")
        for node in build_qtree(args.start, args.depth):
            num = ",".join(map(str, node.deform.num.coeffs))
            den = ",".join(map(str, node.deform.den.coeffs))
            fh.write(f"{rat_to_str(node.value)}\t{node.depth}\t{node.path}\t"
                     f"{num}\t{den}\n")

    scatter_path = outdir / f"scatter_order{args.order}.csv"
    scatter_path.write_text(plot_data_csv(args.depth, args.order, args.start))

    nodes = 2 ** (args.depth + 1) - 1
    print(f"wrote {tree_path} and {scatter_path} ({nodes} nodes, "
          f"window ({args.start}, {args.start + 1}))")
    return 0


if __name__ == "__main__":
    sys.exit(main())
