"""Render one instance under every builder to SVG, side by side.

Writes demos/out/*.svg: the bare point set, the MST, the two tile-builder
modes, and the three classical baselines. Open them in any browser; input
points are filled dots, the source is highlighted, Steiner vertices (where a
builder adds them) are the small hollow markers on the ladder lines.
"""

import os

from shallowlight.baselines import abp_slt, kry_slt, mst_rooted, solomon_slt
from shallowlight.instances import generate
from shallowlight.pipeline import build_slt
from shallowlight.render import write_svg


def main():
    out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
    os.makedirs(out_dir, exist_ok=True)

    inst = generate("uniform", eps=1.0 / 32.0, n=120, seed=5)
    jobs = {
        "points": None,
        "mst": mst_rooted(inst),
        "steiner": build_slt(inst, mode="steiner")[0],
        "restricted": build_slt(inst, mode="restricted")[0],
        "kry": kry_slt(inst),
        "abp": abp_slt(inst),
        "solomon": solomon_slt(inst),
    }
    for name, tree in jobs.items():
        path = os.path.join(out_dir, f"uniform_{name}.svg")
        write_svg(path, inst, tree)
        size = os.path.getsize(path)
        print(f"wrote {path} ({size} bytes)")

    print()
    print("compare steiner vs mst: the builder keeps the MST's short hops where")
    print("they are cheap and splices in ladder shortcuts where a path to the")
    print("source would otherwise wander.")


if __name__ == "__main__":
    main()
