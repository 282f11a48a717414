"""Why the classical constructions lose on adversarial inputs.

Three well-known shallow-light constructions are run against the two comb
families and the circle, sweeping eps over powers of 1/4. On the combs the
MST-ladder style builders pay a full factor 1/eps in lightness (log-log
slope ~1) while the tile-based builder grows markedly slower on the same
inputs. The circle is included as the counterpoint: it is the 1-spanner
builder's adversarial family, and there the tile builder pays too. The
slope column is the exponent of the observed growth.
"""

import numpy as np

from shallowlight.baselines import abp_slt, kry_slt, solomon_slt
from shallowlight.graphcore import mst
from shallowlight.instances import generate
from shallowlight.pipeline import build_slt

EPS_SWEEP = [4.0**-k for k in (2, 3, 4, 5)]


def lightness(inst, tree):
    _edges, w = mst(inst.points)
    return tree.weight() / w


def sweep(kind, label, build):
    values = []
    for eps in EPS_SWEEP:
        inst = generate(kind, eps=eps)
        values.append(lightness(inst, build(inst)))
    x = np.log([1.0 / e for e in EPS_SWEEP])
    y = np.log(values)
    slope = float(np.polyfit(x, y, 1)[0])
    cells = "".join(f"{v:10.2f}" for v in values)
    print(f"  {label:<22s}{cells}   slope {slope:5.2f}")
    return slope


def main():
    header = "".join(f"{f'eps=4^-{k}':>10s}" for k in (2, 3, 4, 5))
    for kind, builders in (
        ("comb", [("kry", kry_slt), ("abp", abp_slt)]),
        ("cnet-comb", [("kry", kry_slt), ("abp", abp_slt)]),
        ("circle", [("solomon", solomon_slt)]),
    ):
        print(f"{kind} lightness:")
        print(f"  {'':<22s}{header}")
        for name, fn in builders:
            sweep(kind, name, fn)
        sweep(kind, "build_slt restricted", lambda i: build_slt(i, mode="restricted")[0])
        print()

    print("slope ~1.0 means weight scales like (1/eps) * MST; slope ~0.5 like")
    print("sqrt(1/eps). On the comb families the tile builder is the flattest")
    print("curve, though well short of flat: its pruned ladder levels oscillate")
    print("with the parity of the ladder depth on this eps window instead of")
    print("converging. The circle reverses the ranking: solomon pays about")
    print("sqrt(1/eps) there and the tile builder's restricted mode pays more,")
    print("so neither side dominates on every family.")


if __name__ == "__main__":
    main()
