"""Walk through the four charge regions of the kappa = -1 channel.

For each coupling prints the region, the lowest levels of a sample
extension and the continuum density at a few energies.

    python3 scripts/demo.py
"""
import numpy as np

from supercrit import extensions as ex
from supercrit import spectral as sp
from supercrit.extensions import ExtensionParam
from supercrit.radial import ChannelParams

CASES = [
    (0.5, ExtensionParam.unique()),
    (0.95, ExtensionParam.xi(0.7)),
    (1.0, ExtensionParam.xi("inf")),
    (1.2, ExtensionParam.theta(0.5)),
]


def main():
    for q, ext in CASES:
        p = ChannelParams(q, -1)
        print(f"q = {q:<5} {ex.classify(p).name:<13} {ext.label()}")
        for st in sp.find_discrete_spectrum(p, ext, n_max=3):
            print(f"    n={st.n}  E={st.E:+.12f}  Q^2={st.Qn2:.6e}")
        E = np.array([-3.0, -1.5, 1.5, 3.0])
        dens = sp.continuum_density(p, ext, E)
        print("    density " + "  ".join(f"{e:+.1f}:{d:.4e}" for e, d in zip(E, dens)))
    p = ChannelParams(1.2, -1)
    e = sp.bisect_dive(p, -1 + 1e-6)
    print(f"diving at q = 1.2: {e.label()} puts the lowest level at {sp.lowest_level(p, e):+.12f}")


if __name__ == "__main__":
    main()
