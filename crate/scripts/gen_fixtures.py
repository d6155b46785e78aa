#!/usr/bin/env python3
"""Regenerate the bundled FCIDUMP fixtures (STO-3G, RHF orbitals, all orbitals active).

Requires pyscf. Run from the repository root:

    python3 scripts/gen_fixtures.py
"""
import os

from pyscf import gto, scf
from pyscf.tools import fcidump

MOLECULES = {
    "H2": ([0.7414], lambda r: [("H", (0, 0, 0)), ("H", (0, 0, r))]),
    "H4": (
        [0.6, 0.9, 1.2, 1.5, 1.8],
        lambda r: [("H", (0, 0, i * r)) for i in range(4)],
    ),
    "LiH": ([1.0, 1.6, 2.4], lambda r: [("Li", (0, 0, 0)), ("H", (0, 0, r))]),
}


def fmt(r):
    return repr(float(r))


def main():
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")
    for name, (bonds, geometry) in MOLECULES.items():
        out_dir = os.path.join(root, name)
        os.makedirs(out_dir, exist_ok=True)
        for r in bonds:
            mol = gto.M(atom=geometry(r), basis="sto-3g", unit="Angstrom", verbose=0)
            mf = scf.RHF(mol)
            mf.conv_tol = 1e-12
            mf.kernel()
            path = os.path.join(out_dir, fmt(r) + ".fcidump")
            fcidump.from_scf(mf, path, tol=1e-12)
            print(f"{name} {fmt(r)}: E_HF = {mf.e_tot:.10f} -> {path}")


if __name__ == "__main__":
    main()
