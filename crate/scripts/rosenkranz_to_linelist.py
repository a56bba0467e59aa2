#!/usr/bin/env python3
"""Convert the Rosenkranz line tables shipped with pyrtlib into the terasim line-list CSV.

Usage: rosenkranz_to_linelist.py <pyrtlib/_lineshape dir> > linelist.csv

Water lines come from the R24 table (reference 296 K). Oxygen lines come from
the R98 table (reference 300 K); their widths are rescaled to 296 K. Oxygen
self-broadening is not tabulated and is set equal to air broadening.
"""
import sys
import h5py

GHZ_PER_BAR_TO_HZ_PER_ATM = 1.01325e9
F_MIN_GHZ, F_MAX_GHZ = 100.0, 1100.0


def fmt(x):
    return f"{x:.16e}"


def main(root):
    rows = []
    with h5py.File(f"{root}/h2o_lineshape.nc", "r") as f:
        mtx = f["R24"]["mtx"][:]
        # one row per line; column 0 is a table index
        for r in mtx:
            fr, s, w0, x, w0s, sh = r[1], r[2], r[4], r[5], r[6], r[8]
            if not F_MIN_GHZ <= fr <= F_MAX_GHZ:
                continue
            rows.append((1, 1, fr * 1e9, s * 1e-4, sh * GHZ_PER_BAR_TO_HZ_PER_ATM,
                         w0 * GHZ_PER_BAR_TO_HZ_PER_ATM, w0s * GHZ_PER_BAR_TO_HZ_PER_ATM, x))
    with h5py.File(f"{root}/o2_lineshape.nc", "r") as f:
        g = f["R98"]
        x = round(float(g["x"][()]), 6)  # stored as float32
        for fr, s, w in zip(g["f"][()], g["s300"][()], g["w300"][()]):
            if not F_MIN_GHZ <= fr <= F_MAX_GHZ:
                continue
            w296 = w * GHZ_PER_BAR_TO_HZ_PER_ATM * (300.0 / 296.0) ** x
            rows.append((7, 1, fr * 1e9, s * 1e-4, 0.0, w296, w296, x))
    rows.sort(key=lambda r: (r[2], r[0], r[1]))
    out = sys.stdout
    out.write("# Rosenkranz H2O (R24) and O2 (R98) lines, 100 GHz to 1.1 THz, SI units\n")
    out.write("# S in Hz*m^2 per molecule, widths and shift in Hz at 1 atm, reference 296 K\n")
    out.write("gas,isotope,fc0_hz,S,delta_hz,alpha_air_hz,alpha_gas_hz,gamma\n")
    for r in rows:
        out.write(f"{r[0]},{r[1]}," + ",".join(fmt(v) for v in r[2:]) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
