#!/usr/bin/env python3
"""Convert HITRAN 160-character .par records into the terasim line-list CSV.

Usage: hitran_par_to_linelist.py [--fmin HZ] [--fmax HZ] [--smin S] < in.par > out.csv

Wavenumbers (cm^-1) become Hz via 100*c, intensities (cm^-1/(molecule cm^-2))
become Hz*m^2 via 100*c*1e-4, and widths/shift (cm^-1/atm) become Hz at 1 atm.
"""
import argparse
import sys

C0 = 299792458.0
WN_TO_HZ = 100.0 * C0


def parse(line):
    return {
        "gas": int(line[0:2]),
        "iso": int(line[2:3], 36) if line[2] != "0" else 10,
        "nu": float(line[3:15]),
        "sw": float(line[15:25]),
        "g_air": float(line[35:40]),
        "g_self": float(line[40:45]),
        "n_air": float(line[55:59]),
        "d_air": float(line[59:67]),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fmin", type=float, default=0.0)
    ap.add_argument("--fmax", type=float, default=float("inf"))
    ap.add_argument("--smin", type=float, default=0.0)
    a = ap.parse_args()
    print("gas,isotope,fc0_hz,S,delta_hz,alpha_air_hz,alpha_gas_hz,gamma")
    for raw in sys.stdin:
        if len(raw.rstrip("\n")) < 67:
            continue
        r = parse(raw)
        fc0 = r["nu"] * WN_TO_HZ
        s = r["sw"] * WN_TO_HZ * 1e-4
        if not a.fmin <= fc0 <= a.fmax or s < a.smin:
            continue
        vals = (fc0, s, r["d_air"] * WN_TO_HZ, r["g_air"] * WN_TO_HZ,
                r["g_self"] * WN_TO_HZ, r["n_air"])
        print(f"{r['gas']},{r['iso']}," + ",".join(f"{v:.16e}" for v in vals))


if __name__ == "__main__":
    main()
