#!/usr/bin/env python3
"""Wilson score interval for k=20, 18 relevant, computed in 50-digit
arithmetic with the exact two-sided 95% normal quantile."""
import json
import pathlib

import mpmath as mp

FIX = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def wilson(successes, n):
    mp.mp.dps = 50
    z = mp.sqrt(2) * mp.erfinv(mp.mpf("0.95"))
    p = mp.mpf(successes) / n
    denom = 1 + z**2 / n
    center = (p + z**2 / (2 * n)) / denom
    half = z / denom * mp.sqrt(p * (1 - p) / n + z**2 / (4 * n**2))
    return float(center - half), float(center + half), float(z)


def main():
    low, high, z = wilson(18, 20)
    out = {"successes": 18, "trials": 20, "z": z, "low": low, "high": high}
    (FIX / "golden").mkdir(exist_ok=True)
    (FIX / "golden" / "wilson.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
