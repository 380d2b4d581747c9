#!/usr/bin/env python3
"""Exhaustive weighted Jaccard/soft distance from every fixture assessment
to every other archetype; keeps the three closest."""
import json
import pathlib
from fractions import Fraction

FIX = pathlib.Path(__file__).resolve().parents[2] / "fixtures"
W_B, W_S = Fraction(7, 10), Fraction(3, 10)
MAX_LEVEL = 4


def dist(sel, levels, arch):
    ideal = set(arch["binary_skills"])
    union = sel | ideal
    jac = Fraction(1) if not union else Fraction(len(sel & ideal), len(union))
    targets = arch.get("soft_targets", {})
    soft = Fraction(0)
    if targets:
        soft = Fraction(sum(abs(levels.get(k, 0) - v) for k, v in targets.items()), MAX_LEVEL * len(targets))
    return W_B * (1 - jac) + W_S * soft


def main():
    archetypes = json.loads((FIX / "archetypes.json").read_text())
    out = {}
    for path in sorted((FIX / "assessments").glob("*.json")):
        a = json.loads(path.read_text())
        sel = set(a["selected_binary"])
        rows = []
        for arch in archetypes:
            if arch["archetype_id"] == a["archetype_id"]:
                continue
            rows.append((dist(sel, a["soft_levels"], arch), -len(arch["binary_skills"]), arch["archetype_id"]))
        rows.sort()
        out[a["assessment_id"]] = [{"archetype_id": r[2], "distance": float(r[0])} for r in rows[:3]]
    (FIX / "golden" / "top3.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
