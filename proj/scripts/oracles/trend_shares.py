#!/usr/bin/env python3
"""Heat-pump family series and per-technology family counts over the
query members, by direct substring scan of the in-scope text.

Curation in the fixture rejects "flywheel" and folds "inverter" into
"power converter"; the scan applies the same two edits by hand."""
import json
import pathlib
import re

FIX = pathlib.Path(__file__).resolve().parents[2] / "fixtures"

SURFACES = {
    "heat pump": ["heat pumps"],
    "smart meter": ["smart meters"],
    "lithium battery": ["lithium batteries"],
    "power converter": ["power converters", "inverters"],
    "photovoltaic panel": ["photovoltaic panels"],
    "thermostat": ["thermostats"],
    "load controller": ["load controllers"],
    "wind turbine": ["wind turbines"],
}


def main():
    docs = [json.loads(l) for l in (FIX / "corpus.jsonl").read_text().splitlines() if l.strip()]
    members = set(json.loads((FIX / "golden" / "corpus_query.json").read_text())["query_members"])
    earliest = {}
    for d in docs:
        f = d["family_id"]
        earliest[f] = min(earliest.get(f, 9999), d["filing_year"])
    families = {label: set() for label in SURFACES}
    for d in docs:
        if d["doc_id"] not in members:
            continue
        # mentions only come from the abstract's pattern sentences
        text = (d.get("abstract") or "").lower()
        for label, surfaces in SURFACES.items():
            if any(re.search(r"\b" + s + r"\b", text) for s in surfaces):
                families[label].add(d["family_id"])
    set_families = {d["family_id"] for d in docs if d["doc_id"] in members}
    series = {}
    for f in families["heat pump"]:
        series[earliest[f]] = series.get(earliest[f], 0) + 1
    out = {
        "set_families": len(set_families),
        "family_counts": {k: len(v) for k, v in sorted(families.items())},
        "heat_pump_series": {str(y): n for y, n in sorted(series.items())},
    }
    (FIX / "golden" / "trend_shares.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
