#!/usr/bin/env python3
"""Brute-force document/family counts, query membership and exhaustive
precision for the fixture corpus. Plain substring scans, no tokenizer."""
import csv
import json
import pathlib
import re

FIX = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def in_scope_text(d):
    return " ".join([d["title"], d.get("abstract") or ""] + d.get("claims", [])).lower()


def main():
    docs = [json.loads(l) for l in (FIX / "corpus.jsonl").read_text().splitlines() if l.strip()]
    members = sorted(
        d["doc_id"] for d in docs
        if re.search(r"energy[- ]management", in_scope_text(d)) and not re.search(r"\btoys?\b", in_scope_text(d))
    )
    with open(FIX / "labels.csv") as f:
        labels = {r["doc_id"]: r["relevant"] == "true" for r in csv.DictReader(f)}
    relevant = sum(labels[m] for m in members)
    out = {
        "documents": len(docs),
        "families": len({d["family_id"] for d in docs}),
        "query_members": members,
        "relevant_members": relevant,
        "exhaustive_precision": relevant / len(members),
    }
    (FIX / "golden").mkdir(exist_ok=True)
    (FIX / "golden" / "corpus_query.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
