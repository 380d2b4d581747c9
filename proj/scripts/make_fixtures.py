#!/usr/bin/env python3
"""Writes the synthetic fixture set under fixtures/.

Output is deterministic; rerun after editing the tables below and then
regenerate the golden files with scripts/oracles/*.py.
"""
import csv
import io
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
OUT = ROOT / "fixtures"

# Hearst sentence per technology: (plural surface, hypernym, pattern).
TECH = {
    "heat pump": ("heat pumps", "device"),
    "smart meter": ("smart meters", "device"),
    "lithium battery": ("lithium batteries", "unit"),
    "power converter": ("power converters", "device"),
    "inverter": ("inverters", "device"),
    "photovoltaic panel": ("photovoltaic panels", "system"),
    "thermostat": ("thermostats", "device"),
    "flywheel": ("flywheels", "system"),
    "load controller": ("load controllers", "unit"),
    "wind turbine": ("wind turbines", "machine"),
}


def hearst(techs, style):
    """One sentence naming `techs` under a shared hypernym."""
    hyper = TECH[techs[0]][1]
    plurals = [TECH[t][0] for t in techs]
    hyper_pl = hyper + "s" if not hyper.endswith("s") else hyper
    if len(plurals) == 1:
        items = plurals[0]
    else:
        items = ", ".join(plurals[:-1]) + " and " + plurals[-1]
    if style == 0:
        return f"The installation couples {hyper_pl} such as {items}."
    if style == 1:
        return f"The site operates {hyper_pl} including {items}."
    # "and other" takes a comma-separated list
    lst = ", ".join(plurals)
    return f"Power is routed to {lst} and other {hyper_pl}."


def group_by_hypernym(techs):
    groups = {}
    for t in techs:
        groups.setdefault(TECH[t][1], []).append(t)
    return list(groups.values())


# Sentences written to sit close to a taxonomy description under the
# hashed-bag embedding.
EVIDENCE = {
    "hp_install": "A technician may install heat pump units in residential buildings.",
    "meter_data": "The operator can analyse smart meter consumption data with software.",
    "battery_maint": "Field staff maintain lithium battery storage modules and replace faulty cells.",
    "pv_design": "Engineers design photovoltaic panel arrays for rooftop installations.",
    "grid_sched": "The platform schedules flexible loads to balance the electrical grid.",
    "energy_audit": "An auditor performs an energy audit of industrial plants to reduce consumption.",
    "plc": "The controller program is written for programmable logic controllers in the plant.",
    "iot": "Connected sensors stream telemetry to a cloud platform for remote monitoring.",
}

# Energy-management documents matched by fixtures/energy_mgmt.json.
# (doc_id, family_id, year, technologies, relevant, evidence keys)
ENERGY_DOCS = [
    ("EP-E01", "F-E01", 2009, ["heat pump", "thermostat"], True, ["hp_install"]),
    ("EP-E02", "F-E02", 2011, ["smart meter", "load controller"], True, ["meter_data"]),
    ("EP-E03", "F-E03", 2012, ["heat pump", "inverter"], True, []),
    ("EP-E04", "F-E03", 2014, ["heat pump", "inverter"], True, ["hp_install"]),
    ("EP-E05", "F-E05", 2013, ["lithium battery", "flywheel"], True, ["battery_maint"]),
    ("EP-E06", "F-E06", 2015, ["photovoltaic panel", "power converter"], True, ["pv_design"]),
    ("EP-E07", "F-E07", 2016, ["heat pump", "smart meter"], True, ["grid_sched"]),
    ("EP-E08", "F-E07", 2017, ["heat pump", "smart meter"], True, []),
    ("EP-E09", "F-E09", 2017, ["power converter", "inverter"], True, ["plc"]),
    ("EP-E10", "F-E10", 2018, ["heat pump", "load controller"], True, ["energy_audit"]),
    ("EP-E11", "F-E11", 2018, ["lithium battery", "power converter"], True, ["battery_maint"]),
    ("EP-E12", "F-E12", 2019, ["smart meter", "thermostat"], True, ["iot", "meter_data"]),
    ("EP-E13", "F-E13", 2019, ["heat pump", "photovoltaic panel"], True, ["pv_design"]),
    ("EP-E14", "F-E13", 2020, ["heat pump", "photovoltaic panel"], True, []),
    ("EP-E15", "F-E15", 2020, ["inverter", "lithium battery"], True, ["grid_sched"]),
    ("EP-E16", "F-E16", 2021, ["heat pump", "smart meter", "thermostat"], True, ["hp_install", "iot"]),
    ("EP-E17", "F-E17", 2021, ["wind turbine", "flywheel"], True, ["energy_audit"]),
    ("EP-E18", "F-E18", 2022, ["heat pump", "power converter"], True, ["plc"]),
    # matched by the query but off-topic after review
    ("EP-E19", "F-E19", 2016, ["thermostat"], False, []),
    ("EP-E20", "F-E20", 2019, [], False, []),
]

OFF_TOPIC = {
    "EP-E19": ("Energy management of a game character",
               "A video game assigns energy management points to an avatar. "
               "The avatar rests to regain energy."),
    "EP-E20": ("Personal energy management diary",
               "A paper diary helps a person with energy management during exam weeks. "
               "Pages are printed with a weekly grid."),
}

# Remaining documents: none contains the query phrase. The first is a
# relevant energy document missed by the query (it feeds recall).
OTHER_TOPICS = [
    ("Surgical stapler with articulating jaw", "medical",
     "Instruments such as staplers and clip appliers are used in surgery."),
    ("Loom with electronic shedding", "textile",
     "Machines such as looms and knitting frames process yarn."),
    ("Brake caliper with cooling fins", "automotive",
     "Systems such as brake calipers and rotors dissipate heat."),
    ("Seed drill with variable rate metering", "agriculture",
     "Machines such as seed drills and sprayers are towed by tractors."),
    ("Dental implant abutment", "medical",
     "Devices such as abutments and crowns restore teeth."),
    ("Folding bicycle frame hinge", "mobility",
     "Mechanisms such as hinges and latches lock the frame."),
]

N_OTHER_DOCS = 30
N_OTHER_FAMILIES = 25  # five documents share a family with an earlier one


def build_documents():
    docs = []
    for doc_id, fam, year, techs, relevant, evid in ENERGY_DOCS:
        if doc_id in OFF_TOPIC:
            title, abstract = OFF_TOPIC[doc_id]
            claims = ["1. A method comprising a display of remaining energy."]
            desc = None
        else:
            n = int(doc_id[-2:])
            title = f"Energy management of a building with {TECH[techs[0]][0]}"
            sentences = ["A building controller performs energy management across connected equipment."]
            for i, grp in enumerate(group_by_hypernym(techs)):
                sentences.append(hearst(grp, (n + i) % 3))
            abstract = " ".join(sentences)
            claims = [f"1. An energy management method that controls {TECH[techs[0]][0]} according to a tariff."]
            desc = " ".join(EVIDENCE[k] for k in evid) or None
        d = {
            "doc_id": doc_id, "family_id": fam, "filing_year": year, "title": title,
            "abstract": abstract, "claims": claims, "description": desc,
            "cpc_codes": ["Y02B70/30"] if relevant else ["A63F13/00"],
            "ipc_codes": ["H02J3/00"] if relevant else ["A63F13/00"],
            "status": "granted" if year < 2018 else "pending",
        }
        docs.append(d)

    for i in range(N_OTHER_DOCS):
        n = i + 1
        doc_id = f"EP-N{n:02d}"
        # documents 26..30 join the families of 1..5
        fam_n = n if n <= N_OTHER_FAMILIES else n - N_OTHER_FAMILIES
        fam = f"F-N{fam_n:02d}"
        year = 2008 + (n * 5) % 15
        if n == 1:
            title = "Power scheduling of household appliances"
            abstract = ("Appliances such as dishwashers and dryers are shifted to off-peak tariffs. "
                        "Devices such as heat pumps follow the schedule.")
            claims = ["1. A scheduling method for household appliances."]
            desc = EVIDENCE["grid_sched"]
        elif n == 2:
            title = "Toy robot with energy management display"
            abstract = "A toy robot shows energy management hints to children."
            claims = ["1. A toy comprising a display."]
            desc = None
        else:
            t_title, topic, sent = OTHER_TOPICS[n % len(OTHER_TOPICS)]
            title = f"{t_title} variant {n}"
            abstract = f"{sent} The {topic} design improves handling."
            claims = [f"1. An apparatus for {topic} use."]
            desc = None
        docs.append({
            "doc_id": doc_id, "family_id": fam, "filing_year": year, "title": title,
            "abstract": abstract, "claims": claims, "description": desc,
            "cpc_codes": ["H02J3/14"] if n == 1 else ["A61B17/00"],
            "ipc_codes": [], "status": "unknown",
        })
    return docs


def labels(docs):
    rel = {d[0]: d[4] for d in ENERGY_DOCS}
    rows = [("doc_id", "relevant")]
    for d in docs:
        rows.append((d["doc_id"], "true" if rel.get(d["doc_id"], d["doc_id"] == "EP-N01") else "false"))
    return rows


# Taxonomy: 24 hard, 12 digital, 24 soft.
HARD = [
    ("heat pump installation", "install heat pump units in residential buildings", True),
    ("battery maintenance", "maintain lithium battery storage modules and replace faulty cells", True),
    ("photovoltaic design", "design photovoltaic panel arrays for rooftop installations", True),
    ("energy auditing", "perform an energy audit of industrial plants to reduce consumption", True),
    ("load balancing", "schedule flexible loads to balance the electrical grid", True),
    ("electrical wiring", "connect cables terminals and protective switches in cabinets", False),
    ("hvac commissioning", "commission ventilation ducts and air handling units", True),
    ("welding", "join metal parts with arc welding equipment", False),
    ("thermal insulation", "apply insulating layers to walls pipes and roofs", True),
    ("power electronics", "dimension converters rectifiers and switching stages", False),
    ("metering installation", "mount electricity meters and verify seals", False),
    ("safety inspection", "inspect workplaces against hazard checklists", False),
    ("wind turbine servicing", "service gearboxes blades and towers of turbines", True),
    ("hydraulics", "assemble hydraulic pumps valves and hoses", False),
    ("refrigerant handling", "recover and recharge refrigerant gases safely", True),
    ("building automation", "configure room controllers shading and lighting scenes", True),
    ("technical drawing", "read and produce mechanical drawings and schematics", False),
    ("quality control", "sample production lots and record defects", False),
    ("procurement", "compare supplier offers and negotiate contracts", False),
    ("project costing", "estimate labour material and equipment costs", False),
    ("regulatory compliance", "check installations against codes and permits", False),
    ("grid connection", "prepare connection requests with the network operator", True),
    ("district heating", "operate substations of district heating networks", True),
    ("energy storage sizing", "size storage capacity against demand profiles", True),
]
DIGITAL = [
    ("smart meter analytics", "analyse smart meter consumption data with software", True),
    ("plc programming", "write programs for programmable logic controllers in the plant", False),
    ("iot telemetry", "stream telemetry from connected sensors to a cloud platform", False),
    ("building energy simulation", "simulate annual heating demand of a building model", True),
    ("scada operation", "supervise remote stations through scada screens", False),
    ("cybersecurity basics", "protect control networks against intrusion", False),
    ("data visualisation", "build dashboards charts and reports", False),
    ("database querying", "query relational tables with sql", False),
    ("bim modelling", "maintain building information models", False),
    ("machine learning", "train predictive models on historical records", False),
    ("digital twin", "mirror physical assets in a synchronised virtual model", True),
    ("mobile field apps", "record work orders on tablets in the field", False),
]
SOFT = [
    "teamwork", "communication", "problem solving", "adaptability", "customer orientation",
    "leadership", "negotiation", "time management", "critical thinking", "creativity",
    "attention to detail", "autonomy", "conflict resolution", "coaching", "presentation",
    "planning", "resilience", "learning agility", "ethics", "intercultural awareness",
    "decision making", "stakeholder management", "systems thinking", "sustainability mindset",
]


def taxonomy():
    rows = [("skill_id", "label", "description", "category", "green")]
    for i, (label, desc, green) in enumerate(HARD, 1):
        rows.append((f"H{i:02d}", label, desc, "hard", "true" if green else "false"))
    for i, (label, desc, green) in enumerate(DIGITAL, 1):
        rows.append((f"D{i:02d}", label, desc, "digital", "true" if green else "false"))
    for i, label in enumerate(SOFT, 1):
        green = label in ("sustainability mindset", "systems thinking")
        rows.append((f"P{i:02d}", label, f"show {label} in daily work", "soft", "true" if green else "false"))
    return rows


BLOCKS = [
    ("TechniciansOperators", ["Heat pump technician", "Battery service technician",
                              "Solar installer", "Metering operator"]),
    ("EngineeringProfessionals", ["Energy systems engineer", "Automation engineer",
                                  "Power electronics engineer", "Building simulation engineer"]),
    ("ManagersConsultants", ["Energy manager", "Sustainability consultant",
                             "Project manager renewables", "Procurement manager"]),
]


def archetypes():
    """Three blocks of four. Each block has an 8-skill core; every member
    drops one core skill and adds one skill of its own."""
    hard_digital = [f"H{i:02d}" for i in range(1, 25)] + [f"D{i:02d}" for i in range(1, 13)]
    cores = [hard_digital[0:8], hard_digital[8:16], hard_digital[16:24]]
    own = hard_digital[24:36]
    soft_ids = [f"P{i:02d}" for i in range(1, 25)]
    out = []
    n = 0
    for b, (macro, titles) in enumerate(BLOCKS):
        for m, title in enumerate(titles):
            skills = [s for j, s in enumerate(cores[b]) if j != m] + [own[n]]
            soft = {}
            for j in range(6):
                soft[soft_ids[(b * 8 + m * 2 + j) % 24]] = 1 + (n + j) % 4
            out.append({
                "archetype_id": f"A{n + 1:02d}",
                "title": title,
                "description": f"{title} working on energy efficient buildings and plants.",
                "macro_class_topdown": macro,
                "binary_skills": sorted(skills),
                "soft_targets": dict(sorted(soft.items())),
            })
            n += 1
    return out


def assessments(arch):
    """Ten self-assessments of increasing distance from their archetype."""
    out = []
    for i in range(10):
        a = arch[i]
        binary = list(a["binary_skills"])
        if i == 0:
            sel, soft = binary, dict(a["soft_targets"])  # identity
        else:
            keep = binary[: len(binary) - (i % 5)]
            donor = arch[(i * 5) % 12]["binary_skills"]
            sel = sorted(set(keep) | set(donor[: i % 3]))
            soft = {k: max(0, v - (i % 3)) for k, v in a["soft_targets"].items()}
            if i % 4 == 0:
                soft.pop(sorted(soft)[0])
        out.append({
            "assessment_id": f"fx-{i + 1:02d}",
            "archetype_id": a["archetype_id"],
            "selected_binary": sorted(sel),
            "soft_levels": dict(sorted(soft.items())),
        })
    return out


def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def write_csv(path, rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    write(path, buf.getvalue())


def dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def main():
    docs = build_documents()
    write(OUT / "corpus.jsonl", "".join(json.dumps(d, ensure_ascii=False) + "\n" for d in docs))
    write(OUT / "energy_mgmt.json", dump({
        "name": "energy_mgmt",
        "scope": ["title", "abstract", "claims"],
        "query": {"AND": [
            {"OR": [{"lit": "energy management"}, {"regex": "energy[- ]management"}]},
            {"NOT": {"lit": "toy"}},
        ]},
    }))
    write_csv(OUT / "labels.csv", labels(docs))
    seeds = ["EP-E01", "EP-E02", "EP-E05", "EP-E06", "EP-E09", "EP-E11", "EP-E12", "EP-E15", "EP-E17", "EP-N01"]
    write(OUT / "seeds.txt", "doc_id\n" + "".join(s + "\n" for s in seeds))
    write(OUT / "synonyms.tsv", "appliance\tdevice\nequipment\tapparatus\ninstrument\tdevice\n")
    write(OUT / "curation.json", dump([
        {"action": "reject", "target": "flywheel"},
        {"action": "merge", "target": "inverter", "into": "power_converter"},
    ]))
    write_csv(OUT / "taxonomy.csv", taxonomy())
    arch = archetypes()
    write(OUT / "archetypes.json", dump(arch))
    asm = assessments(arch)
    for a in asm:
        write(OUT / "assessments" / f"{a['assessment_id']}.json", dump(a))
    write(OUT / "skill_overrides.json", dump([{"skill_id": "D03", "review": "approved"}]))
    write(OUT / "config.json", dump({
        "corpus": "corpus.jsonl",
        "ontology": "energy_mgmt.json",
        "labels": "labels.csv",
        "seeds": "seeds.txt",
        "synonyms": "synonyms.tsv",
        "curation": "curation.json",
        "taxonomy": "taxonomy.csv",
        "skill_overrides": "skill_overrides.json",
        "archetypes": "archetypes.json",
        "seed": 42,
        "sample_size": 20,
        "threshold": 0.7,
        "clusters": 3,
    }))


if __name__ == "__main__":
    main()
