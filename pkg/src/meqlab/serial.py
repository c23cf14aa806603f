"""Protocol and graph documents: UTF-8 JSON, deterministic field order.

Reading back what was written reproduces the original object exactly, so
files are a faithful interchange format between the CLI subcommands.
"""

import json
from pathlib import Path

from .coloring import BipartiteRep, ColoringInstance
from .core import GeneralProtocol, LinkTable, Protocol, Step, TableProtocol


def protocol_to_doc(p: Protocol) -> dict:
    if isinstance(p, TableProtocol):
        links = []
        for lk in p.links:
            entry = {"from": lk.sender, "to": lk.receiver, "symbols": list(lk.symbols)}
            if lk.range_size > max(lk.symbols):
                entry["range"] = lk.range_size
            links.append(entry)
        return {"kind": "table", "n": p.n, "M": p.M, "links": links}
    steps = []
    for st in p.steps:
        entries = [
            {"input": x, "history": list(hist), "out": sym}
            for (x, hist), sym in sorted(st.table.items())
        ]
        steps.append({"from": st.sender, "to": st.receiver, "range": st.range_size, "table": entries})
    decisions = []
    for node in sorted(p.decisions):
        entries = [
            {"input": x, "history": list(hist), "out": bit}
            for (x, hist), bit in sorted(p.decisions[node].items())
        ]
        decisions.append({"node": node, "table": entries})
    return {"kind": "general", "n": p.n, "M": p.M, "steps": steps, "decisions": decisions}


def protocol_from_doc(doc: dict) -> Protocol:
    kind = doc.get("kind")
    if kind == "table":
        links = tuple(
            LinkTable(
                entry["from"],
                entry["to"],
                tuple(entry["symbols"]),
                entry.get("range", 0),
            )
            for entry in doc["links"]
        )
        return TableProtocol(doc["n"], doc["M"], links)
    if kind == "general":
        steps = tuple(
            Step(
                raw["from"],
                raw["to"],
                {(e["input"], tuple(e["history"])): e["out"] for e in raw["table"]},
                raw["range"],
            )
            for raw in doc["steps"]
        )
        decisions = {
            raw["node"]: {(e["input"], tuple(e["history"])): e["out"] for e in raw["table"]}
            for raw in doc.get("decisions", [])
        }
        return GeneralProtocol(doc["n"], doc["M"], steps, decisions)
    raise ValueError(f"unknown document kind {kind!r}")


def bipartite_to_doc(g: BipartiteRep, colors: tuple[int, ...] | None = None) -> dict:
    doc = {"kind": "bipartite", "U": g.U_size, "V": g.V_size, "edges": [list(e) for e in g.edges]}
    if colors is not None:
        doc["colors"] = list(colors)
    return doc


def bipartite_from_doc(doc: dict) -> tuple[BipartiteRep, ColoringInstance | None]:
    if doc.get("kind") != "bipartite":
        raise ValueError(f"unknown document kind {doc.get('kind')!r}")
    g = BipartiteRep(doc["U"], doc["V"], tuple(tuple(e) for e in doc["edges"]))
    if "colors" in doc:
        return g, ColoringInstance(g, tuple(doc["colors"]))
    return g, None


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save_protocol(p: Protocol, path) -> None:
    Path(path).write_text(dumps(protocol_to_doc(p)), encoding="utf-8")


def load_protocol(path) -> Protocol:
    return protocol_from_doc(json.loads(Path(path).read_text(encoding="utf-8")))


def save_bipartite(g: BipartiteRep, path, colors=None) -> None:
    Path(path).write_text(dumps(bipartite_to_doc(g, colors)), encoding="utf-8")


def load_bipartite(path) -> tuple[BipartiteRep, ColoringInstance | None]:
    return bipartite_from_doc(json.loads(Path(path).read_text(encoding="utf-8")))
