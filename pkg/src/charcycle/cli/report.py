"""Running jobs and writing their reports.

The structured format is JSON with ``"schema": "charcycle-report/1"`` at
the top.  A cycle is a list of components, each
``{"base": [...], "conormal": [...], "multiplicity": m}`` with both
generator lists in canonical reduced-basis order.  Vertices of a
hypercube are written as index sets like ``"{0,2}"`` (0-based generator
positions).  The text format carries the same data as tab-separated
sections.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from ..cech import Hypercube, PrunedCube, local_cohomology, lyubeznik_table, subset, vertices
from ..cycles import CharCycle, ConormalComponent, Localizer, localize_cycle
from ..decompose import associated_primes
from ..groebner import Ideal
from ..hilbert import dimension, multiplicity_along
from ..polycore import Ring
from .jobs import JobSpec

SCHEMA = "charcycle-report/1"

log = logging.getLogger("charcycle")


def vertex_label(alpha) -> str:
    return "{" + ",".join(str(i) for i in subset(alpha)) + "}"


def component_record(c: ConormalComponent, m: int | None = None) -> dict:
    rec = {"base": list(c.base.canonical_key()), "conormal": list(c.key)}
    if m is not None:
        rec["multiplicity"] = m
    return rec


def cycle_record(cc: CharCycle) -> list[dict]:
    return [component_record(c, m) for c, m in cc]


def cycle_from_record(rec: list[dict], ring2: Ring) -> CharCycle:
    base = ring2.base_ring()
    items = []
    for entry in rec:
        comp = ConormalComponent(Ideal(ring2, entry["conormal"]).reduced(), Ideal(base, entry["base"]).reduced())
        items.append((comp, int(entry["multiplicity"])))
    return CharCycle(ring2, items)


def cube_record(cube: Hypercube, pruned: PrunedCube, full: bool) -> dict:
    out = {
        "factors": [str(f) for f in cube.factors],
        "pruned": {vertex_label(a): cycle_record(pruned.cycles[a]) for a in vertices(cube.s) if pruned.cycles[a]},
    }
    if full:
        out["vertices"] = {vertex_label(a): cycle_record(cube.cycles[a]) for a in vertices(cube.s)}
        table: dict[tuple, dict] = {}
        for a in vertices(cube.s):
            for c, m in cube.cycles[a]:
                row = table.setdefault(c.key, {**component_record(c), "entries": {}})
                row["entries"][vertex_label(a)] = m
        out["components"] = [table[k] for k in sorted(table)]
    return out


@dataclass
class Report:
    job: JobSpec
    result: dict
    cubes: dict[str, tuple[Hypercube, PrunedCube]] = field(default_factory=dict)
    vertices: bool = False

    @property
    def command(self) -> str:
        return self.job.command

    def tree(self) -> dict:
        job = self.job
        head = {
            "schema": SCHEMA,
            "command": job.command,
            "ring": list(job.ring.names),
            "cotangent": list(job.cotangent.names[job.ring.nvars:]),
            "ideal": [[str(g) for g in fs] for fs in job.generators],
            "strategy": job.strategy,
        }
        if job.module is not None:
            head["module"] = cycle_record(job.module)
        if job.split is not None:
            head["split"] = [cycle_record(p) for p in job.split]
        head["result"] = self.result
        return head

    def structured(self) -> str:
        return json.dumps(self.tree(), indent=2, sort_keys=False, ensure_ascii=False) + "\n"

    def text(self) -> str:
        t = self.tree()
        lines = [f"# {SCHEMA}", f"command\t{t['command']}", f"ring\t{', '.join(t['ring'])}"]
        lines.append("ideal\t" + ", ".join(" | ".join(fs) for fs in t["ideal"]))
        lines.append(f"strategy\t{t['strategy']}")
        if "module" in t:
            lines.append(f"module\t{_cycle_text(t['module'])}")
        if "split" in t:
            lines.append("split\t" + " | ".join(_cycle_text(p) for p in t["split"]))
        res = t["result"]
        if self.command == "localize":
            lines += ["", "[cycle]", "multiplicity\tcomponent"]
            lines += [f"{e['multiplicity']}\t{_label(e)}" for e in res["cycle"]]
        elif self.command == "decompose":
            lines += ["", "[primes]", "kind\tdimension\tmultiplicity\tprime"]
            for e in res["minimal"]:
                lines.append(f"minimal\t{e['dimension']}\t{e['multiplicity']}\t({', '.join(e['prime'])})")
            for e in res["embedded"]:
                lines.append(f"embedded\t{e['dimension']}\t-\t({', '.join(e['prime'])})")
        else:
            if self.command == "lyubeznik":
                d = res["d"]
                lines += ["", "[lambda]", "p\\i\t" + "\t".join(str(i) for i in range(d + 1))]
                lines += [f"{p}\t" + "\t".join(str(v) for v in row) for p, row in enumerate(res["lambda"])]
            lines += ["", "[cohomology]", "r\tmultiplicity\tcomponent"]
            for r, cyc in res["cohomology"].items():
                lines += [f"{r}\t{e['multiplicity']}\t{_label(e)}" for e in cyc]
            for name, cube in res["cubes"].items():
                lines += _cube_text(name, cube)
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        return self.structured() if self.job.format == "structured" else self.text()


def _label(e: dict) -> str:
    return "T*[" + (", ".join(e["base"]) or "0") + "]"


def _cycle_text(rec: list[dict]) -> str:
    if not rec:
        return "0"
    return " + ".join((f"{e['multiplicity']}*" if e["multiplicity"] > 1 else "") + _label(e) for e in rec)


def _cube_text(name: str, cube: dict) -> list[str]:
    lines = ["", f"[pruned {name}]", "vertex\tmultiplicity\tcomponent"]
    for v, cyc in cube["pruned"].items():
        lines += [f"{v}\t{e['multiplicity']}\t{_label(e)}" for e in cyc]
    if "components" in cube:
        labels = list(cube["vertices"])
        lines += ["", f"[vertices {name}]", "component\t" + "\t".join(labels)]
        for row in cube["components"]:
            lines.append(_label(row) + "\t" + "\t".join(str(row["entries"].get(v, 0)) for v in labels))
    return lines


# -- running ----------------------------------------------------------------------------


def run(job: JobSpec, localizer: Localizer | None = None, vertices: bool = False) -> Report:
    """Compute the report for a job; deterministic for a given job."""
    loc = localizer or Localizer()
    if job.command == "localize":
        return _run_localize(job, loc)
    if job.command == "cech":
        return _run_cech(job, loc, vertices)
    if job.command == "lyubeznik":
        return _run_lyubeznik(job, loc, vertices)
    if job.command == "decompose":
        return _run_decompose(job)
    raise ValueError(f"unknown command {job.command!r}")


def _run_localize(job: JobSpec, loc: Localizer) -> Report:
    M = job.module_cycle()
    if job.strategy == "iterative":
        factors = [g for fs in job.generators for g in fs]
    else:
        factors = job.ideal
    cc = localize_cycle(M, factors, job.strategy, localizer=loc)
    return Report(job, {"cycle": cycle_record(cc)})


def _run_cech(job: JobSpec, loc: Localizer, full: bool) -> Report:
    M = job.module_cycle()
    factors = job.factor_lists
    trusted = True if job.module is None else None
    total, runs = local_cohomology(M, factors, split=job.split, trusted=trusted, localizer=loc, strategy=job.strategy)
    result = {"cohomology": {str(r): cycle_record(c) for r, c in total.items()}}
    cubes = {}
    for i, (cube, pruned) in enumerate(runs):
        name = "M" if len(runs) == 1 else f"M{i + 1}"
        cubes[name] = (cube, pruned)
    result["cubes"] = {k: cube_record(c, p, full) for k, (c, p) in cubes.items()}
    return Report(job, result, cubes, full)


def _run_lyubeznik(job: JobSpec, loc: Localizer, full: bool) -> Report:
    def progress(name, alpha, cc):
        log.info("%s vertex %s: %d components", name, vertex_label(alpha), len(cc))

    table, details = lyubeznik_table(job.ideal, localizer=loc, progress=progress)
    h = details["cohomology"]
    result = {
        "d": table.d,
        "lambda": table.rows(),
        "cohomology": {str(r): cycle_record(c) for r, c in h.items()},
    }
    cubes = {}
    for key, (cube, pruned) in details["cubes"].items():
        name = "I" if key == "ideal" else f"H^{key}"
        cubes[name] = (cube, pruned)
    result["cubes"] = {k: cube_record(c, p, full) for k, (c, p) in cubes.items()}
    return Report(job, result, cubes, full)


def _run_decompose(job: JobSpec) -> Report:
    I = Ideal(job.ring, job.ideal)
    if I.is_unit():
        return Report(job, {"minimal": [], "embedded": []})
    comps = associated_primes(I)
    mins = comps.minimal
    minimal = []
    for p in mins:
        others = [q for q in mins if q != p]
        minimal.append({"prime": list(p.canonical_key()), "dimension": dimension(p), "multiplicity": multiplicity_along(I, p, others)})
    embedded = [{"prime": list(p.canonical_key()), "dimension": dimension(p)} for p in comps.embedded]
    return Report(job, {"minimal": minimal, "embedded": embedded})


# -- reading back --------------------------------------------------------------------------


def read_report(text: str) -> dict:
    """Parse structured output; every cycle record is turned back into a CharCycle."""
    tree = json.loads(text)
    if tree.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {tree.get('schema')!r}")
    ring2 = Ring.cotangent(tree["ring"])
    if list(ring2.names[len(tree["ring"]):]) != tree["cotangent"]:
        raise ValueError("cotangent names do not match the ring")

    def conv(cyc):
        return cycle_from_record(cyc, ring2)

    if "module" in tree:
        tree["module"] = conv(tree["module"])
    if "split" in tree:
        tree["split"] = [conv(p) for p in tree["split"]]
    res = tree["result"]
    if "cycle" in res:
        res["cycle"] = conv(res["cycle"])
    if "cohomology" in res:
        res["cohomology"] = {int(r): conv(c) for r, c in res["cohomology"].items()}
    for cube in res.get("cubes", {}).values():
        cube["pruned"] = {v: conv(c) for v, c in cube["pruned"].items()}
        if "vertices" in cube:
            cube["vertices"] = {v: conv(c) for v, c in cube["vertices"].items()}
    return tree
