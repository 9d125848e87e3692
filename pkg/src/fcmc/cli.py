"""Batch command line: load descriptions, run verifications, emit reports.

Four subcommands cover the library's checkers:

* ``graph-check``    — graph well-formedness, declared subgraphs, partitions
* ``fc-audit``       — unit laws, associativity, order-independence,
                       factor-closedness of a declared sub-instance
* ``free-d2``        — the square of the free differential on a preset
* ``algebra-check``  — candidate structure maps against a preset's relations

Exit status 0 exactly when every requested check passes; 1 when a check
fails; 2 for unusable input.  Output is deterministic: the same input and
seed produce byte-identical reports.  Default bounds (arity 5, label sum 2,
path length 4) can be overridden with ``FCMC_BOUNDS``, e.g.
``FCMC_BOUNDS="arity=6,labels=1,path-len=3"``.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .graphs import (
    GraphError,
    endpoint_violation,
    is_endpoint_closed,
    is_subgraph,
    subgraph,
    validate_graph,
)
from .labels import LabelError, LabelMonoid, LabelingFc
from .multicat import CompositionError, check_axioms, is_factor_closed
from .freedg import (
    FreeDgFc,
    build_Ainf_bimodule,
    build_Ainf_category,
    build_Ainf_operad,
    build_module_preset,
    build_rmodule_preset,
    delta_squared_report,
)
from .algebra import AlgebraError, check_algebra, check_both_routes, \
    direct_checker_for
from . import serde

DEFAULT_BOUNDS = {"arity": 5, "labels": 2, "path_len": 4}
BOUNDS_ENV = "FCMC_BOUNDS"

PRESETS = ("ainf", "category", "bimodule", "left-module", "right-module",
           "rmodule")


class CliError(Exception):
    """Unusable input: bad file, bad flag combination, bad description."""


# ------------------------------------------------------------------ bounds


def resolve_bounds(args) -> dict:
    base = dict(DEFAULT_BOUNDS)
    raw = os.environ.get(BOUNDS_ENV, "")
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise CliError(f"{BOUNDS_ENV} entries must look like key=value, "
                           f"got {part!r}")
        key, val = part.split("=", 1)
        key = key.strip().replace("-", "_")
        if key not in base:
            raise CliError(f"{BOUNDS_ENV} knows {sorted(base)}, "
                           f"not {key!r}")
        try:
            base[key] = int(val)
        except ValueError:
            raise CliError(f"{BOUNDS_ENV}: {val!r} is not an integer")
    for key in base:
        flag = getattr(args, key, None)
        if flag is not None:
            base[key] = flag
    for key, val in base.items():
        if val < (0 if key == "labels" else 1):
            raise CliError(f"bound {key} must be positive, got {val}")
    return base


# ------------------------------------------------------------------ output


class Run:
    """Collects check results and renders them once, deterministically."""

    def __init__(self, command: str, bounds: dict, seed: int):
        self.command = command
        self.bounds = bounds
        self.seed = seed
        self.lines: list[str] = []
        self.docs: list[dict] = []
        self.notes: list[str] = []
        self.ok = True

    def add(self, report) -> None:
        self.lines.append(report.summary())
        self.docs.append(serde.report_to_doc(report))
        self.ok = self.ok and report.ok

    def add_check(self, name: str, ok: bool, detail: str) -> None:
        self.lines.append(f"{name}: {detail}")
        self.docs.append(serde.check_report_doc(name, ok, detail))
        self.ok = self.ok and ok

    def note(self, text: str) -> None:
        self.notes.append(text)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return serde.dumps_doc(serde.report_set_to_doc(
                self.command, self.bounds, self.seed, self.docs,
                self.notes))
        head = [f"command: {self.command}",
                "bounds: arity <= {arity}, label sum <= {labels}, "
                "path length <= {path_len}".format(**self.bounds),
                f"seed: {self.seed}"]
        body = list(self.lines)
        body.extend(f"note: {n}" for n in self.notes)
        tail = [f"verdict: {'PASS' if self.ok else 'FAIL'}"]
        return "\n".join(head + body + tail) + "\n"


def _read_doc(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    try:
        return serde.loads_doc(text)
    except serde.SerdeError as exc:
        raise CliError(f"{path}: {exc}")


# ------------------------------------------------------------- graph-check


def cmd_graph_check(args, bounds) -> Run:
    run = Run(f"graph-check {args.file}", bounds, args.seed)
    doc = _read_doc(args.file)
    serde.check_version(doc)
    g = serde.graph_from_doc(serde._require(doc, "graph"), validate=False)
    report = validate_graph(g)
    if report.ok:
        run.add_check("graph", True,
                      f"valid ({len(g.vertices)} vertices, "
                      f"{len(g.edges)} edges)")
    else:
        run.add_check("graph", False, "; ".join(report.problems))
        return run
    if "sub" in doc:
        sub = serde.graph_from_doc(doc["sub"])
        if not is_subgraph(g, sub):
            raise CliError("declared sub is not a subgraph")
        if is_endpoint_closed(g, sub):
            run.add_check("endpoint-closed(sub)", True, "yes")
        else:
            loop = endpoint_violation(g, sub)
            run.add_check(
                "endpoint-closed(sub)", False,
                f"NO: inputs {list(loop.inputs.edges)} from "
                f"{loop.inputs.source} admit the outside output "
                f"{loop.output}")
    if "partition" in doc:
        parts = [[str(v) for v in part] for part in doc["partition"]]
        listed = [v for part in parts for v in part]
        if sorted(listed) != sorted(g.vertex_ids()):
            raise CliError("partition must list every vertex exactly once")
        pos = {v: k for k, part in enumerate(parts) for v in part}
        kept = [e.id for e in g.edges if pos[e.src] <= pos[e.tgt]]
        psub = subgraph(g, g.vertex_ids(), kept)
        if is_endpoint_closed(g, psub):
            run.add_check("endpoint-closed(partition)", True,
                          f"yes ({len(kept)} edges kept)")
        else:
            loop = endpoint_violation(g, psub)
            run.add_check("endpoint-closed(partition)", False,
                          f"NO: outside output {loop.output}")
    return run


# --------------------------------------------------------------- fc-audit


def cmd_fc_audit(args, bounds) -> Run:
    run = Run(f"fc-audit {args.file}", bounds, args.seed)
    doc = _read_doc(args.file)
    inst, sub = serde.instance_from_doc(doc, bounds["path_len"],
                                        bounds["labels"])
    run.add(check_axioms(inst, bounds["arity"]))
    if sub is not None:
        run.add(is_factor_closed(inst, sub, bounds["arity"]))
    return run


# ---------------------------------------------------------------- free-d2


def _object_names(count: int) -> list[str]:
    return [f"o{k}" for k in range(1, count + 1)]


def _parse_parts(text: str) -> list[list[str]]:
    return [[v.strip() for v in part.split(",") if v.strip()]
            for part in text.split(";") if part.strip()]


def build_free_preset(preset: str, rank: int, truncation: int,
                      objects: int, parts: Optional[str],
                      reduced: bool) -> tuple[FreeDgFc, Optional[list]]:
    monoid = LabelMonoid(rank, truncation)
    if preset == "ainf":
        return build_Ainf_operad(monoid, reduced), None
    if preset == "category":
        return build_Ainf_category(_object_names(objects), monoid,
                                   reduced), None
    if preset == "bimodule":
        return build_Ainf_bimodule(monoid, reduced), None
    if preset in ("left-module", "right-module"):
        return build_module_preset(_object_names(objects),
                                   preset.split("-")[0], monoid,
                                   reduced), None
    if preset == "rmodule":
        names = _object_names(objects)
        part_list = _parse_parts(parts) if parts else [[n] for n in names]
        return build_rmodule_preset(names, part_list, monoid, reduced), None
    if preset.startswith("generalized:"):
        return serde.freedg_from_doc(_read_doc(preset.split(":", 1)[1]))
    raise CliError(
        f"preset must be one of {PRESETS} or generalized:FILE, "
        f"got {preset!r}")


def cmd_free_d2(args, bounds) -> Run:
    run = Run(f"free-d2 {args.preset}", bounds, args.seed)
    truncation = args.labels if args.labels is not None else 0
    fc, gens = build_free_preset(args.preset, args.rank, truncation,
                                 args.objects, args.parts,
                                 not args.unreduced)
    if args.debug_sign_fault:
        fc = FreeDgFc(fc.graph, fc.labeling, preset=fc.preset,
                      custom_rules=fc.custom_rules,
                      custom_only=fc.custom_only, sign_fault=True)
        run.note("debug: Leibniz sign deliberately dropped")
    if args.unreduced:
        run.note("curved variant (proposed definition): empty-input "
                 "generators included, the square need not vanish")
    cap = min(bounds["labels"], fc.monoid.truncation)
    run.add(delta_squared_report(fc, bounds["arity"], cap, gens))
    return run


# ----------------------------------------------------------- algebra-check


def cmd_algebra_check(args, bounds) -> Run:
    run = Run(f"algebra-check {args.file} --route {args.route}", bounds,
              args.seed)
    doc = _read_doc(args.file)
    fc, A = serde.algebra_job_from_doc(doc)
    cap = min(bounds["labels"], fc.monoid.truncation)
    if args.route == "generic":
        run.add(check_algebra(fc, A, bounds["arity"], cap))
    elif args.route == "direct":
        checker = direct_checker_for(fc)
        if checker is None:
            raise CliError(f"no direct route for preset {fc.preset!r}")
        run.add(checker(fc, A, bounds["arity"], cap))
    else:
        generic, direct, agree = check_both_routes(fc, A, bounds["arity"],
                                                   cap)
        run.add(generic)
        run.add(direct)
        run.add_check("routes-agree", agree,
                      "yes" if agree else
                      "NO: the two checkers returned different verdicts")
    return run


# ------------------------------------------------------------------ driver


def _bound_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--arity", type=int, default=None,
                   help="composition/relation arity bound (default 5)")
    p.add_argument("--labels", type=int, default=None,
                   help="label coordinate-sum bound (default 2); for "
                   "free-d2 presets this also declares the monoid "
                   "truncation")
    p.add_argument("--path-len", type=int, default=None, dest="path_len",
                   help="materialized input-path length bound (default 4)")
    p.add_argument("--seed", type=int, default=0,
                   help="recorded in the report; reruns with the same "
                   "input and seed are byte-identical")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="report format; json round-trips through the "
                   "parser")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fcmc",
        description="Verification checks for fc-multicategories, free "
        "differentials, and algebra structures.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph-check",
                       help="validate a graph file, optional subgraph and "
                       "partition verdicts")
    g.add_argument("file")
    _bound_flags(g)
    g.set_defaults(fn=cmd_graph_check)

    a = sub.add_parser("fc-audit",
                       help="unit/associativity axioms of an instance, "
                       "plus factor-closedness of a declared sub")
    a.add_argument("file")
    _bound_flags(a)
    a.set_defaults(fn=cmd_fc_audit)

    f = sub.add_parser("free-d2",
                       help="square of the free differential on a preset")
    f.add_argument("preset",
                   help=f"one of {', '.join(PRESETS)} or generalized:FILE")
    f.add_argument("--rank", type=int, default=1,
                   help="label monoid rank for built-in presets")
    f.add_argument("--objects", type=int, default=2,
                   help="object count for category/module presets")
    f.add_argument("--parts", default=None,
                   help="ordered partition for rmodule, e.g. 'o1;o2,o3'")
    f.add_argument("--unreduced", action="store_true",
                   help="include empty-input generators (curved variant)")
    f.add_argument("--debug-sign-fault", action="store_true",
                   help="drop the Leibniz sign to demonstrate failure")
    _bound_flags(f)
    f.set_defaults(fn=cmd_free_d2)

    c = sub.add_parser("algebra-check",
                       help="check candidate structure maps against a "
                       "preset's relations")
    c.add_argument("file")
    c.add_argument("--route", choices=("generic", "direct", "both"),
                   default="both",
                   help="generic differential route, displayed relation "
                   "sums, or both with agreement asserted")
    _bound_flags(c)
    c.set_defaults(fn=cmd_algebra_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        bounds = resolve_bounds(args)
        run = args.fn(args, bounds)
    except (CliError, serde.SerdeError, GraphError, LabelError,
            CompositionError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(run.render(args.format))
    return 0 if run.ok else 1


if __name__ == "__main__":
    sys.exit(main())
