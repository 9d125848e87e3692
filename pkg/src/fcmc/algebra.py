"""Certify that candidate structure maps satisfy the free-differential
relations, two independent ways.

The generic route interprets a candidate assignment as a map out of a free
dg structure: for every generator m it compares hat_d(alpha(m)) with
alpha(delta(m)), where alpha evaluates decorated trees through the
endomorphism composition.  The direct route re-derives the displayed
relation sums (with the internal differential substituted for the
identity-shaped index) from scratch, sharing no composition or
differential code with the generic route.  Agreement of the two is itself
a checked property.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .chain import (
    CochainComplex,
    EndX,
    MultiMap,
    Scalar,
    Vector,
    _add_into,
    _basis_tuples,
    _clean,
    compose_end,
    hat_d,
    identity_map,
    make_complex,
    multimap,
    zero_map,
)
from .freedg import (
    CompTree,
    FreeCell,
    FreeDgFc,
    GeneratorSpec,
    build_Ainf_operad,
    generator_cell,
    leaf_count,
    tree_leaves,
)
from .graphs import (CompositionError, EdgePath, ProfileLoop,
                     enumerate_profile_loops, path_vertices)
from .labels import MonoidElem, TRIVIAL_MONOID, decompose, fiber
from .multicat import OutOfBound, loop_token


class AlgebraError(Exception):
    pass


class AlgebraData:
    """Complexes over the edges plus one MultiMap per assigned generator.

    Unassigned generators act as zero by default; strict mode makes
    looking one up an error instead.
    """

    def __init__(self, X: EndX, assignment: dict[GeneratorSpec, MultiMap],
                 strict: bool = False):
        self.X = X
        self.strict = strict
        self.assignment = dict(assignment)
        for gen, xi in self.assignment.items():
            if xi.inputs != gen.profile.inputs.edges or \
                    xi.output != gen.profile.output:
                raise AlgebraError(
                    f"map for {gen.name} has boundary "
                    f"({','.join(xi.inputs)};{xi.output}), generator wants "
                    f"{loop_token(gen.profile)}")
            if xi.degree != 1:
                raise AlgebraError(
                    f"map for {gen.name} has degree {xi.degree}, "
                    f"generators are degree 1")

    def alpha_of(self, gen: GeneratorSpec) -> MultiMap:
        if gen in self.assignment:
            return self.assignment[gen]
        if self.strict:
            raise AlgebraError(f"generator {gen.name} is unassigned")
        return zero_map(self.X, gen.profile.inputs.edges,
                        gen.profile.output, 1)


def evaluate_alpha(A: AlgebraData, cell: FreeCell) -> MultiMap:
    """Interpret a cell through the assignment, node by node.

    A tree is evaluated in its written order: the root's map first, then
    each subtree composed in left to right.  That order is the tree's
    canonical orientation, so no signs appear here; all signs live in the
    cell's coefficients and in compose_end itself.
    """
    out = zero_map(A.X, cell.profile.inputs.edges, cell.profile.output,
                   cell.degree)
    for tree, coeff in cell.terms:
        out = out.add(_evaluate_tree(A, tree).scale(coeff))
    return out


def _evaluate_tree(A: AlgebraData, t: CompTree) -> MultiMap:
    if t.gen.is_unit():
        return identity_map(A.X, t.gen.profile.output)
    acc = A.alpha_of(t.gen)
    slot = 1
    for child in t.children:
        if isinstance(child, CompTree):
            acc = compose_end(A.X, acc, slot, _evaluate_tree(A, child))
            slot += leaf_count(child)
        else:
            slot += 1
    return acc


# -------------------------------------------------------------------- report


@dataclass(frozen=True)
class RelationFailure:
    name: str
    arity: int
    label: str
    witness: str


@dataclass(frozen=True)
class RelationReport:
    ok: bool
    route: str
    checked: int
    arity_bound: int
    label_bound: int
    failures: tuple[RelationFailure, ...]
    notes: tuple[str, ...] = ()

    def lowest_failing_arity(self) -> Optional[int]:
        return min((f.arity for f in self.failures), default=None)

    def summary(self) -> str:
        head = (f"[{self.route}] arity <= {self.arity_bound}, "
                f"label <= {self.label_bound}: ")
        lines = []
        if self.ok:
            lines.append(head + f"pass ({self.checked} relations hold)")
        else:
            lines.append(head + f"FAIL ({len(self.failures)} of "
                         f"{self.checked} relations violated; lowest arity "
                         f"{self.lowest_failing_arity()})")
            for f in self.failures:
                lines.append(f"  {f.name} (arity {f.arity}, label "
                             f"{f.label}): {f.witness}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def _map_witness(residue: MultiMap) -> str:
    key = residue.support()[0]
    vec = residue.apply(key)
    terms = " + ".join(f"{c}*{y}" for y, c in sorted(vec.items()))
    return f"on inputs ({','.join(key)}) residue {terms}"


def _preset_notes(fc: FreeDgFc) -> tuple[str, ...]:
    if not fc.labeling.reduced:
        return ("curved variant (proposed definition): empty-input "
                "operations are present and the relations include "
                "curvature terms",)
    return ()


# ------------------------------------------------------------- generic route


def check_algebra(fc: FreeDgFc, A: AlgebraData, arity_bound: int,
                  label_bound: Optional[int] = None) -> RelationReport:
    """The defining condition, generator by generator: applying the
    differential to the assigned map must equal the assignment applied to
    the generator's differential."""
    cap = fc.monoid.truncation if label_bound is None else min(
        label_bound, fc.monoid.truncation)
    failures = []
    gens = fc.generators(arity_bound, cap)
    for gen in gens:
        lhs = hat_d(A.X, A.alpha_of(gen))
        rhs = evaluate_alpha(A, fc.delta_generator(gen))
        residue = lhs.sub(rhs)
        if not residue.is_zero():
            failures.append(RelationFailure(
                gen.name, gen.arity(), str(gen.label),
                _map_witness(residue)))
    return RelationReport(not failures, "generic", len(gens), arity_bound,
                          cap, tuple(failures), _preset_notes(fc))


def algebra_residue(fc: FreeDgFc, A: AlgebraData,
                    gen: GeneratorSpec) -> MultiMap:
    return hat_d(A.X, A.alpha_of(gen)).sub(
        evaluate_alpha(A, fc.delta_generator(gen)))


# -------------------------------------------------------------- direct route
#
# Everything below evaluates the relation sums from their displayed form:
# raw coefficient tables, the internal differential substituted at
# identity-shaped indices, and the sign of the arguments left of the inner
# block.  It deliberately shares no code with hat_d / compose_end /
# delta_generator so the two routes can serve as each other's oracle.


def _direct_tables(fc: FreeDgFc, A: AlgebraData):
    """Index the assignment by (input word, output edge, label)."""
    tables = {}
    for gen, xi in A.assignment.items():
        key = (gen.profile.inputs.edges, gen.profile.output, gen.label)
        tables[key] = xi.table
    return tables


def _direct_apply(fc: FreeDgFc, A: AlgebraData, tables, word, out_edge,
                  beta, args) -> Vector:
    """Value of the indexed operation on basis elements, as a raw vector.

    The identity-shaped index (single input equal to the output, zero
    label) is the internal differential of that edge's complex.
    """
    if word == (out_edge,) and beta.is_zero():
        return A.X.complex(out_edge).d.get(args[0], {})
    tbl = tables.get((word, out_edge, beta))
    if tbl is None:
        return {}
    return tbl.get(tuple(args), {})


def _direct_residues(fc: FreeDgFc, A: AlgebraData, tables,
                     loop: ProfileLoop, beta: MonoidElem):
    """All nonzero values of the relation sum over one boundary index."""
    word = loop.inputs.edges
    n = len(word)
    walk = path_vertices(fc.graph, loop.inputs)
    cxs = [A.X.complex(e) for e in word]
    out: list[tuple[tuple[str, ...], Vector]] = []
    for args in _basis_tuples(cxs):
        total: Vector = {}
        sign = 1
        for r in range(n + 1):
            if r > 0 and cxs[r - 1].degree(args[r - 1]) % 2:
                sign = -sign
            for s in range(n - r + 1):
                for bridge in fc.graph.edges:
                    if bridge.src != walk[r] or bridge.tgt != walk[r + s]:
                        continue
                    outer_word = word[:r] + (bridge.id,) + word[r + s:]
                    for b1, b2 in decompose(beta):
                        inner = _direct_apply(fc, A, tables,
                                              word[r:r + s], bridge.id, b2,
                                              args[r:r + s])
                        if not inner:
                            continue
                        for mid, cm in inner.items():
                            outer = _direct_apply(
                                fc, A, tables, outer_word,
                                loop.output, b1,
                                args[:r] + (mid,) + args[r + s:])
                            _add_into(total, outer, sign * cm)
        total = _clean(total)
        if total:
            out.append((args, total))
    return out


def _run_direct(fc: FreeDgFc, A: AlgebraData, route: str, arity_bound: int,
                label_bound: Optional[int]) -> RelationReport:
    cap = fc.monoid.truncation if label_bound is None else min(
        label_bound, fc.monoid.truncation)
    tables = _direct_tables(fc, A)
    failures = []
    checked = 0
    for loop in enumerate_profile_loops(fc.graph, arity_bound):
        for beta in fc.monoid.elements():
            if beta.total() > cap:
                continue
            checked += 1
            bad = _direct_residues(fc, A, tables, loop, beta)
            if bad:
                args, vec = bad[0]
                terms = " + ".join(f"{c}*{y}" for y, c in sorted(vec.items()))
                failures.append(RelationFailure(
                    f"relation[{loop_token(loop)}]@{beta}", loop.arity(),
                    str(beta),
                    f"on inputs ({','.join(args)}) residue {terms}"))
    return RelationReport(not failures, route, checked, arity_bound, cap,
                          tuple(failures), _preset_notes(fc))


def _require_graph_shape(fc: FreeDgFc, expected: str) -> None:
    g = fc.graph
    if expected == "ainf":
        ok = len(g.vertices) == 1 and len(g.edges) == 1
    elif expected == "category":
        vs = [v.id for v in g.vertices]
        wanted = {f"{u}->{w}" for u in vs for w in vs}
        ok = {e.id for e in g.edges} == wanted and \
            all(e.id == f"{e.src}->{e.tgt}" for e in g.edges)
    elif expected == "bimodule":
        ok = {e.id for e in g.edges} == {"e0", "e01", "e1"} and \
            len(g.vertices) == 2
    else:
        ok = True
    if not ok:
        raise AlgebraError(
            f"{expected} checker needs the {expected} preset graph")


def check_ainfty_direct(fc: FreeDgFc, A: AlgebraData, arity_bound: int,
                        label_bound: Optional[int] = None) -> RelationReport:
    """One-object relation sums: every way of applying an inner operation
    to a consecutive block, signed by the arguments before the block."""
    _require_graph_shape(fc, "ainf")
    return _run_direct(fc, A, "ainf-direct", arity_bound, label_bound)


def check_category_direct(fc: FreeDgFc, A: AlgebraData, arity_bound: int,
                          label_bound: Optional[int] = None
                          ) -> RelationReport:
    """Relation sums per composable word over the pair graph."""
    _require_graph_shape(fc, "category")
    return _run_direct(fc, A, "category-direct", arity_bound, label_bound)


def check_bimodule_direct(fc: FreeDgFc, A: AlgebraData, arity_bound: int,
                          label_bound: Optional[int] = None
                          ) -> RelationReport:
    """The two one-sided relation families plus the three-block two-sided
    sums, per word over the bimodule graph."""
    _require_graph_shape(fc, "bimodule")
    return _run_direct(fc, A, "bimodule-direct", arity_bound, label_bound)


def direct_checker_for(fc: FreeDgFc):
    """The matching direct route for a preset, if one exists."""
    return {
        "ainf": check_ainfty_direct,
        "category": check_category_direct,
        "bimodule": check_bimodule_direct,
    }.get(fc.preset)


def check_both_routes(fc: FreeDgFc, A: AlgebraData, arity_bound: int,
                      label_bound: Optional[int] = None
                      ) -> tuple[RelationReport, RelationReport, bool]:
    """Run generic and direct checkers; the two verdicts must agree, and
    on failure they must blame the same lowest arity."""
    generic = check_algebra(fc, A, arity_bound, label_bound)
    direct_fn = direct_checker_for(fc)
    if direct_fn is None:
        raise AlgebraError(
            f"no direct checker for preset {fc.preset!r}")
    direct = direct_fn(fc, A, arity_bound, label_bound)
    agree = generic.ok == direct.ok and \
        generic.lowest_failing_arity() == direct.lowest_failing_arity()
    return generic, direct, agree


# ----------------------------------------------------------------- dga lift


def lift_dga(elements: Sequence[tuple[str, int]],
             diff: dict[str, Vector],
             table: dict[tuple[str, str], Vector]
             ) -> tuple[FreeDgFc, AlgebraData]:
    """Shift an honest differential graded algebra into the one-object
    preset: degrees drop by one, the product acquires the sign of its
    first argument, and everything above the product is zero.
    """
    orig_deg = dict(elements)
    for (x, y), vec in table.items():
        for z, c in vec.items():
            if c != 0 and orig_deg[z] != orig_deg[x] + orig_deg[y]:
                raise AlgebraError(
                    f"product {x}*{y} -> {z} breaks degrees "
                    f"({orig_deg[x]}+{orig_deg[y]} != {orig_deg[z]})")
    shifted = [(x, d - 1) for x, d in elements]
    cx = make_complex(shifted, diff)
    fc = build_Ainf_operad(TRIVIAL_MONOID)
    X = EndX(fc.graph, {"e": cx})
    m2_entries: dict[tuple[str, ...], Vector] = {}
    for (x, y), vec in table.items():
        sign = -1 if cx.degree(x) % 2 else 1
        vec = _clean({z: sign * c for z, c in vec.items()})
        if vec:
            m2_entries[(x, y)] = vec
    loop2 = ProfileLoop(EdgePath(("e", "e"), "v", "v"), "e")
    m2 = fc.generator(loop2, fc.monoid.zero())
    assignment = {m2: multimap(X, ("e", "e"), "e", 1, m2_entries)}
    return fc, AlgebraData(X, assignment)


# ------------------------------------------------------------------ sampling


def random_endx(graph, seed: int, max_dim: int = 3,
                degree_range: tuple[int, int] = (0, 2)) -> EndX:
    """Seeded complexes over every edge, with structurally exact d^2 = 0:
    the differential pairs each source basis element with a single target
    used by no other pair."""
    rng = random.Random(seed)
    complexes = {}
    for e in sorted(graph.edge_ids()):
        dim = rng.randint(1, max_dim)
        elems = [(f"{e}_{k}", rng.randint(*degree_range))
                 for k in range(dim)]
        by_deg: dict[int, list[str]] = {}
        for x, d in elems:
            by_deg.setdefault(d, []).append(x)
        used: set[str] = set()
        d_map: dict[str, Vector] = {}
        for x, d in elems:
            if x in used:
                continue
            targets = [y for y in by_deg.get(d + 1, ())
                       if y not in used and y != x]
            if targets and rng.random() < 0.7:
                y = rng.choice(targets)
                d_map[x] = {y: rng.choice([-2, -1, 1, 2])}
                used.add(x)
                used.add(y)
        complexes[e] = make_complex(elems, d_map)
    return EndX(graph, complexes)


def random_assignment(fc: FreeDgFc, X: EndX, seed: int, arity_bound: int,
                      label_bound: Optional[int] = None,
                      density: float = 0.5) -> AlgebraData:
    """Seeded degree-consistent sparse maps for every generator in bounds,
    with small integer coefficients."""
    rng = random.Random(seed)
    assignment: dict[GeneratorSpec, MultiMap] = {}
    for gen in fc.generators(arity_bound, label_bound):
        cxs = [X.complex(e) for e in gen.profile.inputs.edges]
        out_cx = X.complex(gen.profile.output)
        entries: dict[tuple[str, ...], Vector] = {}
        for args in _basis_tuples(cxs):
            want = sum(cx.degree(x) for cx, x in zip(cxs, args)) + 1
            ys = [y for y in out_cx.basis.ids() if out_cx.degree(y) == want]
            if not ys or rng.random() > density:
                continue
            y = rng.choice(ys)
            entries[args] = {y: rng.choice([-2, -1, 1, 2])}
        if entries:
            assignment[gen] = multimap(
                X, gen.profile.inputs.edges, gen.profile.output, 1, entries)
    return AlgebraData(X, assignment)
