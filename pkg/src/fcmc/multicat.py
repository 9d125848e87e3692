"""Vertically discrete fc-multicategories, finitely enumerated.

A 2-cell sits over a profile-loop: it consumes the input path's edges and
produces the output edge.  Partial composition substitutes one cell's
inputs into a slot of another; simultaneous composition (gamma) fills
every slot at once and must not depend on the insertion order.

Three concrete instance families are provided:

* profile-loop instances — one cell per profile-loop, composition is path
  substitution itself;
* labeled instances — cells are (profile-loop, monoid label) pairs,
  composition adds labels;
* table instances — hand-built finite cell sets with explicit composition
  tables, used for audits and fault injection.

Free-like instances are infinite, so every instance carries an input
length bound (and the labeled ones a truncation); a composition that
leaves the bounds returns a typed :class:`OutOfBound` instead of raising.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence, Union

from .graphs import (
    CompositionError,
    DirectedGraph,
    EdgePath,
    GraphError,
    ProfileLoop,
    enumerate_profile_loops,
    is_profile_loop,
    is_subgraph,
)
from .labels import LabelingFc, MonoidElem, add, fiber


@dataclass(frozen=True)
class TwoCell:
    id: str
    profile: ProfileLoop
    label: Optional[MonoidElem] = None

    def arity(self) -> int:
        return self.profile.arity()


@dataclass(frozen=True)
class OutOfBound:
    """A composition result that exists but lies beyond the enumeration bounds."""
    reason: str


ComposeResult = Union[TwoCell, OutOfBound]


def loop_token(loop: ProfileLoop) -> str:
    """Canonical printable id for a profile-loop: "e1,e2;out"."""
    return ",".join(loop.inputs.edges) + ";" + loop.output


def cell_token(loop: ProfileLoop, label: Optional[MonoidElem]) -> str:
    if label is None:
        return loop_token(loop)
    return loop_token(loop) + "@" + str(label)


def substituted_profile(outer: ProfileLoop, i: int,
                        inner: ProfileLoop) -> ProfileLoop:
    """Replace slot i of the outer input path by the inner input path."""
    edges = outer.inputs.edges
    new_edges = edges[:i - 1] + inner.inputs.edges + edges[i:]
    path = EdgePath(new_edges, outer.inputs.source, outer.inputs.target)
    return ProfileLoop(path, outer.output)


class FcInstance:
    """Base class: a graph plus cells, units, and partial composition."""

    graph: DirectedGraph

    def cells(self) -> list[TwoCell]:
        raise NotImplementedError

    def contains(self, cell: TwoCell) -> bool:
        raise NotImplementedError

    def unit(self, eid: str) -> TwoCell:
        raise NotImplementedError

    def compose(self, u: TwoCell, i: int, v: TwoCell) -> ComposeResult:
        raise NotImplementedError

    def _check_slot(self, u: TwoCell, i: int, v: TwoCell) -> None:
        if not 1 <= i <= u.arity():
            raise CompositionError(
                f"slot {i} out of range for arity {u.arity()}")
        expected = u.profile.inputs.edges[i - 1]
        if v.profile.output != expected:
            raise CompositionError(
                f"inner cell produces {v.profile.output!r}, slot {i} "
                f"wants {expected!r}")


def identity_cell(fc: FcInstance, eid: str) -> TwoCell:
    return fc.unit(eid)


def compose_i(fc: FcInstance, u: TwoCell, i: int, v: TwoCell) -> ComposeResult:
    return fc.compose(u, i, v)


def gamma(fc: FcInstance, u: TwoCell, inners: Sequence[TwoCell],
          order: Optional[Sequence[int]] = None) -> ComposeResult:
    """Simultaneous substitution, as iterated partial composition.

    ``order`` gives the sequence of original slot indices to insert
    (default: descending, which needs no slot shifting).  Any order gives
    the same result; the audit below checks that.
    """
    n = u.arity()
    if len(inners) != n:
        raise CompositionError(
            f"need {n} inner cells, got {len(inners)}")
    if order is None:
        order = range(n, 0, -1)
    order = tuple(order)
    if sorted(order) != list(range(1, n + 1)):
        raise CompositionError(f"order {order!r} is not a permutation")
    acc = u
    done: list[int] = []
    for slot in order:
        shift = sum(inners[j - 1].arity() - 1 for j in done if j < slot)
        acc = fc.compose(acc, slot + shift, inners[slot - 1])
        if isinstance(acc, OutOfBound):
            return acc
        done.append(slot)
    return acc


class ProfileLoopInstance(FcInstance):
    """One cell per profile-loop; composition is path substitution."""

    def __init__(self, graph: DirectedGraph, max_len: int):
        self.graph = graph
        self.max_len = max_len
        self._cells: Optional[list[TwoCell]] = None

    def _cell(self, loop: ProfileLoop) -> TwoCell:
        return TwoCell(loop_token(loop), loop, None)

    def cells(self) -> list[TwoCell]:
        if self._cells is None:
            self._cells = [self._cell(l) for l in
                           enumerate_profile_loops(self.graph, self.max_len)]
        return self._cells

    def contains(self, cell: TwoCell) -> bool:
        return (cell.label is None
                and cell.arity() <= self.max_len
                and is_profile_loop(self.graph, cell.profile.inputs,
                                    cell.profile.output)
                and cell.id == loop_token(cell.profile))

    def unit(self, eid: str) -> TwoCell:
        e = self.graph.edge(eid)
        loop = ProfileLoop(EdgePath((eid,), e.src, e.tgt), eid)
        return self._cell(loop)

    def compose(self, u: TwoCell, i: int, v: TwoCell) -> ComposeResult:
        self._check_slot(u, i, v)
        profile = substituted_profile(u.profile, i, v.profile)
        if profile.arity() > self.max_len:
            return OutOfBound(
                f"input length {profile.arity()} exceeds bound {self.max_len}")
        return self._cell(profile)


class LabeledInstance(FcInstance):
    """Cells are (profile-loop, label) pairs; composition adds labels."""

    def __init__(self, labeling: LabelingFc, max_len: int):
        self.labeling = labeling
        self.graph = labeling.graph
        self.max_len = max_len
        self._cells: Optional[list[TwoCell]] = None

    def _cell(self, loop: ProfileLoop, beta: MonoidElem) -> TwoCell:
        return TwoCell(cell_token(loop, beta), loop, beta)

    def cells(self) -> list[TwoCell]:
        if self._cells is None:
            out = []
            for loop in enumerate_profile_loops(self.graph, self.max_len):
                for beta in fiber(self.labeling, loop):
                    out.append(self._cell(loop, beta))
            self._cells = out
        return self._cells

    def contains(self, cell: TwoCell) -> bool:
        return (cell.label is not None
                and cell.arity() <= self.max_len
                and cell.label in fiber(self.labeling, cell.profile)
                and cell.id == cell_token(cell.profile, cell.label))

    def unit(self, eid: str) -> TwoCell:
        e = self.graph.edge(eid)
        loop = ProfileLoop(EdgePath((eid,), e.src, e.tgt), eid)
        return self._cell(loop, self.labeling.monoid.zero())

    def compose(self, u: TwoCell, i: int, v: TwoCell) -> ComposeResult:
        self._check_slot(u, i, v)
        assert u.label is not None and v.label is not None
        beta = add(u.label, v.label)
        if beta.total() > self.labeling.monoid.truncation:
            return OutOfBound(
                f"label {beta} exceeds truncation "
                f"{self.labeling.monoid.truncation}")
        profile = substituted_profile(u.profile, i, v.profile)
        if profile.arity() > self.max_len:
            return OutOfBound(
                f"input length {profile.arity()} exceeds bound {self.max_len}")
        return self._cell(profile, beta)


class TableInstance(FcInstance):
    """A hand-built instance with explicit cells, units, and compositions.

    ``table`` maps (outer id, slot, inner id) to the composite's cell id.
    Compositions whose endpoints match but which have no table entry
    return OutOfBound so partially specified instances stay usable.
    """

    def __init__(self, graph: DirectedGraph, cells: Sequence[TwoCell],
                 units: dict[str, str],
                 table: dict[tuple[str, int, str], str]):
        self.graph = graph
        self._cell_list = list(cells)
        self._by_id = {c.id: c for c in self._cell_list}
        if len(self._by_id) != len(self._cell_list):
            raise GraphError("duplicate cell ids")
        for c in self._cell_list:
            if not is_profile_loop(graph, c.profile.inputs, c.profile.output):
                raise GraphError(f"cell {c.id!r} has an invalid profile")
        self._units = {}
        for eid, cid in units.items():
            cell = self._by_id[cid]
            e = graph.edge(eid)
            if cell.profile.inputs.edges != (eid,) or cell.profile.output != eid:
                raise GraphError(
                    f"unit for {eid!r} must sit over the identity loop")
            self._units[eid] = cell
        self.table = dict(table)

    def cells(self) -> list[TwoCell]:
        return list(self._cell_list)

    def contains(self, cell: TwoCell) -> bool:
        return self._by_id.get(cell.id) == cell

    def unit(self, eid: str) -> TwoCell:
        self.graph.edge(eid)
        try:
            return self._units[eid]
        except KeyError:
            raise CompositionError(f"no unit declared for edge {eid!r}") from None

    def compose(self, u: TwoCell, i: int, v: TwoCell) -> ComposeResult:
        self._check_slot(u, i, v)
        key = (u.id, i, v.id)
        if key not in self.table:
            return OutOfBound(f"no table entry for {key!r}")
        return self._by_id[self.table[key]]


def profile_loop_instance(g: DirectedGraph, max_len: int) -> ProfileLoopInstance:
    return ProfileLoopInstance(g, max_len)


def labeled_instance(lfc: LabelingFc, max_len: int) -> LabeledInstance:
    return LabeledInstance(lfc, max_len)


class FullSub(FcInstance):
    """The full submulticategory over a subgraph: same fibers, restricted."""

    def __init__(self, parent: FcInstance, sub: DirectedGraph):
        if not is_subgraph(parent.graph, sub):
            raise GraphError("not a subgraph of the instance's graph")
        self.parent = parent
        self.graph = sub
        self._edge_ids = frozenset(sub.edge_ids())
        self._cells: Optional[list[TwoCell]] = None

    def _inside(self, cell: TwoCell) -> bool:
        profile = cell.profile
        return (profile.output in self._edge_ids
                and all(e in self._edge_ids for e in profile.inputs.edges)
                and self.graph.has_vertex(profile.inputs.source))

    def cells(self) -> list[TwoCell]:
        if self._cells is None:
            self._cells = [c for c in self.parent.cells() if self._inside(c)]
        return self._cells

    def contains(self, cell: TwoCell) -> bool:
        return self.parent.contains(cell) and self._inside(cell)

    def unit(self, eid: str) -> TwoCell:
        if eid not in self._edge_ids:
            raise GraphError(f"edge {eid!r} not in the subgraph")
        return self.parent.unit(eid)

    def compose(self, u: TwoCell, i: int, v: TwoCell) -> ComposeResult:
        # a composite of cells inside the subgraph only uses their edges,
        # so the restriction is automatically closed under composition
        return self.parent.compose(u, i, v)


def full_submulticategory(fc: FcInstance, sub: DirectedGraph) -> FullSub:
    return FullSub(fc, sub)


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    failure: Optional[str]
    witness: Optional[tuple]
    checked: int
    skipped: int

    def summary(self) -> str:
        verdict = "pass" if self.ok else f"FAIL: {self.failure}"
        if self.witness is not None:
            verdict += " on " + ", ".join(str(w) for w in self.witness)
        return (f"{verdict} ({self.checked} identities checked, "
                f"{self.skipped} skipped out-of-bound)")


class _Indexed:
    """The slot-composition table of a bounded population, on integers.

    Every cell of the population gets an index; ``tab[u][i][p]`` is the
    index of the composite of cell u at slot i+1 with the p-th cell whose
    output matches that slot, or -1 when the composite leaves the
    population (out of bound, no table entry, or beyond the arity cap).
    The cubic identity checks then run on plain list indexing instead of
    rebuilding cells.
    """

    def __init__(self, fc: FcInstance, arity_bound: int):
        self.fc = fc
        self.cells = [c for c in fc.cells() if c.arity() <= arity_bound]
        self.idx = {c.id: k for k, c in enumerate(self.cells)}
        self.arity = [c.arity() for c in self.cells]
        self.by_out: dict[str, list[int]] = {}
        for k, c in enumerate(self.cells):
            self.by_out.setdefault(c.profile.output, []).append(k)
        self.pos: dict[str, dict[int, int]] = {
            e: {k: p for p, k in enumerate(ks)}
            for e, ks in self.by_out.items()}
        self.tab: list[list[list[int]]] = []
        # conc[u][i-1]: only the concrete entries, as (inner, composite)
        self.conc: list[list[list[tuple[int, int]]]] = []
        for u in self.cells:
            rows = []
            crows = []
            for i, eid in enumerate(u.profile.inputs.edges, start=1):
                row = []
                crow = []
                for k in self.by_out.get(eid, []):
                    uv = fc.compose(u, i, self.cells[k])
                    if isinstance(uv, OutOfBound):
                        row.append(-1)
                    else:
                        r = self.idx.get(uv.id, -1)
                        row.append(r)
                        if r >= 0:
                            crow.append((k, r))
                rows.append(row)
                crows.append(crow)
            self.tab.append(rows)
            self.conc.append(crows)

    def compose_idx(self, u: int, i: int, v: int) -> int:
        """Composite index via the table; -1 when out of population."""
        eid = self.cells[u].profile.inputs.edges[i - 1]
        p = self.pos.get(eid, {}).get(v)
        if p is None:
            return -1
        return self.tab[u][i - 1][p]

    def gamma_idx(self, u: int, inners: Sequence[int],
                  order: Sequence[int]) -> int:
        acc = u
        done: list[int] = []
        for slot in order:
            shift = sum(self.arity[inners[j - 1]] - 1
                        for j in done if j < slot)
            acc = self.compose_idx(acc, slot + shift, inners[slot - 1])
            if acc < 0:
                return -1
            done.append(slot)
        return acc


def check_axioms(fc: FcInstance, arity_bound: int,
                 gamma_orders: bool = True) -> AxiomReport:
    """Audit unit laws and both composition-associativity identities.

    Checks, exhaustively over cells of arity <= arity_bound:

    * u o_i id = u and id o_1 u = u;
    * nested:   (u o_i v) o_{i-1+j} w = u o_i (v o_j w);
    * parallel: (u o_i v) o_{k-1+m} w = (u o_k w) o_i v for i < k, m the
      arity of v;
    * optionally, order-independence of gamma over all full slot
      assignments and all insertion orders.

    Comparisons where some route leaves the population (instance bounds or
    the arity cap) are counted as skipped, not failed.
    """
    ix = _Indexed(fc, arity_bound)
    cells = ix.cells
    checked = 0
    skipped = 0

    def fail(kind: str, witness: tuple) -> AxiomReport:
        return AxiomReport(False, kind, witness, checked, skipped)

    for u in cells:
        out_unit = fc.unit(u.profile.output)
        left = fc.compose(out_unit, 1, u)
        if isinstance(left, OutOfBound):
            skipped += 1
        else:
            checked += 1
            if left != u:
                return fail("left unit law", (u.id,))
        for i, eid in enumerate(u.profile.inputs.edges, start=1):
            right = fc.compose(u, i, fc.unit(eid))
            if isinstance(right, OutOfBound):
                skipped += 1
                continue
            checked += 1
            if right != u:
                return fail("right unit law", (u.id, i))

    # Only triples where both comparison routes stay inside the population
    # are decidable, and both routes share the pair composites u o_i v
    # resp. v o_j w / u o_k w; iterating concrete pair entries therefore
    # visits every comparable triple while skipping dead combinations
    # wholesale.
    arity = ix.arity
    conc = ix.conc
    compose_idx = ix.compose_idx
    for u in range(len(cells)):
        for i in range(1, arity[u] + 1):
            for v, uv in conc[u][i - 1]:
                # nested: w lands inside v
                for j in range(1, arity[v] + 1):
                    for w, vw in conc[v][j - 1]:
                        a = compose_idx(uv, i - 1 + j, w)
                        b = compose_idx(u, i, vw)
                        if a < 0 or b < 0:
                            skipped += 1
                            continue
                        checked += 1
                        if a != b:
                            return fail(
                                "nested associativity",
                                (cells[u].id, i, cells[v].id, j, cells[w].id))
                # parallel: w lands in a later slot of u
                m = arity[v]
                for k in range(i + 1, arity[u] + 1):
                    for w, uw in conc[u][k - 1]:
                        a = compose_idx(uv, k - 1 + m, w)
                        b = compose_idx(uw, i, v)
                        if a < 0 or b < 0:
                            skipped += 1
                            continue
                        checked += 1
                        if a != b:
                            return fail(
                                "parallel associativity",
                                (cells[u].id, i, cells[v].id, k, cells[w].id))

    if gamma_orders:
        result = _check_gamma_orders(fc, ix, checked, skipped, fail)
        if isinstance(result, AxiomReport):
            return result
        checked, skipped = result

    return AxiomReport(True, None, None, checked, skipped)


def _label_total(cell: TwoCell) -> int:
    return cell.label.total() if cell.label is not None else 0


def _check_gamma_orders(fc, ix, checked, skipped, fail):
    """Compare all insertion orders of gamma over all full slot fillings.

    Inner tuples are enumerated depth-first with budget pruning: once the
    partial arity sum (the composite's final input length) or the partial
    label total can no longer stay within the instance bounds, the branch
    dies.  This visits every tuple for which any order completes.
    """
    cells = ix.cells
    arity_cap = max((c.arity() for c in cells), default=0)
    label_cap = max((_label_total(c) for c in cells), default=0)
    # bucket candidates per edge by (arity, label total) for the pruning
    buckets: dict[str, list[tuple[int, int, list[int]]]] = {}
    for e, ks in ix.by_out.items():
        grouped: dict[tuple[int, int], list[int]] = {}
        for k in ks:
            key = (ix.arity[k], _label_total(cells[k]))
            grouped.setdefault(key, []).append(k)
        buckets[e] = [(a, l, ks2) for (a, l), ks2 in sorted(grouped.items())]
    orders_by_n: dict[int, list[tuple[int, ...]]] = {}

    for u in range(len(cells)):
        n = ix.arity[u]
        if n < 2:
            continue
        if n not in orders_by_n:
            orders_by_n[n] = list(permutations(range(1, n + 1)))
        ins = cells[u].profile.inputs.edges
        slot_buckets = [buckets.get(e, []) for e in ins]
        if any(not b for b in slot_buckets):
            continue
        budget_a = arity_cap
        budget_l = label_cap - _label_total(cells[u])
        tuples: list[list[int]] = []

        def grow(slot: int, sum_a: int, sum_l: int, acc: list[int]):
            if slot == n:
                tuples.append(list(acc))
                return
            for a, l, ks in slot_buckets[slot]:
                if sum_a + a > budget_a or sum_l + l > budget_l:
                    continue
                for k in ks:
                    acc.append(k)
                    grow(slot + 1, sum_a + a, sum_l + l, acc)
                    acc.pop()

        grow(0, 0, 0, [])
        for inners in tuples:
            first = -1
            first_order = None
            for order in orders_by_n[n]:
                r = ix.gamma_idx(u, inners, order)
                if r < 0:
                    continue
                if first < 0:
                    first, first_order = r, order
                elif r != first:
                    return fail(
                        "gamma order-dependence",
                        (cells[u].id, tuple(cells[k].id for k in inners),
                         first_order, order))
            if first < 0:
                skipped += 1
            else:
                checked += 1
    return checked, skipped


@dataclass(frozen=True)
class FactorReport:
    ok: bool
    witness: Optional[tuple[TwoCell, int, TwoCell]]
    checked: int

    def summary(self) -> str:
        if self.ok:
            return f"factor-closed ({self.checked} composites checked)"
        u, i, v = self.witness
        return (f"NOT factor-closed: {u.id} o_{i} {v.id} lands inside "
                f"with a factor outside")


def is_factor_closed(fc: FcInstance, sub: FcInstance,
                     bound: int) -> FactorReport:
    """Does every composite landing in ``sub`` force both factors into it?

    Quantifies over all composable cell pairs of ``fc`` with arity at most
    ``bound`` whose composite stays within the enumeration bounds.
    """
    if not is_subgraph(fc.graph, sub.graph):
        raise GraphError("candidate is not over a subgraph")
    for c in sub.cells():
        if not fc.contains(c):
            raise GraphError(f"cell {c.id!r} is not a cell of the ambient "
                             "instance")
    cells = [c for c in fc.cells() if c.arity() <= bound]
    by_out: dict[str, list[TwoCell]] = {}
    for c in cells:
        by_out.setdefault(c.profile.output, []).append(c)
    checked = 0
    for u in cells:
        for i, eid in enumerate(u.profile.inputs.edges, start=1):
            for v in by_out.get(eid, ()):
                uv = fc.compose(u, i, v)
                if isinstance(uv, OutOfBound):
                    continue
                checked += 1
                if sub.contains(uv) and not (sub.contains(u)
                                             and sub.contains(v)):
                    return FactorReport(False, (u, i, v), checked)
    return FactorReport(True, None, checked)
