"""Free differential-graded structures presented by degree-1 generators.

A generator is a named symbol over a (profile-loop, label) pair; the free
structure's 2-cells are exact-rational linear combinations of decorated
planar trees, one tree per iterated composite of generators.  The
differential splits one node at a time into a two-node composite and
extends by a Leibniz rule; its square vanishing is the defining
cancellation and is what the sweeps here verify.

Sign discipline.  Every generator has degree 1, so trees only represent
cells faithfully together with an orientation of their node set; we fix
planar *pre-order* (root first, then subtrees left to right), matching the
left-normal written form of iterated composites.  Any operation that
produces a tree in a different multiplication order must pay the parity of
the permutation returning its nodes to pre-order:

* grafting a tree t' onto leaf i of t appends t' to t's node list, while
  pre-order wants it just after the node above leaf i — the sign is
  (-1)^(deg t' * number of nodes of t after leaf i in pre-order);
* replacing the node at pre-order position j during the differential
  carries the Leibniz sign (-1)^(degree sum before j), and the inserted
  inner node must move past the replaced node's first q-1 subtrees to
  reach its slot — the sign is (-1)^(degree sum of those subtrees).

Dropping either parity breaks the square-zero property already at arity 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .graphs import (
    CompositionError,
    DirectedGraph,
    EdgePath,
    GraphError,
    ProfileLoop,
    build_bimodule_graph,
    build_left_module_graph,
    build_pair_graph,
    build_partition_subgraph,
    build_right_module_graph,
    enumerate_profile_loops,
    make_graph,
    path_vertices,
)
from .labels import LabelMonoid, LabelingFc, MonoidElem, add, decompose, fiber
from .multicat import OutOfBound, loop_token, substituted_profile

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class GeneratorSpec:
    """A free generator: a name, a boundary profile, a label, degree 1.

    Unit cells are represented uniformly as degree-0 specs over the
    identity profile; they are not generators and carry no differential.
    """
    name: str
    profile: ProfileLoop
    label: MonoidElem
    degree: int = 1

    def arity(self) -> int:
        return self.profile.arity()

    def is_unit(self) -> bool:
        return self.degree == 0


Child = Union[str, "CompTree"]


@dataclass(frozen=True)
class CompTree:
    """A planar tree of generators; leaves carry the composite's inputs."""
    gen: GeneratorSpec
    children: tuple[Child, ...]


def unit_spec(g: DirectedGraph, eid: str) -> GeneratorSpec:
    e = g.edge(eid)
    loop = ProfileLoop(EdgePath((eid,), e.src, e.tgt), eid)
    zero = MonoidElem((0,))
    return GeneratorSpec(f"1[{eid}]", loop, zero, degree=0)


def unit_tree(g: DirectedGraph, eid: str) -> CompTree:
    return CompTree(unit_spec(g, eid), (eid,))


def leaf_of(gen: GeneratorSpec) -> CompTree:
    """The one-node tree of a generator, all inputs still open."""
    return CompTree(gen, gen.profile.inputs.edges)


def tree_degree(t: CompTree) -> int:
    return t.gen.degree + sum(tree_degree(c) for c in t.children
                              if isinstance(c, CompTree))


def leaf_count(t: CompTree) -> int:
    total = 0
    for c in t.children:
        total += 1 if isinstance(c, str) else leaf_count(c)
    return total


def tree_leaves(t: CompTree) -> tuple[str, ...]:
    out: list[str] = []
    for c in t.children:
        if isinstance(c, str):
            out.append(c)
        else:
            out.extend(tree_leaves(c))
    return tuple(out)


def tree_profile(t: CompTree) -> ProfileLoop:
    # substitution preserves endpoints, so the composite inherits the
    # root's source/target
    root = t.gen.profile
    path = EdgePath(tree_leaves(t), root.inputs.source, root.inputs.target)
    return ProfileLoop(path, root.output)


def tree_label(t: CompTree) -> MonoidElem:
    beta = t.gen.label
    for c in t.children:
        if isinstance(c, CompTree):
            beta = add(beta, tree_label(c))
    return beta


def tree_nodes(t: CompTree) -> list[GeneratorSpec]:
    """Internal nodes in pre-order: root first, subtrees left to right."""
    out = [t.gen]
    for c in t.children:
        if isinstance(c, CompTree):
            out.extend(tree_nodes(c))
    return out


def tree_key(t: CompTree):
    kids = tuple(tree_key(c) if isinstance(c, CompTree) else ("L", c, ())
                 for c in t.children)
    return ("N", t.gen.name, kids)


def format_tree(t: CompTree) -> str:
    if t.gen.is_unit():
        return t.gen.name
    parts = [format_tree(c) if isinstance(c, CompTree) else c
             for c in t.children]
    return f"{t.gen.name}({','.join(parts)})"


def validate_tree(t: CompTree) -> None:
    """Check output edges of children against the node's input word."""
    ins = t.gen.profile.inputs.edges
    if len(t.children) != len(ins):
        raise CompositionError(
            f"node {t.gen.name} has {len(t.children)} children for "
            f"{len(ins)} inputs")
    for c, eid in zip(t.children, ins):
        if isinstance(c, str):
            if c != eid:
                raise CompositionError(
                    f"leaf {c!r} under {t.gen.name} should be {eid!r}")
        else:
            if c.gen.profile.output != eid:
                raise CompositionError(
                    f"subtree under {t.gen.name} produces "
                    f"{c.gen.profile.output!r}, wanted {eid!r}")
            validate_tree(c)


def graft(t: CompTree, i: int, t2: CompTree) -> CompTree:
    """Planar substitution of t2 at the i-th leaf of t (1-based).

    This is the set-level operation; linear combinations must use
    signed_graft, which also returns the orientation sign.
    """
    return signed_graft(t, i, t2)[0]


def signed_graft(t: CompTree, i: int, t2: CompTree) -> tuple[CompTree, int]:
    if not 1 <= i <= leaf_count(t):
        raise CompositionError(
            f"leaf index {i} out of range 1..{leaf_count(t)}")
    if t.gen.is_unit():
        # the unit has a single leaf; inserting there gives t2 itself
        if t2.gen.profile.output != t.children[0]:
            raise CompositionError(
                f"cannot graft {t2.gen.profile.output!r} onto unit leaf "
                f"{t.children[0]!r}")
        return t2, 1
    if t2.gen.is_unit():
        leaves = tree_leaves(t)
        if t2.gen.profile.output != leaves[i - 1]:
            raise CompositionError(
                f"unit over {t2.gen.profile.output!r} does not match leaf "
                f"{leaves[i - 1]!r}")
        return t, 1
    new, nodes_after = _graft_rec(t, i, t2)
    sign = -1 if (tree_degree(t2) % 2 and nodes_after % 2) else 1
    return new, sign


def _graft_rec(t: CompTree, i: int, t2: CompTree) -> tuple[CompTree, int]:
    """Replace the i-th leaf; also count t's node degrees after that leaf."""
    kids = list(t.children)
    seen = 0
    for pos, c in enumerate(kids):
        width = 1 if isinstance(c, str) else leaf_count(c)
        if i <= seen + width:
            if isinstance(c, str):
                if t2.gen.profile.output != c:
                    raise CompositionError(
                        f"grafted tree produces {t2.gen.profile.output!r}, "
                        f"leaf wants {c!r}")
                kids[pos] = t2
                after = 0
            else:
                kids[pos], after = _graft_rec(c, i - seen, t2)
            after += sum(tree_degree(k) for k in kids[pos + 1:]
                         if isinstance(k, CompTree))
            return CompTree(t.gen, tuple(kids)), after
        seen += width
    raise CompositionError(f"leaf index {i} out of range")


@dataclass(frozen=True)
class FreeCell:
    """A homogeneous linear combination of trees over one profile and label."""
    profile: ProfileLoop
    label: MonoidElem
    degree: int
    terms: tuple[tuple[CompTree, Scalar], ...]

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, t: CompTree) -> Scalar:
        for tt, c in self.terms:
            if tt == t:
                return c
        return 0

    def map_terms(self) -> dict[CompTree, Scalar]:
        return dict(self.terms)

    def __add__(self, other: "FreeCell") -> "FreeCell":
        if (self.profile, self.label, self.degree) != (
                other.profile, other.label, other.degree):
            raise CompositionError("cannot add inhomogeneous cells")
        acc = dict(self.terms)
        for t, c in other.terms:
            acc[t] = acc.get(t, 0) + c
        return free_cell(self.profile, self.label, self.degree, acc,
                         validate=False)

    def __neg__(self) -> "FreeCell":
        return self.scale(-1)

    def __sub__(self, other: "FreeCell") -> "FreeCell":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "FreeCell":
        return free_cell(self.profile, self.label, self.degree,
                         {t: c * x for t, x in self.terms}, validate=False)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for t, c in self.terms:
            prefix = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            bits.append(prefix + format_tree(t))
        return " + ".join(bits).replace("+ -", "- ")


def free_cell(profile: ProfileLoop, label_: MonoidElem, degree: int,
              terms: dict[CompTree, Scalar] | Iterable[tuple[CompTree, Scalar]],
              validate: bool = True) -> FreeCell:
    """Normalized constructor: drops zeros, sorts terms, checks homogeneity."""
    if not isinstance(terms, dict):
        acc: dict[CompTree, Scalar] = {}
        for t, c in terms:
            acc[t] = acc.get(t, 0) + c
        terms = acc
    cleaned = [(t, c) for t, c in terms.items() if c != 0]
    cleaned.sort(key=lambda tc: tree_key(tc[0]))
    if validate:
        for t, _ in cleaned:
            validate_tree(t)
            if tree_profile(t) != profile:
                raise CompositionError(
                    f"term {format_tree(t)} has profile "
                    f"{loop_token(tree_profile(t))}, cell declares "
                    f"{loop_token(profile)}")
            if tree_label(t) != label_:
                raise CompositionError(
                    f"term {format_tree(t)} has label {tree_label(t)}, "
                    f"cell declares {label_}")
            if tree_degree(t) != degree:
                raise CompositionError(
                    f"term {format_tree(t)} has degree {tree_degree(t)}, "
                    f"cell declares {degree}")
    return FreeCell(profile, label_, degree, tuple(cleaned))


def generator_cell(gen: GeneratorSpec) -> FreeCell:
    return free_cell(gen.profile, gen.label, gen.degree,
                     {leaf_of(gen): 1}, validate=False)


def zero_cell(profile: ProfileLoop, label_: MonoidElem, degree: int) -> FreeCell:
    return FreeCell(profile, label_, degree, ())


class FreeDgFc:
    """A free dg structure over a graph with a labeling and a splitting rule.

    Generators exist for every (profile-loop, label) pair with the label in
    the labeling's fiber, except the unit case (identity profile with zero
    label).  The differential of a generator replaces it by the sum of all
    two-node composites with the same boundary and total label, with
    coefficient -1; summands whose factors are not generators are dropped,
    since the free object has no such symbols.  Custom rules may override
    specific generators.
    """

    def __init__(self, graph: DirectedGraph, labeling: LabelingFc,
                 preset: str = "generalized",
                 custom_rules: Optional[dict[GeneratorSpec, FreeCell]] = None,
                 custom_only: bool = False, sign_fault: bool = False):
        if labeling.graph != graph:
            raise GraphError("labeling is over a different graph")
        self.graph = graph
        self.labeling = labeling
        self.monoid = labeling.monoid
        self.preset = preset
        self.sign_fault = sign_fault
        # custom_only: the rule table is the whole presentation; generators
        # without a listed rule are delta-closed
        self.custom_only = custom_only
        self.custom_rules = dict(custom_rules or {})
        for gen, cell in self.custom_rules.items():
            if cell.degree != 2 or any(len(tree_nodes(t)) != 2
                                       for t, _ in cell.terms):
                raise CompositionError(
                    f"rule for {gen.name} must be a two-node degree-2 cell")
            if (cell.profile, cell.label) != (gen.profile, gen.label):
                raise CompositionError(
                    f"rule for {gen.name} must keep its profile and label")
        self._delta_cache: dict[GeneratorSpec, FreeCell] = {}

    # ------------------------------------------------------------ generators

    def generator_name(self, loop: ProfileLoop, beta: MonoidElem) -> str:
        if self.monoid.rank == 1 and self.monoid.truncation == 0:
            return f"m[{loop_token(loop)}]"
        return f"m[{loop_token(loop)}]@{beta}"

    def is_generator(self, loop: ProfileLoop, beta: MonoidElem) -> bool:
        if beta not in fiber(self.labeling, loop):
            return False
        unit_case = (loop.inputs.edges == (loop.output,) and beta.is_zero())
        return not unit_case

    def generator(self, loop: ProfileLoop, beta: MonoidElem) -> GeneratorSpec:
        if not self.is_generator(loop, beta):
            raise CompositionError(
                f"no generator over {loop_token(loop)} with label {beta}")
        return GeneratorSpec(self.generator_name(loop, beta), loop, beta)

    def generators(self, max_arity: int,
                   max_label: Optional[int] = None) -> list[GeneratorSpec]:
        """All generators with input length <= max_arity, stable order."""
        cap = self.monoid.truncation if max_label is None else min(
            max_label, self.monoid.truncation)
        out = []
        for loop in enumerate_profile_loops(self.graph, max_arity):
            for beta in fiber(self.labeling, loop):
                if beta.total() > cap:
                    continue
                if self.is_generator(loop, beta):
                    out.append(self.generator(loop, beta))
        return out

    def unit_cell(self, eid: str) -> FreeCell:
        t = unit_tree(self.graph, eid)
        return free_cell(t.gen.profile, self.monoid.zero(), 0,
                         {t: 1}, validate=False)

    # ---------------------------------------------------------- differential

    def delta_generator(self, gen: GeneratorSpec) -> FreeCell:
        """The splitting rule: minus the sum of matching 2-node composites."""
        if gen.is_unit():
            return zero_cell(gen.profile, gen.label, 1)
        if gen in self.custom_rules:
            return self.custom_rules[gen]
        if self.custom_only:
            return zero_cell(gen.profile, gen.label, gen.degree + 1)
        cached = self._delta_cache.get(gen)
        if cached is not None:
            return cached
        loop, beta = gen.profile, gen.label
        n = loop.arity()
        walk = path_vertices(self.graph, loop.inputs)
        ins = loop.inputs.edges
        terms: dict[CompTree, Scalar] = {}
        for r in range(n + 1):
            for s in range(n - r + 1):
                for bridge in self.graph.edges:
                    if bridge.src != walk[r] or bridge.tgt != walk[r + s]:
                        continue
                    inner_path = EdgePath(ins[r:r + s], walk[r], walk[r + s])
                    inner_loop = ProfileLoop(inner_path, bridge.id)
                    outer_path = EdgePath(ins[:r] + (bridge.id,) + ins[r + s:],
                                          loop.inputs.source,
                                          loop.inputs.target)
                    outer_loop = ProfileLoop(outer_path, loop.output)
                    for b1, b2 in decompose(beta):
                        if not (self.is_generator(outer_loop, b1)
                                and self.is_generator(inner_loop, b2)):
                            continue
                        outer = self.generator(outer_loop, b1)
                        inner = self.generator(inner_loop, b2)
                        kids = (ins[:r] + (CompTree(inner, ins[r:r + s]),)
                                + ins[r + s:])
                        t = CompTree(outer, kids)
                        terms[t] = terms.get(t, 0) - 1
        cell = free_cell(loop, beta, 2, terms, validate=False)
        self._delta_cache[gen] = cell
        return cell

    def delta(self, cell: FreeCell) -> FreeCell | OutOfBound:
        """Leibniz extension of the generator rule to arbitrary cells.

        Walking the nodes in pre-order, the node at position j is replaced
        by each term of its rule with sign (-1)^(degree sum before j); the
        inserted inner node additionally passes the subtrees left of its
        slot (see the module docstring).
        """
        if cell.label.total() > self.monoid.truncation:
            return OutOfBound(
                f"label {cell.label} exceeds truncation "
                f"{self.monoid.truncation}")
        acc: dict[CompTree, Scalar] = {}
        for t, coeff in cell.terms:
            for t2, c2 in self._delta_tree(t):
                key = t2
                acc[key] = acc.get(key, 0) + coeff * c2
        return free_cell(cell.profile, cell.label, cell.degree + 1, acc,
                         validate=False)

    def _delta_tree(self, t: CompTree) -> list[tuple[CompTree, Scalar]]:
        out: list[tuple[CompTree, Scalar]] = []
        self._delta_walk(t, 0, 1, out, lambda sub: sub)
        return out

    def _delta_walk(self, t: CompTree, deg_before: int, coeff: Scalar,
                    out: list[tuple[CompTree, Scalar]], rebuild) -> None:
        """Recurse over nodes; ``rebuild`` lifts a replaced subtree back up.

        ``deg_before`` is the degree sum of the nodes preceding this
        subtree's root in the whole tree's pre-order.
        """
        rule = self.delta_generator(t.gen)
        if rule.terms:
            sign = 1 if (deg_before % 2 == 0 or self.sign_fault) else -1
            for rt, rc in rule.terms:
                # rt is outer(leaf.., inner(..), leaf..); re-attach t's
                # children to the expansion
                expanded, extra = _expand_node(rt, t.children)
                out.append((rebuild(expanded), coeff * sign * rc * extra))
        running = deg_before + t.gen.degree
        for pos, c in enumerate(t.children):
            if not isinstance(c, CompTree):
                continue
            def lift(sub, pos=pos):
                kids = t.children[:pos] + (sub,) + t.children[pos + 1:]
                return rebuild(CompTree(t.gen, kids))
            self._delta_walk(c, running, coeff, out, lift)
            running += tree_degree(c)


def _expand_node(rule_tree: CompTree,
                 children: tuple[Child, ...]) -> tuple[CompTree, int]:
    """Attach a node's children to its two-node expansion, with the sign.

    ``rule_tree`` is outer with a single inner subtree at some slot q; the
    inner node moves past the children attached left of that slot, giving
    (-1)^(their degree sum).
    """
    q = None
    for pos, c in enumerate(rule_tree.children):
        if isinstance(c, CompTree):
            q = pos
            break
    assert q is not None, "rule term must contain an inner node"
    inner = rule_tree.children[q]
    s = len(inner.children)
    outer_kids = (children[:q] + (CompTree(inner.gen, children[q:q + s]),)
                  + children[q + s:])
    passed = sum(tree_degree(c) for c in children[:q]
                 if isinstance(c, CompTree))
    sign = -1 if passed % 2 else 1
    return CompTree(rule_tree.gen, outer_kids), sign


def compose_cells(fc: FreeDgFc, c1: FreeCell, i: int,
                  c2: FreeCell) -> FreeCell | OutOfBound:
    """Bilinear signed grafting of cells; adds degrees and labels."""
    if not 1 <= i <= c1.profile.arity():
        raise CompositionError(
            f"slot {i} out of range for arity {c1.profile.arity()}")
    if c1.profile.inputs.edges[i - 1] != c2.profile.output:
        raise CompositionError(
            f"inner cell produces {c2.profile.output!r}, slot {i} wants "
            f"{c1.profile.inputs.edges[i - 1]!r}")
    beta = add(c1.label, c2.label)
    if beta.total() > fc.monoid.truncation:
        return OutOfBound(
            f"label {beta} exceeds truncation {fc.monoid.truncation}")
    profile = substituted_profile(c1.profile, i, c2.profile)
    acc: dict[CompTree, Scalar] = {}
    for t1, x1 in c1.terms:
        for t2, x2 in c2.terms:
            t, sign = signed_graft(t1, i, t2)
            acc[t] = acc.get(t, 0) + sign * x1 * x2
    return free_cell(profile, beta, c1.degree + c2.degree, acc,
                     validate=False)


# ------------------------------------------------------------- expressions

def normalize(fc: FreeDgFc, expr) -> FreeCell | OutOfBound:
    """Evaluate a nested composite expression into its tree normal form.

    Expression grammar (nested tuples):
      ("gen", GeneratorSpec)        a generator
      ("unit", edge id)             an identity cell
      ("compose", e, slot, e)       partial composition
      ("scale", scalar, e)          scalar multiple
      ("sum", e, e, ...)            sum of like-boundaried expressions
    """
    kind = expr[0]
    if kind == "gen":
        gen = expr[1]
        if not isinstance(gen, GeneratorSpec):
            raise CompositionError("gen expression needs a GeneratorSpec")
        return generator_cell(gen)
    if kind == "unit":
        return fc.unit_cell(expr[1])
    if kind == "compose":
        _, left, slot, right = expr
        lc = normalize(fc, left)
        rc = normalize(fc, right)
        if isinstance(lc, OutOfBound):
            return lc
        if isinstance(rc, OutOfBound):
            return rc
        return compose_cells(fc, lc, slot, rc)
    if kind == "scale":
        _, c, sub = expr
        cell = normalize(fc, sub)
        if isinstance(cell, OutOfBound):
            return cell
        return cell.scale(c)
    if kind == "sum":
        cells = []
        for sub in expr[1:]:
            cell = normalize(fc, sub)
            if isinstance(cell, OutOfBound):
                return cell
            cells.append(cell)
        if not cells:
            raise CompositionError("empty sum has no boundary data")
        total = cells[0]
        for cell in cells[1:]:
            total = total + cell
        return total
    raise CompositionError(f"unknown expression kind {kind!r}")


# ------------------------------------------------------------------ reports

@dataclass(frozen=True)
class Delta2Report:
    ok: bool
    generators: int
    arity_bound: int
    label_bound: int
    residues: tuple[tuple[str, str], ...]  # (generator name, residue)

    def summary(self) -> str:
        if self.ok:
            return (f"delta^2 = 0 on all {self.generators} generators "
                    f"(arity <= {self.arity_bound}, "
                    f"label <= {self.label_bound})")
        lines = [f"delta^2 NONZERO on {len(self.residues)} of "
                 f"{self.generators} generators:"]
        for name, residue in self.residues:
            lines.append(f"  {name}: {residue}")
        return "\n".join(lines)


def delta_squared_report(fc: FreeDgFc, arity_bound: int,
                         label_bound: Optional[int] = None,
                         gens: Optional[Sequence[GeneratorSpec]] = None
                         ) -> Delta2Report:
    """Expand delta twice on every generator within bounds.

    An explicit generator list (for custom presentations) overrides the
    enumerated family; bounds still filter it.
    """
    cap = fc.monoid.truncation if label_bound is None else label_bound
    if gens is None:
        gens = fc.generators(arity_bound, cap)
    else:
        gens = [g for g in gens
                if g.arity() <= arity_bound and g.label.total() <= cap]
    bad = []
    for gen in gens:
        d1 = fc.delta_generator(gen)
        d2 = fc.delta(d1)
        assert not isinstance(d2, OutOfBound)
        if not d2.is_zero():
            bad.append((gen.name, str(d2)))
    return Delta2Report(not bad, len(gens), arity_bound, cap, tuple(bad))


# ------------------------------------------------------------------ presets

def one_loop_graph() -> DirectedGraph:
    return make_graph(["v"], [("e", "v", "v")])


def build_Ainf_operad(monoid: LabelMonoid, reduced: bool = True) -> FreeDgFc:
    """Generators m_(n, beta) over a single loop, (n, beta) never the unit
    or empty-zero case; the differential sums the two-factor splittings."""
    g = one_loop_graph()
    return FreeDgFc(g, LabelingFc(g, monoid, reduced), preset="ainf")


def build_Ainf_category(object_ids: Sequence[str], monoid: LabelMonoid,
                        reduced: bool = True) -> FreeDgFc:
    g = build_pair_graph(object_ids)
    return FreeDgFc(g, LabelingFc(g, monoid, reduced), preset="category")


def build_Ainf_generalized(graph: DirectedGraph, labeling: LabelingFc,
                           preset: str = "generalized") -> FreeDgFc:
    return FreeDgFc(graph, labeling, preset=preset)


def build_Ainf_bimodule(monoid: LabelMonoid, reduced: bool = True) -> FreeDgFc:
    g = build_bimodule_graph()
    return FreeDgFc(g, LabelingFc(g, monoid, reduced), preset="bimodule")


def build_module_preset(object_ids: Sequence[str], side: str,
                        monoid: LabelMonoid, reduced: bool = True) -> FreeDgFc:
    if side == "left":
        g = build_left_module_graph(object_ids)
    elif side == "right":
        g = build_right_module_graph(object_ids)
    else:
        raise GraphError(f"side must be 'left' or 'right', not {side!r}")
    return FreeDgFc(g, LabelingFc(g, monoid, reduced), preset=f"{side}-module")


def build_rmodule_preset(object_ids: Sequence[str],
                         parts: Sequence[Sequence[str]], monoid: LabelMonoid,
                         reduced: bool = True) -> FreeDgFc:
    g = build_partition_subgraph(object_ids, parts)
    return FreeDgFc(g, LabelingFc(g, monoid, reduced), preset="rmodule")
