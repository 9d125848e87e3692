"""Directed graphs, composable edge paths, and profile-loops.

A directed graph is the combinatorial substrate for everything downstream:
its edges are what 2-cells consume and produce.  A path is a finite
composable string of edges; the empty path carries an explicit basepoint
vertex, so its endpoints stay defined.  A profile-loop pairs an input path
with one output edge sharing the path's endpoints — the boundary frame of
a 2-cell.

Also here: the graph constructions every preset is built on (pair graphs,
one-sided module graphs, the two-vertex bimodule graph, partition
subgraphs) and the reachability decision for endpoint-closedness.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Malformed or inconsistent graph data."""


class CompositionError(ValueError):
    """Endpoint mismatch when composing paths or cells."""


@dataclass(frozen=True)
class Vertex:
    id: str


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    tgt: str


class DirectedGraph:
    """A finite directed graph with opaque string ids.

    Construction never raises; structural problems are surfaced by
    :func:`validate_graph` so malformed inputs can be *reported* rather
    than crashed on.  All query methods assume a valid graph.
    """

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge]):
        self.vertices: tuple[Vertex, ...] = tuple(vertices)
        self.edges: tuple[Edge, ...] = tuple(edges)
        self._vmap = {v.id: v for v in self.vertices}
        self._emap = {e.id: e for e in self.edges}
        self._out: dict[str, list[Edge]] = {}
        for e in self.edges:
            self._out.setdefault(e.src, []).append(e)

    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def has_vertex(self, vid: str) -> bool:
        return vid in self._vmap

    def has_edge(self, eid: str) -> bool:
        return eid in self._emap

    def edge(self, eid: str) -> Edge:
        try:
            return self._emap[eid]
        except KeyError:
            raise GraphError(f"unknown edge id {eid!r}") from None

    def out_edges(self, vid: str) -> tuple[Edge, ...]:
        return tuple(self._out.get(vid, ()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (frozenset(v.id for v in self.vertices)
                == frozenset(v.id for v in other.vertices)
                and frozenset(self.edges) == frozenset(other.edges))

    def __hash__(self) -> int:
        return hash((frozenset(v.id for v in self.vertices),
                     frozenset(self.edges)))

    def __repr__(self) -> str:
        return (f"DirectedGraph({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges)")


def make_graph(vertex_ids: Iterable[str],
               edge_triples: Iterable[tuple[str, str, str]]) -> DirectedGraph:
    """Build a graph from id strings and (id, src, tgt) triples, validated."""
    g = DirectedGraph((Vertex(v) for v in vertex_ids),
                      (Edge(i, s, t) for i, s, t in edge_triples))
    report = validate_graph(g)
    if not report.ok:
        raise GraphError("; ".join(report.problems))
    return g


@dataclass(frozen=True)
class GraphReport:
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def validate_graph(g: DirectedGraph) -> GraphReport:
    """Report duplicate ids and dangling endpoints; valid graphs pass."""
    problems = []
    seen_v: set[str] = set()
    for v in g.vertices:
        if v.id in seen_v:
            problems.append(f"duplicate vertex id {v.id!r}")
        seen_v.add(v.id)
    seen_e: set[str] = set()
    for e in g.edges:
        if e.id in seen_e:
            problems.append(f"duplicate edge id {e.id!r}")
        seen_e.add(e.id)
        if e.src not in seen_v:
            problems.append(f"dangling endpoint: edge {e.id!r} src {e.src!r}")
        if e.tgt not in seen_v:
            problems.append(f"dangling endpoint: edge {e.id!r} tgt {e.tgt!r}")
    return GraphReport(tuple(problems))


@dataclass(frozen=True)
class EdgePath:
    """A composable string of edge ids with explicit endpoints.

    For the empty path, ``source == target`` is the basepoint.
    """
    edges: tuple[str, ...]
    source: str
    target: str

    def __len__(self) -> int:
        return len(self.edges)

    def is_empty(self) -> bool:
        return not self.edges


def empty_path(g: DirectedGraph, vid: str) -> EdgePath:
    if not g.has_vertex(vid):
        raise GraphError(f"unknown vertex id {vid!r}")
    return EdgePath((), vid, vid)


def make_path(g: DirectedGraph, edge_ids: Sequence[str],
              basepoint: Optional[str] = None) -> EdgePath:
    """Validated path constructor; a basepoint is required iff empty."""
    edge_ids = tuple(edge_ids)
    if not edge_ids:
        if basepoint is None:
            raise GraphError("empty path needs a basepoint vertex")
        return empty_path(g, basepoint)
    first = g.edge(edge_ids[0])
    at = first.tgt
    for eid in edge_ids[1:]:
        e = g.edge(eid)
        if e.src != at:
            raise CompositionError(
                f"edges {eid!r} cannot follow: starts at {e.src!r}, "
                f"previous ends at {at!r}")
        at = e.tgt
    return EdgePath(edge_ids, first.src, at)


def path_vertices(g: DirectedGraph, p: EdgePath) -> tuple[str, ...]:
    """The n+1 vertices visited by a length-n path, source first."""
    out = [p.source]
    for eid in p.edges:
        out.append(g.edge(eid).tgt)
    return tuple(out)


def concatenate(paths: Sequence[EdgePath]) -> EdgePath:
    """Concatenate composable paths; empty paths act as identities."""
    if not paths:
        raise CompositionError("nothing to concatenate")
    for a, b in zip(paths, paths[1:]):
        if a.target != b.source:
            raise CompositionError(
                f"path ending at {a.target!r} cannot meet one starting "
                f"at {b.source!r}")
    edges: tuple[str, ...] = ()
    for p in paths:
        edges = edges + p.edges
    return EdgePath(edges, paths[0].source, paths[-1].target)


def enumerate_paths(g: DirectedGraph, max_len: int,
                    source: Optional[str] = None,
                    target: Optional[str] = None) -> list[EdgePath]:
    """All composable paths of length <= max_len, in a stable order.

    Empty paths (one per vertex) are included.  Optional endpoint filters
    restrict the result.  Order: by length, then by generation; generation
    follows vertex and edge declaration order, so repeated runs agree.
    """
    if max_len < 0:
        raise GraphError("max_len must be >= 0")
    out: list[EdgePath] = []
    frontier = [empty_path(g, v.id) for v in g.vertices]
    out.extend(frontier)
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for e in g.out_edges(p.target):
                nxt.append(EdgePath(p.edges + (e.id,), p.source, e.tgt))
        out.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    if source is not None:
        out = [p for p in out if p.source == source]
    if target is not None:
        out = [p for p in out if p.target == target]
    return out


@dataclass(frozen=True)
class ProfileLoop:
    """An input path together with an output edge sharing its endpoints."""
    inputs: EdgePath
    output: str

    def arity(self) -> int:
        return len(self.inputs.edges)


def is_profile_loop(g: DirectedGraph, p: EdgePath, eid: str) -> bool:
    """True iff the edge's endpoints match the path's endpoints."""
    for pe in p.edges:
        g.edge(pe)
    e = g.edge(eid)
    return e.src == p.source and e.tgt == p.target


def profile_loop(g: DirectedGraph, edge_ids: Sequence[str], output: str,
                 basepoint: Optional[str] = None) -> ProfileLoop:
    """Validated profile-loop constructor."""
    if basepoint is None and not edge_ids:
        basepoint = g.edge(output).src
    p = make_path(g, edge_ids, basepoint)
    if not is_profile_loop(g, p, output):
        raise CompositionError(
            f"edge {output!r} does not close the path {p.edges!r} "
            f"from {p.source!r} to {p.target!r}")
    return ProfileLoop(p, output)


def enumerate_profile_loops(g: DirectedGraph, max_len: int) -> list[ProfileLoop]:
    """All profile-loops with input length <= max_len, in a stable order."""
    by_ends: dict[tuple[str, str], list[str]] = {}
    for e in g.edges:
        by_ends.setdefault((e.src, e.tgt), []).append(e.id)
    out = []
    for p in enumerate_paths(g, max_len):
        for eid in by_ends.get((p.source, p.target), ()):
            out.append(ProfileLoop(p, eid))
    return out


def is_subgraph(g: DirectedGraph, sub: DirectedGraph) -> bool:
    """True iff sub's vertices and edges all occur in g (same endpoints)."""
    for v in sub.vertices:
        if not g.has_vertex(v.id):
            return False
    for e in sub.edges:
        if not g.has_edge(e.id) or g.edge(e.id) != e:
            return False
    return True


def subgraph(g: DirectedGraph, vertex_ids: Iterable[str],
             edge_ids: Iterable[str]) -> DirectedGraph:
    """The subgraph of g on the given ids; endpoints must be included."""
    vset = set(vertex_ids)
    for vid in vset:
        if not g.has_vertex(vid):
            raise GraphError(f"unknown vertex id {vid!r}")
    edges = []
    for eid in edge_ids:
        e = g.edge(eid)
        if e.src not in vset or e.tgt not in vset:
            raise GraphError(
                f"edge {eid!r} has an endpoint outside the vertex subset")
        edges.append(e)
    vs = [v for v in g.vertices if v.id in vset]
    return DirectedGraph(vs, edges)


def _reachable_in(sub: DirectedGraph, start: str) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        at = queue.popleft()
        for e in sub.out_edges(at):
            if e.tgt not in seen:
                seen.add(e.tgt)
                queue.append(e.tgt)
    return seen


def is_endpoint_closed(g: DirectedGraph, sub: DirectedGraph) -> bool:
    """Decide endpoint-closedness of a subgraph, with no length bound.

    The subgraph is endpoint-closed when every profile-loop of g whose
    input path lies in the subgraph (empty paths at subgraph vertices
    included) has its output edge in the subgraph.  Input paths only
    matter through the reachability they witness, so the decision reduces
    to: for every ordered vertex pair (u, w) of the subgraph with w
    reachable from u inside the subgraph (u itself included), every g-edge
    u -> w already belongs to the subgraph.
    """
    return endpoint_violation(g, sub) is None


def endpoint_violation(g: DirectedGraph,
                       sub: DirectedGraph) -> Optional[ProfileLoop]:
    """A profile-loop witnessing failure of endpoint-closedness, or None.

    The witness has its input path in the subgraph (a shortest reachability
    path) and its output edge outside it.
    """
    if not is_subgraph(g, sub):
        raise GraphError("not a subgraph of the ambient graph")
    sub_edge_ids = {e.id for e in sub.edges}
    by_ends: dict[tuple[str, str], list[str]] = {}
    for e in g.edges:
        if e.id not in sub_edge_ids:
            by_ends.setdefault((e.src, e.tgt), []).append(e.id)
    for v in sub.vertices:
        # breadth-first search inside the subgraph, keeping parent edges
        parent: dict[str, tuple[str, str]] = {}
        seen = {v.id}
        queue = deque([v.id])
        while queue:
            at = queue.popleft()
            missing = by_ends.get((v.id, at), ())
            if missing:
                edges = []
                walk = at
                while walk != v.id:
                    peid, pprev = parent[walk]
                    edges.append(peid)
                    walk = pprev
                edges.reverse()
                path = EdgePath(tuple(edges), v.id, at)
                return ProfileLoop(path, missing[0])
            for e in sub.out_edges(at):
                if e.tgt not in seen:
                    seen.add(e.tgt)
                    parent[e.tgt] = (e.id, at)
                    queue.append(e.tgt)
    return None


def pair_edge_id(u: str, w: str) -> str:
    return f"{u}->{w}"


def build_pair_graph(object_ids: Sequence[str]) -> DirectedGraph:
    """The graph with one edge u->w for every ordered pair of objects."""
    object_ids = tuple(object_ids)
    if not object_ids:
        raise GraphError("need at least one object")
    edges = [(pair_edge_id(u, w), u, w)
             for u in object_ids for w in object_ids]
    return make_graph(object_ids, edges)


def build_left_module_graph(object_ids: Sequence[str],
                            star: str = "*") -> DirectedGraph:
    """Pair graph plus a fresh vertex with one edge star->v per object.

    The fresh vertex has no loop and no incoming edges, so paths out of it
    start with one of the added edges and never return.
    """
    object_ids = tuple(object_ids)
    if star in object_ids:
        raise GraphError(f"fresh vertex id {star!r} collides with an object")
    base = build_pair_graph(object_ids)
    edges = [(e.id, e.src, e.tgt) for e in base.edges]
    edges += [(pair_edge_id(star, v), star, v) for v in object_ids]
    return make_graph(object_ids + (star,), edges)


def build_right_module_graph(object_ids: Sequence[str],
                             star: str = "*") -> DirectedGraph:
    """Pair graph plus a fresh vertex with one edge v->star per object."""
    object_ids = tuple(object_ids)
    if star in object_ids:
        raise GraphError(f"fresh vertex id {star!r} collides with an object")
    base = build_pair_graph(object_ids)
    edges = [(e.id, e.src, e.tgt) for e in base.edges]
    edges += [(pair_edge_id(v, star), v, star) for v in object_ids]
    return make_graph(object_ids + (star,), edges)


def build_bimodule_graph() -> DirectedGraph:
    """Two vertices, a loop at each, and one connecting edge v0->v1."""
    return make_graph(
        ["v0", "v1"],
        [("e0", "v0", "v0"), ("e1", "v1", "v1"), ("e01", "v0", "v1")])


def build_partition_subgraph(object_ids: Sequence[str],
                             parts: Sequence[Sequence[str]]) -> DirectedGraph:
    """The subgraph of the pair graph keeping edges that respect the order.

    For an ordered partition (P_1, ..., P_r) the kept edges are u->w with
    u in P_j, w in P_k, j <= k.  The result is always endpoint-closed in
    the pair graph: a subgraph path can only move weakly forward through
    the parts, and every weakly-forward edge is kept.
    """
    object_ids = tuple(object_ids)
    part_of: dict[str, int] = {}
    for k, part in enumerate(parts):
        for v in part:
            if v in part_of:
                raise GraphError(f"vertex {v!r} occurs in two parts")
            if v not in object_ids:
                raise GraphError(f"vertex {v!r} is not an object")
            part_of[v] = k
    if set(part_of) != set(object_ids):
        missing = sorted(set(object_ids) - set(part_of))
        raise GraphError(f"partition misses vertices {missing!r}")
    edges = [(pair_edge_id(u, w), u, w)
             for u in object_ids for w in object_ids
             if part_of[u] <= part_of[w]]
    return make_graph(object_ids, edges)
