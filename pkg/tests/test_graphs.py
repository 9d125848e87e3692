from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from fcmc.graphs import (
    CompositionError,
    DirectedGraph,
    Edge,
    EdgePath,
    GraphError,
    ProfileLoop,
    Vertex,
    build_bimodule_graph,
    build_left_module_graph,
    build_pair_graph,
    build_partition_subgraph,
    build_right_module_graph,
    concatenate,
    empty_path,
    endpoint_violation,
    enumerate_paths,
    enumerate_profile_loops,
    is_endpoint_closed,
    is_profile_loop,
    is_subgraph,
    make_graph,
    make_path,
    path_vertices,
    profile_loop,
    subgraph,
    validate_graph,
)

from oracles import (
    ref_endpoint_closed,
    ref_paths,
    ref_profile_loops,
    ref_subgraphs,
)


def single_loop():
    return make_graph(["v"], [("e", "v", "v")])


def as_raw(g):
    """(vertices, edge triples) form consumed by the oracle functions."""
    return list(g.vertex_ids()), [(e.id, e.src, e.tgt) for e in g.edges]


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 4))
    vs = [f"v{i}" for i in range(n)]
    m = draw(st.integers(0, 6))
    edges = []
    for k in range(m):
        s = draw(st.integers(0, n - 1))
        t = draw(st.integers(0, n - 1))
        edges.append((f"x{k}", vs[s], vs[t]))
    return make_graph(vs, edges)


# ---------------------------------------------------------------- validation

def test_validate_smallest_graph():
    assert validate_graph(single_loop()).ok


def test_validate_reports_dangling_endpoint():
    g = DirectedGraph([Vertex("v")], [Edge("e", "v", "w")])
    report = validate_graph(g)
    assert not report.ok
    assert any("dangling" in p for p in report.problems)
    with pytest.raises(GraphError, match="dangling"):
        make_graph(["v"], [("e", "v", "w")])


def test_validate_reports_duplicates():
    g = DirectedGraph([Vertex("v"), Vertex("v")], [])
    assert not validate_graph(g).ok
    g = DirectedGraph([Vertex("v")], [Edge("e", "v", "v"), Edge("e", "v", "v")])
    assert any("duplicate edge" in p for p in validate_graph(g).problems)


def test_validate_bimodule_graph():
    assert validate_graph(build_bimodule_graph()).ok


# --------------------------------------------------------------------- paths

def test_make_path_rejects_noncomposable():
    g = build_bimodule_graph()
    with pytest.raises(CompositionError):
        make_path(g, ["e01", "e0"])
    with pytest.raises(GraphError):
        make_path(g, [])  # no basepoint


def test_concatenate_edges():
    g = build_bimodule_graph()
    p = concatenate([make_path(g, ["e0"]), make_path(g, ["e01"])])
    assert p.edges == ("e0", "e01")
    assert (p.source, p.target) == ("v0", "v1")


def test_concatenate_empty_is_identity():
    g = single_loop()
    e = make_path(g, ["e"])
    assert concatenate([empty_path(g, "v"), e]) == e
    assert concatenate([e, empty_path(g, "v")]) == e


def test_concatenate_three_on_bimodule_graph():
    g = build_bimodule_graph()
    p = concatenate([make_path(g, ["e0"]), make_path(g, ["e01"]),
                     make_path(g, ["e1"])])
    assert p.edges == ("e0", "e01", "e1")


def test_concatenate_mismatch():
    g = build_bimodule_graph()
    with pytest.raises(CompositionError):
        concatenate([make_path(g, ["e01"]), make_path(g, ["e01"])])
    with pytest.raises(CompositionError):
        concatenate([])


def test_concatenate_associative_exhaustive():
    # every composable triple on two fixed graphs, path length <= 3
    for g in (build_bimodule_graph(),
              make_graph(["v"], [("a", "v", "v"), ("b", "v", "v")])):
        paths = enumerate_paths(g, 3)
        for p, q, r in itertools.product(paths, repeat=3):
            if p.target != q.source or q.target != r.source:
                continue
            left = concatenate([concatenate([p, q]), r])
            right = concatenate([p, concatenate([q, r])])
            assert left == right == concatenate([p, q, r])


def test_path_vertices():
    g = build_bimodule_graph()
    p = make_path(g, ["e0", "e01", "e1"])
    assert path_vertices(g, p) == ("v0", "v0", "v1", "v1")
    assert path_vertices(g, empty_path(g, "v1")) == ("v1",)


def test_enumerate_paths_single_loop():
    got = {(p.source, p.edges) for p in enumerate_paths(single_loop(), 2)}
    assert got == {("v", ()), ("v", ("e",)), ("v", ("e", "e"))}


def test_enumerate_paths_bimodule_len1():
    got = {(p.source, p.edges) for p in enumerate_paths(build_bimodule_graph(), 1)}
    assert got == {("v0", ()), ("v1", ()), ("v0", ("e0",)), ("v1", ("e1",)),
                   ("v0", ("e01",))}


def test_enumerate_paths_no_edges():
    g = make_graph(["a", "b"], [])
    assert {(p.source, p.edges) for p in enumerate_paths(g, 5)} == {
        ("a", ()), ("b", ())}


@given(small_graphs(), st.integers(0, 4))
def test_enumerate_paths_matches_reference(g, max_len):
    got = {(p.source, p.edges) for p in enumerate_paths(g, max_len)}
    assert got == ref_paths(*as_raw(g), max_len)


@given(small_graphs(), st.integers(0, 3), st.integers(0, 3))
def test_enumerate_paths_prefix_property(g, m, extra):
    n = m + extra
    shorter = {p for p in enumerate_paths(g, n) if len(p) <= m}
    assert shorter == set(enumerate_paths(g, m))


def test_enumerate_paths_source_target_filters():
    g = build_bimodule_graph()
    assert all(p.source == "v0" and p.target == "v1"
               for p in enumerate_paths(g, 3, source="v0", target="v1"))
    assert len(enumerate_paths(g, 3, source="v1", target="v0")) == 0


# ------------------------------------------------------------- profile-loops

def test_is_profile_loop_bimodule():
    g = build_bimodule_graph()
    assert is_profile_loop(g, make_path(g, ["e0", "e01", "e1"]), "e01")
    assert not is_profile_loop(g, make_path(g, ["e1"]), "e0")
    assert is_profile_loop(g, empty_path(g, "v0"), "e0")


def test_is_profile_loop_foreign_ids():
    g = build_bimodule_graph()
    with pytest.raises(GraphError):
        is_profile_loop(g, make_path(g, ["e0"]), "nope")
    with pytest.raises(GraphError):
        is_profile_loop(g, EdgePath(("zz",), "v0", "v0"), "e0")


def test_profile_loop_constructor():
    g = build_bimodule_graph()
    loop = profile_loop(g, ["e0", "e01"], "e01")
    assert loop.arity() == 2
    # empty inputs default their basepoint to the output's source
    assert profile_loop(g, [], "e1").inputs.source == "v1"
    with pytest.raises(CompositionError):
        profile_loop(g, ["e1"], "e01")


def test_enumerate_profile_loops_single_loop():
    got = {(l.inputs.source, l.inputs.edges, l.output)
           for l in enumerate_profile_loops(single_loop(), 1)}
    assert got == {("v", (), "e"), ("v", ("e",), "e")}


def test_enumerate_profile_loops_bimodule():
    loops = {(l.inputs.source, l.inputs.edges, l.output)
             for l in enumerate_profile_loops(build_bimodule_graph(), 3)}
    assert len(loops) == 14  # frozen from the reference enumeration
    assert ("v0", ("e0", "e01", "e1"), "e01") in loops
    assert ("v0", ("e0", "e01"), "e01") in loops
    # e1 starts at v1, so no loop with output e1 can have inputs from v0
    assert not any(out == "e1" and src == "v0" for src, _, out in loops)
    assert not any(out == "e0" and "e01" in mid for _, mid, out in loops)


def test_enumerate_profile_loops_no_edges():
    assert enumerate_profile_loops(make_graph(["a"], []), 3) == []


@given(small_graphs(), st.integers(0, 3))
def test_profile_loops_match_reference(g, max_len):
    got = {(l.inputs.source, l.inputs.edges, l.output)
           for l in enumerate_profile_loops(g, max_len)}
    assert got == ref_profile_loops(*as_raw(g), max_len)


@given(small_graphs())
def test_profile_loops_lie_in_enumerations(g):
    paths = set(enumerate_paths(g, 3))
    for loop in enumerate_profile_loops(g, 3):
        assert loop.inputs in paths
        assert g.has_edge(loop.output)
        assert is_profile_loop(g, loop.inputs, loop.output)


# ------------------------------------------------------------------ builders

def test_pair_graph_sizes():
    assert len(build_pair_graph(["v"]).edges) == 1
    assert len(build_pair_graph(["a", "b"]).edges) == 4
    assert len(build_pair_graph(["a", "b", "c"]).edges) == 9


def test_module_graphs():
    left = build_left_module_graph(["v"])
    assert len(left.vertices) == 2 and len(left.edges) == 2
    assert len(build_left_module_graph(["a", "b"]).edges) == 6
    right = build_right_module_graph(["a", "b"])
    assert right.out_edges("*") == ()
    assert len([e for e in right.edges if e.tgt == "*"]) == 2
    with pytest.raises(GraphError):
        build_left_module_graph(["*", "v"])


def test_bimodule_graph_shape():
    g = build_bimodule_graph()
    assert len(g.edges) == 3
    assert g.edge("e01").src == "v0" and g.edge("e01").tgt == "v1"
    assert not any(e.src == "v1" and e.tgt == "v0" for e in g.edges)


def test_partition_subgraph_two_singletons():
    sub = build_partition_subgraph(["a", "b"], [["a"], ["b"]])
    assert set(sub.edge_ids()) == {"a->a", "a->b", "b->b"}


def test_partition_subgraph_single_part_is_everything():
    v = ["a", "b", "c"]
    assert set(build_partition_subgraph(v, [v]).edge_ids()) == set(
        build_pair_graph(v).edge_ids())


def test_partition_subgraph_bad_partitions():
    with pytest.raises(GraphError):
        build_partition_subgraph(["a", "b"], [["a"]])
    with pytest.raises(GraphError):
        build_partition_subgraph(["a", "b"], [["a", "b"], ["b"]])
    with pytest.raises(GraphError):
        build_partition_subgraph(["a"], [["a", "z"]])


def ordered_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for tail in ordered_partitions(rest):
        for i in range(len(tail)):
            yield tail[:i] + [[first] + tail[i]] + tail[i + 1:]
        yield [[first]] + tail


def test_partition_subgraphs_are_endpoint_closed():
    # exhaustive over ordered partitions of up to three objects
    for objs in (["a"], ["a", "b"], ["a", "b", "c"]):
        g = build_pair_graph(objs)
        for parts in ordered_partitions(objs):
            sub = build_partition_subgraph(objs, parts)
            assert is_endpoint_closed(g, sub)
            assert ref_endpoint_closed(*as_raw(g), sub.vertex_ids(),
                                       sub.edge_ids(), 4)


# ------------------------------------------------------- endpoint-closedness

def test_subgraph_helpers():
    g = build_pair_graph(["a", "b"])
    sub = subgraph(g, ["a", "b"], ["a->a", "a->b", "b->b"])
    assert is_subgraph(g, sub)
    assert not is_subgraph(sub, g)
    with pytest.raises(GraphError):
        subgraph(g, ["a"], ["a->b"])
    with pytest.raises(GraphError):
        is_endpoint_closed(sub, g)


def test_endpoint_closed_spec_cases():
    g = build_pair_graph(["a", "b"])
    assert is_endpoint_closed(g, subgraph(g, ["a", "b"],
                                          ["a->a", "a->b", "b->b"]))
    assert not is_endpoint_closed(g, subgraph(g, ["a", "b"], ["a->b"]))
    assert is_endpoint_closed(g, g)


def test_endpoint_violation_witness():
    g = build_pair_graph(["a", "b"])
    sub = subgraph(g, ["a", "b"], ["a->b"])
    witness = endpoint_violation(g, sub)
    assert witness is not None
    # the empty path at a already forces the loop a->a
    assert witness.inputs.edges == ()
    assert witness.output in {"a->a", "b->b"}
    assert is_profile_loop(g, witness.inputs, witness.output)
    assert endpoint_violation(g, g) is None


def test_endpoint_closed_agrees_with_bounded_bruteforce():
    for g in (build_pair_graph(["a", "b"]),
              build_bimodule_graph(),
              build_pair_graph(["a", "b", "c"]),
              make_graph(["u", "w"], [("p", "u", "w"), ("q", "u", "w"),
                                      ("l", "u", "u")])):
        raw_v, raw_e = as_raw(g)
        for vs, es in ref_subgraphs(raw_v, raw_e):
            sub = subgraph(g, vs, es)
            want = ref_endpoint_closed(raw_v, raw_e, vs, es, 4)
            assert is_endpoint_closed(g, sub) == want, (vs, es)


def test_endpoint_witness_always_valid():
    g = build_pair_graph(["a", "b", "c"])
    raw_v, raw_e = as_raw(g)
    for vs, es in ref_subgraphs(raw_v, raw_e):
        sub = subgraph(g, vs, es)
        witness = endpoint_violation(g, sub)
        if witness is None:
            continue
        assert is_profile_loop(g, witness.inputs, witness.output)
        assert set(witness.inputs.edges) <= set(es)
        assert witness.output not in set(es)


def test_graph_equality_ignores_declaration_order():
    g1 = make_graph(["a", "b"], [("x", "a", "b"), ("y", "b", "a")])
    g2 = make_graph(["b", "a"], [("y", "b", "a"), ("x", "a", "b")])
    assert g1 == g2
    assert hash(g1) == hash(g2)
