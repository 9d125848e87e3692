"""Exact cochain complexes and the dg endomorphism structure over a graph.

Everything is computed over exact rationals: the content of every check
here is a sign cancellation, and a tolerance would only hide bugs.

An ``EndX`` assigns a cochain complex to each edge of a graph; a
``MultiMap`` over a profile-loop (e_1..e_n; e') is a degree-homogeneous
multilinear map X(e_1) x .. x X(e_n) -> X(e') stored sparsely by input
basis tuples.  Arity-0 maps are identified with elements of the output
complex (their single table key is the empty tuple).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence, Union

from .graphs import CompositionError, DirectedGraph, GraphError

Scalar = Union[int, Fraction]
Vector = dict[str, Scalar]


class ChainError(Exception):
    pass


def _clean(vec: Vector) -> Vector:
    return {k: v for k, v in vec.items() if v != 0}


def _add_into(acc: Vector, vec: Vector, c: Scalar = 1) -> None:
    for k, v in vec.items():
        acc[k] = acc.get(k, 0) + c * v


class GradedBasis:
    """An ordered basis with integer degrees."""

    def __init__(self, elements: Iterable[tuple[str, int]]):
        self.elements = tuple((str(x), int(d)) for x, d in elements)
        seen = set()
        for x, _ in self.elements:
            if x in seen:
                raise ChainError(f"duplicate basis id {x!r}")
            seen.add(x)
        self._deg = dict(self.elements)

    def ids(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.elements)

    def degree(self, x: str) -> int:
        if x not in self._deg:
            raise ChainError(f"unknown basis id {x!r}")
        return self._deg[x]

    def dim(self) -> int:
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, GradedBasis) and \
            self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"GradedBasis({list(self.elements)!r})"


class CochainComplex:
    """A finite graded space with a degree +1 differential, d^2 = 0.

    Use make_complex to construct with validation.
    """

    def __init__(self, basis: GradedBasis, d: dict[str, Vector]):
        self.basis = basis
        self.d = {x: dict(_clean(v)) for x, v in d.items() if _clean(v)}

    def d_of(self, x: str) -> Vector:
        return dict(self.d.get(x, {}))

    def apply_d(self, vec: Vector) -> Vector:
        acc: Vector = {}
        for x, c in vec.items():
            _add_into(acc, self.d.get(x, {}), c)
        return _clean(acc)

    def degree(self, x: str) -> int:
        return self.basis.degree(x)

    def __eq__(self, other):
        return isinstance(other, CochainComplex) and \
            self.basis == other.basis and self.d == other.d

    def __hash__(self):
        return hash((self.basis,
                     tuple(sorted((x, tuple(sorted(v.items())))
                                  for x, v in self.d.items()))))

    def __repr__(self):
        return f"CochainComplex(dim={self.basis.dim()})"


def make_complex(elements: Iterable[tuple[str, int]],
                 d: dict[str, Vector] | None = None) -> CochainComplex:
    basis = GradedBasis(elements)
    d = d or {}
    for x, vec in d.items():
        dx = basis.degree(x)
        for y, c in vec.items():
            if c != 0 and basis.degree(y) != dx + 1:
                raise ChainError(
                    f"d({x}) hits {y} of degree {basis.degree(y)}, "
                    f"expected {dx + 1}")
    cx = CochainComplex(basis, d)
    for x in basis.ids():
        dd = cx.apply_d(cx.d_of(x))
        if dd:
            raise ChainError(f"d(d({x})) = {dd} != 0")
    return cx


def zero_complex_like(elements: Iterable[tuple[str, int]]) -> CochainComplex:
    return make_complex(elements, {})


def tensor_differential(complexes: Sequence[CochainComplex],
                        elem: dict[tuple[str, ...], Scalar]
                        ) -> dict[tuple[str, ...], Scalar]:
    """Differential of the tensor product: d passes each factor with the
    sign of the degrees it crossed."""
    total_deg: Optional[int] = None
    out: dict[tuple[str, ...], Scalar] = {}
    for key, coeff in elem.items():
        if len(key) != len(complexes):
            raise ChainError(
                f"tensor {key} has {len(key)} factors, expected "
                f"{len(complexes)}")
        deg = sum(cx.degree(x) for cx, x in zip(complexes, key))
        if total_deg is None:
            total_deg = deg
        elif deg != total_deg:
            raise ChainError("tensor element is not degree-homogeneous")
        sign = 1
        for k, (cx, x) in enumerate(zip(complexes, key)):
            for y, c in cx.d_of(x).items():
                new = key[:k] + (y,) + key[k + 1:]
                out[new] = out.get(new, 0) + sign * coeff * c
            if cx.degree(x) % 2:
                sign = -sign
    return {k: v for k, v in out.items() if v != 0}


class MultiMap:
    """A degree-homogeneous multilinear map between edge complexes.

    The table is keyed by input basis tuples; values are sparse vectors
    over the output basis.  Construct through multimap() for validation.
    """

    def __init__(self, inputs: tuple[str, ...], output: str, degree: int,
                 table: dict[tuple[str, ...], Vector]):
        self.inputs = tuple(inputs)
        self.output = output
        self.degree = degree
        self.table = {k: dict(_clean(v)) for k, v in table.items()
                      if _clean(v)}

    def arity(self) -> int:
        return len(self.inputs)

    def apply(self, args: tuple[str, ...]) -> Vector:
        return dict(self.table.get(tuple(args), {}))

    def is_zero(self) -> bool:
        return not self.table

    def add(self, other: "MultiMap") -> "MultiMap":
        self._check_shape(other)
        acc = {k: dict(v) for k, v in self.table.items()}
        for k, v in other.table.items():
            _add_into(acc.setdefault(k, {}), v)
        return MultiMap(self.inputs, self.output, self.degree, acc)

    def scale(self, c: Scalar) -> "MultiMap":
        return MultiMap(self.inputs, self.output, self.degree,
                        {k: {y: c * x for y, x in v.items()}
                         for k, v in self.table.items()})

    def sub(self, other: "MultiMap") -> "MultiMap":
        return self.add(other.scale(-1))

    def _check_shape(self, other: "MultiMap") -> None:
        if (self.inputs, self.output, self.degree) != \
                (other.inputs, other.output, other.degree):
            raise ChainError(
                f"shape mismatch: ({self.inputs};{self.output})@{self.degree}"
                f" vs ({other.inputs};{other.output})@{other.degree}")

    def support(self) -> list[tuple[str, ...]]:
        return sorted(self.table)

    def __eq__(self, other):
        return isinstance(other, MultiMap) and \
            (self.inputs, self.output, self.degree) == \
            (other.inputs, other.output, other.degree) and \
            self.table == other.table

    def __hash__(self):
        return hash((self.inputs, self.output, self.degree,
                     tuple(sorted((k, tuple(sorted(v.items())))
                                  for k, v in self.table.items()))))

    def __repr__(self):
        return (f"MultiMap(({','.join(self.inputs)};{self.output}) "
                f"deg {self.degree}, {len(self.table)} entries)")


class EndX:
    """A complex for every edge of a graph; the home of all MultiMaps."""

    def __init__(self, graph: DirectedGraph,
                 complexes: dict[str, CochainComplex]):
        self.graph = graph
        self.complexes = dict(complexes)
        for e in graph.edges:
            if e.id not in self.complexes:
                raise GraphError(f"edge {e.id!r} has no complex")
        for eid in self.complexes:
            if eid not in graph.edge_ids():
                raise GraphError(f"complex over unknown edge {eid!r}")

    def complex(self, eid: str) -> CochainComplex:
        if eid not in self.complexes:
            raise GraphError(f"no complex over edge {eid!r}")
        return self.complexes[eid]

    def input_complexes(self, xi: MultiMap) -> list[CochainComplex]:
        return [self.complex(e) for e in xi.inputs]


def multimap(X: EndX, inputs: Sequence[str], output: str, degree: int,
             entries: dict[tuple[str, ...], Vector]) -> MultiMap:
    """Validated constructor: every entry must be degree-consistent."""
    inputs = tuple(inputs)
    cxs = [X.complex(e) for e in inputs]
    out_cx = X.complex(output)
    for key, vec in entries.items():
        key = tuple(key)
        if len(key) != len(inputs):
            raise ChainError(f"entry {key} has wrong arity")
        in_deg = sum(cx.degree(x) for cx, x in zip(cxs, key))
        for y, c in vec.items():
            if c != 0 and out_cx.degree(y) != in_deg + degree:
                raise ChainError(
                    f"entry {key} -> {y}: degree "
                    f"{out_cx.degree(y)} != {in_deg} + {degree}")
    return MultiMap(inputs, output, degree, {tuple(k): dict(v)
                                             for k, v in entries.items()})


def zero_map(X: EndX, inputs: Sequence[str], output: str,
             degree: int) -> MultiMap:
    return MultiMap(tuple(inputs), output, degree, {})


def identity_map(X: EndX, eid: str) -> MultiMap:
    cx = X.complex(eid)
    return MultiMap((eid,), eid, 0,
                    {(x,): {x: 1} for x in cx.basis.ids()})


def element_map(X: EndX, eid: str, vec: Vector, degree: int) -> MultiMap:
    """An arity-0 map: an element of X(eid), placed in the given degree."""
    return multimap(X, (), eid, degree, {(): dict(vec)})


def _basis_tuples(cxs: Sequence[CochainComplex]):
    return product(*(cx.basis.ids() for cx in cxs))


def hat_d(X: EndX, xi: MultiMap) -> MultiMap:
    """The differential on maps: post-compose with d, subtract the
    pre-compositions, each with the sign of everything to its left
    (the map itself and the earlier arguments)."""
    cxs = X.input_complexes(xi)
    out_cx = X.complex(xi.output)
    table: dict[tuple[str, ...], Vector] = {}
    for args in _basis_tuples(cxs):
        acc: Vector = {}
        _add_into(acc, out_cx.apply_d(xi.apply(args)))
        sign = -1 if xi.degree % 2 else 1
        for k, x in enumerate(args):
            for y, c in cxs[k].d_of(x).items():
                _add_into(acc, xi.apply(args[:k] + (y,) + args[k + 1:]),
                          -sign * c)
            if cxs[k].degree(x) % 2:
                sign = -sign
        acc = _clean(acc)
        if acc:
            table[args] = acc
    return MultiMap(xi.inputs, xi.output, xi.degree + 1, table)


def compose_end(X: EndX, xi1: MultiMap, i: int, xi2: MultiMap,
                sign_fault: bool = False) -> MultiMap:
    """Partial composition: feed xi2's value into slot i of xi1, with the
    sign of moving xi2 past the first i-1 arguments.

    sign_fault drops that sign; it exists to demonstrate that the dg laws
    detect it.
    """
    if not 1 <= i <= xi1.arity():
        raise CompositionError(
            f"slot {i} out of range 1..{xi1.arity()}")
    if xi1.inputs[i - 1] != xi2.output:
        raise CompositionError(
            f"slot {i} expects {xi1.inputs[i - 1]!r}, inner map produces "
            f"{xi2.output!r}")
    new_inputs = xi1.inputs[:i - 1] + xi2.inputs + xi1.inputs[i:]
    pre_cxs = [X.complex(e) for e in xi1.inputs[:i - 1]]
    in_cxs = X.input_complexes(xi2)
    post_cxs = [X.complex(e) for e in xi1.inputs[i:]]
    table: dict[tuple[str, ...], Vector] = {}
    for pre in _basis_tuples(pre_cxs):
        pre_deg = sum(cx.degree(x) for cx, x in zip(pre_cxs, pre))
        sign = -1 if (xi2.degree % 2 and pre_deg % 2
                      and not sign_fault) else 1
        for mid in _basis_tuples(in_cxs):
            inner = xi2.apply(mid)
            if not inner:
                continue
            for post in _basis_tuples(post_cxs):
                acc: Vector = {}
                for m, cm in inner.items():
                    _add_into(acc, xi1.apply(pre + (m,) + post), sign * cm)
                acc = _clean(acc)
                if acc:
                    table[pre + mid + post] = acc
    return MultiMap(new_inputs, xi1.output, xi1.degree + xi2.degree, table)


@dataclass(frozen=True)
class EndDgReport:
    ok: bool
    checked: int
    failure: Optional[str]
    witness: Optional[str]

    def summary(self) -> str:
        if self.ok:
            return f"pass ({self.checked} identities checked)"
        return f"FAIL: {self.failure}\n  witness: {self.witness}"


def _population(X: EndX, loops, single_entry_only: bool = False
                ) -> list[MultiMap]:
    """All single-entry basis-supported maps over the given profile-loops."""
    maps: list[MultiMap] = []
    for loop in loops:
        cxs = [X.complex(e) for e in loop.inputs.edges]
        out_cx = X.complex(loop.output)
        for args in _basis_tuples(cxs):
            in_deg = sum(cx.degree(x) for cx, x in zip(cxs, args))
            for y in out_cx.basis.ids():
                deg = out_cx.degree(y) - in_deg
                maps.append(MultiMap(loop.inputs.edges, loop.output, deg,
                                     {args: {y: 1}}))
    return maps


def check_end_dg(X: EndX, arity_bound: int = 2,
                 sign_fault: bool = False) -> EndDgReport:
    """Verify the dg laws on every single-entry map of bounded arity.

    Checks: hat_d squares to zero; hat_d of each identity map vanishes;
    composition satisfies both partial-composition identities (the
    parallel one with the sign for exchanging the two inner maps); unit
    laws; and the Leibniz identity tying hat_d to composition.
    """
    from .graphs import enumerate_profile_loops
    loops = enumerate_profile_loops(X.graph, arity_bound)
    pop = _population(X, loops)
    checked = 0

    def fail(what, wit):
        return EndDgReport(False, checked, what, wit)

    for eid in X.graph.edge_ids():
        if not hat_d(X, identity_map(X, eid)).is_zero():
            return fail("hat_d(identity) != 0", f"edge {eid}")
        checked += 1
    for xi in pop:
        if not hat_d(X, hat_d(X, xi)).is_zero():
            return fail("hat_d^2 != 0", repr(xi))
        checked += 1
    # unit laws
    for xi in pop:
        for i in range(1, xi.arity() + 1):
            unit = identity_map(X, xi.inputs[i - 1])
            if compose_end(X, xi, i, unit) != xi:
                return fail("xi o_i id != xi", f"{xi!r} slot {i}")
            checked += 1
        unit = identity_map(X, xi.output)
        if compose_end(X, unit, 1, xi) != xi:
            return fail("id o_1 xi != xi", repr(xi))
        checked += 1
    # Leibniz
    for xi1 in pop:
        for xi2 in pop:
            for i in range(1, xi1.arity() + 1):
                if xi1.inputs[i - 1] != xi2.output:
                    continue
                comp = compose_end(X, xi1, i, xi2, sign_fault=sign_fault)
                lhs = hat_d(X, comp)
                s = -1 if xi1.degree % 2 else 1
                rhs = compose_end(X, hat_d(X, xi1), i, xi2,
                                  sign_fault=sign_fault).add(
                    compose_end(X, xi1, i, hat_d(X, xi2),
                                sign_fault=sign_fault).scale(s))
                if lhs != rhs:
                    return fail(
                        "Leibniz identity fails for hat_d against "
                        "composition",
                        f"{xi1!r} o_{i} {xi2!r}")
                checked += 1
    # partial-composition identities
    for xi1 in pop:
        for xi2 in pop:
            for i in range(1, xi1.arity() + 1):
                if xi1.inputs[i - 1] != xi2.output:
                    continue
                left = compose_end(X, xi1, i, xi2, sign_fault=sign_fault)
                for xi3 in pop:
                    # nested
                    for j in range(1, xi2.arity() + 1):
                        if xi2.inputs[j - 1] != xi3.output:
                            continue
                        lhs = compose_end(X, left, i - 1 + j, xi3,
                                          sign_fault=sign_fault)
                        rhs = compose_end(
                            X, xi1, i,
                            compose_end(X, xi2, j, xi3,
                                        sign_fault=sign_fault),
                            sign_fault=sign_fault)
                        if lhs != rhs:
                            return fail("nested composition identity fails",
                                        f"{xi1!r} {xi2!r} {xi3!r} i={i} j={j}")
                        checked += 1
                    # parallel, i < k
                    for k in range(i + 1, xi1.arity() + 1):
                        if xi1.inputs[k - 1] != xi3.output:
                            continue
                        lhs = compose_end(X, left, k - 1 + xi2.arity(), xi3,
                                          sign_fault=sign_fault)
                        s = -1 if (xi2.degree * xi3.degree) % 2 else 1
                        rhs = compose_end(
                            X, compose_end(X, xi1, k, xi3,
                                           sign_fault=sign_fault),
                            i, xi2, sign_fault=sign_fault).scale(s)
                        if lhs != rhs:
                            return fail(
                                "parallel composition identity fails",
                                f"{xi1!r} {xi2!r} {xi3!r} i={i} k={k}")
                        checked += 1
    return EndDgReport(True, checked, None, None)
