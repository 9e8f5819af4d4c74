"""Heaps of pieces in Cartier-Foata normal form.

A heap is stored as a tuple of layers.  Layer 0 holds the minimal pieces and
every piece of layer k+1 meets at least one piece of layer k; within a layer
the pieces are pairwise disjoint and sorted.  Pushing a piece onto a heap
drops it to one above the highest piece it meets, which is all the monoid
product needs.

Pieces only have to be hashable, ordered and provide ``meets(other)``.  Two
kinds ship here: integer segments :class:`Piece` and elementary cycles
:class:`Cycle` of a directed graph (pieces meet when they share a vertex).

Weights are exponent triples ``(x, y, q)``: a weight function maps a piece to
the exponents of its monomial, and a heap weighs the product of its pieces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, NamedTuple, Protocol, Sequence

from .exceptions import ConditionViolated, InfiniteEnumeration, InvalidWalk
from .series import Trunc, TruncatedSeries

__all__ = [
    "Piece", "Cycle", "Edge", "Path", "Heap", "FiniteDigraph", "compose",
    "minima", "maxima", "is_trivial", "is_pyramid", "enumerate_heaps",
    "enumerate_trivial_heaps", "inversion_lemma_lhs", "inversion_lemma_rhs",
    "pyramid_series_lhs", "pyramid_series_rhs", "psi_cycles", "psi_cycles_inverse",
    "segment_weight", "heap_exponent",
]

Exponent = tuple[int, int, int]
WeightFunction = Callable[["PieceLike"], Exponent]


class PieceLike(Protocol):
    def meets(self, other) -> bool: ...
    def __lt__(self, other) -> bool: ...


@dataclass(frozen=True, order=True)
class Piece:
    """The segment ``[a, b]``; ``label`` tells apart monomers sharing a point."""

    a: int
    b: int
    label: str = ""

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"segment [{self.a},{self.b}] has a > b")

    @property
    def length(self) -> int:
        return self.b - self.a

    def meets(self, other: Piece) -> bool:
        return self.a <= other.b and other.a <= self.b

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "label": self.label or None}

    def __str__(self) -> str:
        tag = self.label or ""
        return f"[{self.a}]{tag}" if self.a == self.b else f"[{self.a},{self.b}]{tag}"


class Edge(NamedTuple):
    src: Hashable
    dst: Hashable
    label: str = ""


@dataclass(frozen=True, order=True)
class Cycle:
    """An elementary cycle, rotated so that it starts at its least vertex."""

    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(cls, edges: Sequence[Edge]) -> Cycle:
        edges = tuple(Edge(*e) for e in edges)
        k = min(range(len(edges)), key=lambda i: edges[i].src)
        return cls(edges[k:] + edges[:k])

    @property
    def vertices(self) -> frozenset:
        return frozenset(e.src for e in self.edges)

    def meets(self, other: Cycle) -> bool:
        return not self.vertices.isdisjoint(other.vertices)

    def rotated_to(self, v) -> tuple[Edge, ...]:
        k = next(i for i, e in enumerate(self.edges) if e.src == v)
        return self.edges[k:] + self.edges[:k]

    def to_dict(self) -> dict:
        return {"cycle": [list(e) for e in self.edges]}

    def __str__(self) -> str:
        return "(" + "".join(str(e.src) for e in self.edges) + ")"


@dataclass(frozen=True)
class Heap:
    layers: tuple[tuple, ...] = ()

    @classmethod
    def from_pieces(cls, pieces: Iterable) -> Heap:
        """Stack the pieces in order, the first one at the bottom."""
        h = cls()
        for p in pieces:
            h = h.push(p)
        return h

    def push(self, p) -> Heap:
        level = 0
        for k in range(len(self.layers) - 1, -1, -1):
            if any(p.meets(r) for r in self.layers[k]):
                level = k + 1
                break
        layers = list(self.layers)
        if level == len(layers):
            layers.append((p,))
        else:
            layers[level] = tuple(sorted(layers[level] + (p,)))
        return Heap(tuple(layers))

    def pieces(self) -> list:
        return [p for layer in self.layers for p in layer]

    def __len__(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def __iter__(self) -> Iterator:
        return iter(self.pieces())

    def minima(self) -> list:
        return list(self.layers[0]) if self.layers else []

    def maxima_by_layer(self) -> list[tuple[int, object]]:
        """Maximal pieces with their layer; equal pieces may sit in several layers."""
        out = []
        for k, layer in enumerate(self.layers):
            above = [r for higher in self.layers[k + 1:] for r in higher]
            out.extend((k, p) for p in layer if not any(p.meets(r) for r in above))
        return out

    def maxima(self) -> list:
        return sorted(p for _, p in self.maxima_by_layer())

    def remove_maximal(self, p) -> Heap:
        """Remove the topmost occurrence of ``p``, which must be maximal."""
        if p not in self.maxima():
            raise ValueError(f"{p} is not a maximal piece")
        rest = self.pieces()
        del rest[len(rest) - 1 - rest[::-1].index(p)]
        return Heap.from_pieces(rest)

    def remove_minimal(self, p) -> Heap:
        """Remove the bottom occurrence of ``p``, which must be minimal."""
        if p not in self.minima():
            raise ValueError(f"{p} is not a minimal piece")
        rest = self.pieces()
        del rest[rest.index(p)]
        return Heap.from_pieces(rest)

    def compose(self, other: Heap) -> Heap:
        h = self
        for p in other.pieces():
            h = h.push(p)
        return h

    __mul__ = compose

    def length(self) -> int:
        return sum(p.length for p in self.pieces())

    def right_endpoint_sum(self) -> int:
        return sum(p.b for p in self.pieces())

    def to_dict(self) -> dict:
        return {"layers": [[p.to_dict() for p in layer] for layer in self.layers]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data) -> Heap:
        layers = []
        for layer in data["layers"]:
            layers.append([_piece_from_dict(p) for p in layer])
        return cls.from_pieces(p for layer in layers for p in layer)

    def __str__(self) -> str:
        return " | ".join(" ".join(str(p) for p in layer) for layer in self.layers) or "()"


def _piece_from_dict(d):
    if "cycle" in d:
        return Cycle.from_edges([Edge(*e) for e in d["cycle"]])
    return Piece(d["a"], d["b"], d.get("label") or "")


def compose(h1: Heap, h2: Heap) -> Heap:
    return h1.compose(h2)


def minima(h: Heap) -> list:
    return h.minima()


def maxima(h: Heap) -> list:
    return h.maxima()


def is_trivial(h: Heap) -> bool:
    return len(h.layers) <= 1


def is_pyramid(h: Heap) -> bool:
    return len(h.maxima()) == 1


def segment_weight(p: Piece) -> Exponent:
    """``x^length y q^b``: the weight used for segments starting at 1 or more."""
    return (p.length, 1, p.b)


def heap_exponent(h: Heap, weight: WeightFunction) -> Exponent:
    x = y = q = 0
    for p in h.pieces():
        dx, dy, dq = weight(p)
        x, y, q = x + dx, y + dy, q + dq
    return (x, y, q)


def _add(e: Exponent, f: Exponent) -> Exponent:
    return (e[0] + f[0], e[1] + f[1], e[2] + f[2])


def _fits(e: Exponent, bound: Exponent) -> bool:
    return all(a <= b for a, b in zip(e, bound))


def _usable(universe: Iterable, weight: WeightFunction, bound: Exponent) -> list:
    pieces = sorted(set(universe))
    for p in pieces:
        if weight(p) == (0, 0, 0):
            raise InfiniteEnumeration(f"piece {p} has weight of degree 0")
    return [p for p in pieces if _fits(weight(p), bound)]


def _independent_sets(pieces: list, weight: WeightFunction, start: Exponent,
                      bound: Exponent, nonempty: bool) -> Iterator[tuple[tuple, Exponent]]:
    def rec(i, chosen, exp):
        if chosen or not nonempty:
            yield tuple(chosen), exp
        for j in range(i, len(pieces)):
            p = pieces[j]
            e = _add(exp, weight(p))
            if _fits(e, bound) and not any(p.meets(c) for c in chosen):
                chosen.append(p)
                yield from rec(j + 1, chosen, e)
                chosen.pop()
    yield from rec(0, [], start)


def enumerate_trivial_heaps(universe: Iterable, weight: WeightFunction,
                            bound: Exponent) -> Iterator[tuple[Heap, Exponent]]:
    pieces = _usable(universe, weight, bound)
    for chosen, exp in _independent_sets(pieces, weight, (0, 0, 0), bound, False):
        yield Heap((chosen,) if chosen else ()), exp


def enumerate_heaps(universe: Iterable, weight: WeightFunction,
                    bound: Exponent) -> Iterator[tuple[Heap, Exponent]]:
    """Every heap over ``universe`` whose weight exponent is within ``bound``.

    Heaps are built layer by layer in normal form, so each is produced once:
    a new layer is a nonempty set of disjoint pieces each meeting the layer
    below.  Yields ``(heap, exponent)`` pairs, the empty heap first.
    """
    pieces = _usable(universe, weight, bound)

    def rec(layers, exp):
        yield Heap(tuple(layers)), exp
        if layers:
            cands = [p for p in pieces if any(p.meets(r) for r in layers[-1])]
        else:
            cands = pieces
        for layer, e in _independent_sets(cands, weight, exp, bound, True):
            layers.append(layer)
            yield from rec(layers, e)
            layers.pop()

    yield from rec([], (0, 0, 0))


def _series(pairs: Iterable[tuple[int, Exponent]], trunc: Trunc) -> TruncatedSeries:
    terms: dict[Exponent, int] = {}
    for coef, e in pairs:
        terms[e] = terms.get(e, 0) + coef
    return TruncatedSeries(terms, trunc)


def inversion_lemma_lhs(universe, m_subset, weight: WeightFunction, trunc: Trunc) -> TruncatedSeries:
    """Sum of weights of heaps whose maximal pieces all lie in ``m_subset``."""
    allowed = set(m_subset)
    return _series(((1, e) for h, e in enumerate_heaps(universe, weight, trunc)
                    if all(p in allowed for p in h.maxima())), trunc)


def inversion_lemma_rhs(universe, m_subset, weight: WeightFunction, trunc: Trunc) -> TruncatedSeries:
    """Signed trivial heaps avoiding ``m_subset`` over all signed trivial heaps."""
    universe = list(universe)
    allowed = set(m_subset)
    outside = [p for p in universe if p not in allowed]
    num = _series((((-1) ** len(t), e) for t, e in enumerate_trivial_heaps(outside, weight, trunc)), trunc)
    den = _series((((-1) ** len(t), e) for t, e in enumerate_trivial_heaps(universe, weight, trunc)), trunc)
    return num * den.recip()


def pyramid_series_lhs(universe, weight: WeightFunction, trunc: Trunc) -> TruncatedSeries:
    return _series(((1, e) for h, e in enumerate_heaps(universe, weight, trunc) if is_pyramid(h)), trunc)


def pyramid_series_rhs(universe, weight: WeightFunction, trunc: Trunc) -> TruncatedSeries:
    universe = list(universe)
    trivial = list(enumerate_trivial_heaps(universe, weight, trunc))
    num = _series((((-1) ** len(t) * len(t), e) for t, e in trivial), trunc)
    den = _series((((-1) ** len(t), e) for t, e in trivial), trunc)
    return -(num * den.recip())


# heaps of cycles


class Digraph(Protocol):
    def has_edge(self, edge: Edge) -> bool: ...


@dataclass(frozen=True)
class FiniteDigraph:
    edges: frozenset

    @classmethod
    def from_edges(cls, edges: Iterable) -> FiniteDigraph:
        return cls(frozenset(Edge(*e) for e in edges))

    def has_edge(self, edge: Edge) -> bool:
        return edge in self.edges


@dataclass(frozen=True)
class Path:
    start: Hashable
    edges: tuple[Edge, ...] = ()

    @classmethod
    def from_vertices(cls, vertices: Sequence, label: str = "") -> Path:
        return cls(vertices[0], tuple(Edge(u, v, label) for u, v in zip(vertices, vertices[1:])))

    @property
    def end(self):
        return self.edges[-1].dst if self.edges else self.start

    def vertices(self) -> list:
        return [self.start] + [e.dst for e in self.edges]

    def is_self_avoiding(self) -> bool:
        vs = self.vertices()
        return len(set(vs)) == len(vs)

    def __str__(self) -> str:
        return "".join(str(v) for v in self.vertices())


def _check_walk(graph: Digraph, path: Path) -> None:
    cur = path.start
    for e in path.edges:
        if e.src != cur:
            raise InvalidWalk(f"edge {tuple(e)} does not start at {cur!r}")
        if not graph.has_edge(e):
            raise InvalidWalk(f"edge {tuple(e)} is not in the graph")
        cur = e.dst


def psi_cycles(graph: Digraph, path: Path) -> tuple[Path, Heap]:
    """Split a walk into a self-avoiding path and a heap of elementary cycles.

    Arcs are appended one at a time; when the running path comes back to a
    vertex it already visited, the closed part is cut off and pushed as a
    cycle on top of the heap.
    """
    _check_walk(graph, path)
    eta: list[Edge] = []
    verts = [path.start]
    heap = Heap()
    for e in path.edges:
        if e.dst in verts:
            k = verts.index(e.dst)
            heap = heap.push(Cycle.from_edges(eta[k:] + [e]))
            del eta[k:]
            del verts[k + 1:]
        else:
            eta.append(e)
            verts.append(e.dst)
    return Path(path.start, tuple(eta)), heap


def psi_cycles_inverse(graph: Digraph, eta: Path, heap: Heap) -> Path:
    """Rebuild the walk by undoing the last step of the recursion repeatedly.

    At endpoint ``v`` of the current path, the last step closed a cycle iff
    some maximal cycle passes through ``v`` and meets the path nowhere else;
    that cycle is removed and its arcs re-attached.  Otherwise the last arc of
    the path was a plain extension and is peeled off.
    """
    if not eta.is_self_avoiding():
        raise InvalidWalk(f"path {eta} is not self-avoiding")
    _check_walk(graph, eta)
    for c in heap.pieces():
        _check_walk(graph, Path(c.edges[0].src, c.edges))
    path = list(eta.edges)
    reversed_arcs: list[Edge] = []
    while path or len(heap):
        verts = [eta.start] + [e.dst for e in path]
        onpath = set(verts)
        for c in heap.maxima():
            if c.vertices.isdisjoint(onpath):
                raise ConditionViolated(f"maximal cycle {c} does not meet the path")
        v = verts[-1]
        closing = [c for c in heap.maxima() if c.vertices & onpath == {v}]
        if closing:
            c = closing[0]
            heap = heap.remove_maximal(c)
            arcs = c.rotated_to(v)
            path.extend(arcs[:-1])
            reversed_arcs.append(arcs[-1])
        elif path:
            reversed_arcs.append(path.pop())
        else:
            raise ConditionViolated("heap is not empty but no cycle can be re-attached")
    return Path(eta.start, tuple(reversed(reversed_arcs)))
