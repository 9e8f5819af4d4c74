"""Monomer/dimer heaps, closed walks on the half-line graph, and their bijections.

The graph G has vertex set {0, 1, 2, ...}, an up edge i -> i+1 and a down
edge i+1 -> i for every i, and two loops labelled ``L`` and ``R`` at every
positive vertex; vertex 0 carries only the ``L`` loop.  The relaxed graph
G' also has an ``R`` loop at 0.  An edge leaving vertex i weighs ``x q^i``.

Loops are identified with monomers ``[i]`` (keeping the label) and the
two-cycles ``i -> i+1 -> i`` with dimers ``[i, i+1]``; a monomer then weighs
``x q^i`` and a dimer ``x^2 q^(2i+1)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

from .diagrams import AlternatingDiagram, validate
from .exceptions import (
    ExceptionalWalk,
    ForbiddenFactor,
    InvalidWalk,
    NoActiveSite,
)
from .heaps import Cycle, Edge, Heap, Path, Piece, enumerate_trivial_heaps, psi_cycles, psi_cycles_inverse
from .series import Trunc, TruncatedSeries, monomial, pochhammer, zero

__all__ = [
    "HalfLineGraph", "Walk", "MarkedPyramid", "phi", "phi_inverse", "upsilon",
    "upsilon_inverse", "md_weight", "md_universe", "signed_trivial_sum",
    "involution_I", "active_site", "projection_Pr", "projection_Pr_inverse",
    "index_sum", "hword_sum", "hpart_sum", "is_exceptional", "in_col",
    "monomer", "dimer", "MODELS",
]

MODELS = ("md", "md_star", "dimers_only", "L_at_zero_only")


@dataclass(frozen=True)
class HalfLineGraph:
    relaxed: bool = False  # True for G' (R loop allowed at 0)

    def has_edge(self, e: Edge) -> bool:
        u, v, label = e
        if not (isinstance(u, int) and isinstance(v, int)) or u < 0 or v < 0:
            return False
        if u == v:
            return label == "L" or (label == "R" and (u > 0 or self.relaxed))
        return abs(u - v) == 1 and label == ""


G = HalfLineGraph(False)
G_PRIME = HalfLineGraph(True)


@dataclass(frozen=True)
class Walk:
    """A walk given by its start vertex and steps ``(kind, label)``.

    ``kind`` is ``"up"``, ``"down"`` or ``"loop"``; only loops carry a label.
    """

    start: int
    steps: tuple[tuple[str, str | None], ...] = ()

    def vertices(self) -> list[int]:
        out = [self.start]
        for kind, _ in self.steps:
            out.append(out[-1] + {"up": 1, "down": -1, "loop": 0}[kind])
        return out

    @property
    def end(self) -> int:
        return self.vertices()[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def area(self) -> int:
        return sum(self.vertices()[:-1])

    def is_closed(self) -> bool:
        return self.end == self.start

    def to_path(self) -> Path:
        vs = self.vertices()
        edges = tuple(Edge(u, v, label or "") for u, v, (_, label) in zip(vs, vs[1:], self.steps))
        return Path(self.start, edges)

    @classmethod
    def from_path(cls, path: Path) -> Walk:
        steps = []
        for e in path.edges:
            if e.src == e.dst:
                steps.append(("loop", e.label))
            else:
                steps.append(("up" if e.dst > e.src else "down", None))
        return cls(path.start, tuple(steps))

    def check(self, graph: HalfLineGraph = G) -> None:
        for u, (kind, label) in zip(self.vertices(), self.steps):
            if kind not in ("up", "down", "loop"):
                raise InvalidWalk(f"unknown step kind {kind!r}")
            if (kind == "loop") != (label is not None):
                raise InvalidWalk(f"step {kind} with label {label!r}")
        for e in self.to_path().edges:
            if not graph.has_edge(e):
                raise InvalidWalk(f"edge {tuple(e)} is not in the graph")

    def to_dict(self) -> dict:
        return {"start": self.start,
                "steps": [{"kind": k, "label": lab} for k, lab in self.steps]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data) -> Walk:
        return cls(int(data["start"]),
                   tuple((s["kind"], s.get("label")) for s in data["steps"]))


def monomer(i: int, label: str) -> Piece:
    return Piece(i, i, label)


def dimer(i: int) -> Piece:
    return Piece(i, i + 1)


def md_weight(p: Piece) -> tuple[int, int, int]:
    if p.a == p.b:
        return (1, 0, p.a)
    return (2, 0, 2 * p.a + 1)


def is_exceptional(w: Walk) -> bool:
    """Walks that loop at one positive vertex with a single repeated label."""
    labels = {lab for _, lab in w.steps}
    return (len(w) > 0 and w.start > 0 and all(k == "loop" for k, _ in w.steps)
            and len(labels) == 1)


def phi(d: AlternatingDiagram) -> Walk:
    """The walk through the column sizes ``|D_0| -> |D_1| -> ... -> |D_0|``."""
    cols = d.cols
    types = d.chain_types
    steps = []
    for i in range(d.n):
        a, b = cols[i], cols[(i + 1) % d.n]
        if b == a + 1:
            steps.append(("up", None))
        elif b == a - 1:
            steps.append(("down", None))
        else:
            steps.append(("loop", types.get(i, "L")))
    return Walk(cols[0], tuple(steps))


def phi_inverse(w: Walk) -> AlternatingDiagram:
    w.check(G)
    if not w.is_closed() or len(w) == 0:
        raise InvalidWalk("need a nonempty closed walk")
    if is_exceptional(w):
        raise ExceptionalWalk(f"walk loops {len(w)} times at vertex {w.start} with one label")
    vs = w.vertices()
    types = {i: lab for i, (kind, lab) in enumerate(w.steps) if kind == "loop" and vs[i] > 0}
    return validate(vs[:-1], types, len(w))


@dataclass(frozen=True)
class MarkedPyramid:
    pyramid: Heap
    mark: int

    def __post_init__(self):
        tops = self.pyramid.maxima()
        if len(tops) != 1:
            raise ValueError("not a pyramid")
        top = tops[0]
        if not top.a <= self.mark <= top.b:
            raise ValueError(f"mark {self.mark} is not on the maximal piece {top}")

    def exponent(self) -> tuple[int, int, int]:
        x = q = 0
        for p in self.pyramid.pieces():
            dx, _, dq = md_weight(p)
            x, q = x + dx, q + dq
        return (x, 0, q)

    def to_dict(self) -> dict:
        return {"pyramid": self.pyramid.to_dict(), "mark": self.mark}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data) -> MarkedPyramid:
        return cls(Heap.from_dict(data["pyramid"]), int(data["mark"]))


def _cycle_to_piece(c: Cycle) -> Piece:
    if len(c.edges) == 1:
        return monomer(c.edges[0].src, c.edges[0].label)
    if len(c.edges) == 2:
        return dimer(min(c.vertices))
    raise InvalidWalk(f"cycle {c} is neither a loop nor a two-cycle")


def _piece_to_cycle(p: Piece) -> Cycle:
    if p.a == p.b:
        return Cycle.from_edges([Edge(p.a, p.a, p.label)])
    return Cycle.from_edges([Edge(p.a, p.b, ""), Edge(p.b, p.a, "")])


def in_col(mp: MarkedPyramid) -> bool:
    """Heaps of monomers at one positive abscissa sharing one label."""
    ps = mp.pyramid.pieces()
    return (len(ps) > 0 and all(p.a == p.b for p in ps) and len({p.a for p in ps}) == 1
            and ps[0].a > 0 and len({p.label for p in ps}) == 1)


def upsilon(d: AlternatingDiagram) -> MarkedPyramid:
    w = phi(d)
    eta, heap = psi_cycles(G, w.to_path())
    assert not eta.edges
    return MarkedPyramid(Heap.from_pieces(_cycle_to_piece(c) for c in heap.pieces()), w.start)


def upsilon_inverse(mp: MarkedPyramid) -> AlternatingDiagram:
    if in_col(mp):
        raise ExceptionalWalk("pyramid of identical monomers at a positive abscissa")
    cycles = Heap.from_pieces(_piece_to_cycle(p) for p in mp.pyramid.pieces())
    path = psi_cycles_inverse(G, Path(mp.mark), cycles)
    return phi_inverse(Walk.from_path(path))


def md_universe(model: str, max_site: int) -> list[Piece]:
    """Pieces of a model whose abscissas stay within ``0..max_site + 1``."""
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
    out = [dimer(i) for i in range(max_site + 1)]
    if model in ("md", "md_star"):
        for i in range(max_site + 1):
            out.append(monomer(i, "L"))
            if i > 0 or model == "md":
                out.append(monomer(i, "R"))
    elif model == "L_at_zero_only":
        out.append(monomer(0, "L"))
    return out


def signed_trivial_sum(model: str, trunc: Trunc) -> TruncatedSeries:
    """``sum (-1)^|T| v(T)`` over trivial heaps of the model, by enumeration.

    Model ``md`` allows both labels everywhere, ``md_star`` only ``L`` at 0,
    ``dimers_only`` has no monomers and ``L_at_zero_only`` allows monomers
    only at 0 with label ``L``.
    """
    terms: dict = {}
    for t, e in enumerate_trivial_heaps(md_universe(model, trunc[2]), md_weight, trunc):
        terms[e] = terms.get(e, 0) + (-1) ** len(t)
    return TruncatedSeries(terms, trunc)


def active_site(pieces: Iterable[Piece]) -> int | None:
    ps = set(pieces)
    sites = [p.a for p in ps if p.a < p.b]
    sites += [p.a for p in ps if p.a == p.b and p.label == "L" and monomer(p.a + 1, "R") in ps]
    return min(sites) if sites else None


def involution_I(t: Heap) -> Heap:
    """Swap, at the least active site i, the dimer ``[i, i+1]`` with ``L@i, R@i+1``."""
    if len(t.layers) > 1:
        raise ValueError("involution_I acts on trivial heaps")
    ps = set(t.pieces())
    i = active_site(ps)
    if i is None:
        raise NoActiveSite("no dimer and no L monomer followed by an R monomer")
    if dimer(i) in ps:
        ps = (ps - {dimer(i)}) | {monomer(i, "L"), monomer(i + 1, "R")}
    else:
        ps = (ps - {monomer(i, "L"), monomer(i + 1, "R")}) | {dimer(i)}
    return Heap((tuple(sorted(ps)),)) if ps else Heap()


# words over {0, L, R}


def _check_word(w: str) -> None:
    if set(w) - set("0LR"):
        raise ValueError(f"word {w!r} uses letters other than 0, L, R")


def _norm(w: str) -> str:
    return w.rstrip("0")


def projection_Pr(w: str) -> tuple[str, str]:
    """Delete the L's (first component) and the R's (second component) of ``w``."""
    _check_word(w)
    if "LR" in w:
        raise ForbiddenFactor(f"word {w!r} contains the factor LR")
    return _norm(w.replace("L", "")), _norm(w.replace("R", ""))


def projection_Pr_inverse(u: str, v: str) -> str:
    """Rebuild the word: between consecutive zeros put the R-run, then the L-run."""
    _check_word(u)
    _check_word(v)
    if "L" in u or "R" in v:
        raise ValueError("expected a word over {0,R} and a word over {0,L}")
    ru, lv = u.split("0"), v.split("0")
    k = max(len(ru), len(lv))
    ru += [""] * (k - len(ru))
    lv += [""] * (k - len(lv))
    return _norm("0".join(r + l for r, l in zip(ru, lv)))


def index_sum(w: str) -> int:
    return sum(i for i, c in enumerate(w) if c != "0")


def _lr_avoiding_words(max_len: int) -> Iterator[str]:
    def rec(prefix):
        yield prefix
        if len(prefix) == max_len:
            return
        for c in "0LR":
            if c == "R" and prefix.endswith("L"):
                continue
            yield from rec(prefix + c)
    yield from rec("")


def hword_sum(trunc: Trunc) -> TruncatedSeries:
    """``sum (-x)^|w| q^idx(w)`` over LR-avoiding words (no trailing zeros)."""
    X, _, Q = trunc
    terms: dict = {}
    for w in _lr_avoiding_words(Q + 1):
        if w.endswith("0"):
            continue
        k = len(w) - w.count("0")
        e = (k, 0, index_sum(w))
        if k <= X and e[2] <= Q:
            terms[e] = terms.get(e, 0) + (-1) ** k
    return TruncatedSeries(terms, trunc)


def hpart_sum(trunc: Trunc) -> TruncatedSeries:
    """``sum_{k,l} (-x)^(k+l) q^(C(k,2)+C(l,2)+kl) / ((q;q)_k (q;q)_l)``."""
    X, _, Q = trunc
    total = zero(trunc)
    qq = monomial(1, 0, 0, 1, trunc=trunc)
    for k in range(X + 1):
        for l in range(X + 1 - k):
            e = comb(k, 2) + comb(l, 2) + k * l
            if e > Q:
                continue
            den = pochhammer(qq, k, trunc) * pochhammer(qq, l, trunc)
            total = total + monomial((-1) ** (k + l), k + l, 0, e, trunc=trunc) * den.recip()
    return total
