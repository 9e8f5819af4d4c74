"""Periodic parallelogram polyominoes, heaps of segments, and marked PPPs.

Segments here live on abscissas ``>= 1`` and weigh ``x^(b-a) y q^b``.  A
sequence ``(a_1, b_1), ..., (a_m, b_m)`` with ``a_i <= b_i`` and
``a_i <= b_(i-1)`` is sent to the heap ``[a_m,b_m] * ... * [a_1,b_1]``.

Geometry of a PPP.  Column ``i`` covers the rows ``beta_i .. beta_i+b_i-1``
with ``beta_1 = 0`` and ``beta_(i+1) = beta_i + b_i - a_(i+1)``; repeating
the columns periodically, column ``i + m`` is column ``i`` moved right by
``m`` and up by ``T = sum b - sum a``.  The cell in column ``i`` and row ``y``
sits on the anti-diagonal ``i + y`` at height ``y - i + 1``.  Dropping the
bottom cell of every column leaves the weak PPP whose cells become the points
of the diagram: the mark ``j`` selects anti-diagonal ``j`` for ``s_0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .diagrams import AlternatingDiagram, validate
from .exceptions import InvalidSequence, RectangularPpp, TrivialHeap, WrongType
from .heaps import Heap, Piece

__all__ = [
    "AltSequence", "Ppp", "MarkedPpp", "f_to_heap", "f_inverse", "in_H_tilde",
    "statistics", "marked_ppp_to_diagram", "diagram_to_marked_ppp", "WClass",
    "classify_W", "psi0", "psi1", "half_turn_sequence", "half_turn_heap",
    "is_rectangular", "rightmost_maximal", "leftmost_minimal", "semi_pyramid",
    "iter_sequences",
]


@dataclass(frozen=True)
class AltSequence:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, (a, b) in enumerate(self.pairs):
            if not 1 <= a <= b:
                raise InvalidSequence(f"pair {i + 1} = ({a},{b}) needs 1 <= a <= b")
            if i > 0 and a > self.pairs[i - 1][1]:
                raise InvalidSequence(f"a_{i + 1} = {a} exceeds b_{i} = {self.pairs[i - 1][1]}")

    @classmethod
    def of(cls, pairs: Sequence[Sequence[int]]) -> AltSequence:
        return cls(tuple((int(a), int(b)) for a, b in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def wraps(self) -> bool:
        return bool(self.pairs) and self.pairs[0][0] <= self.pairs[-1][1]


@dataclass(frozen=True)
class Ppp:
    seq: AltSequence

    def __post_init__(self):
        if not self.seq.pairs:
            raise InvalidSequence("a PPP has at least one column")
        if not self.seq.wraps():
            raise InvalidSequence(
                f"mark a_1 = {self.seq.pairs[0][0]} exceeds the last column height {self.seq.pairs[-1][1]}")

    @classmethod
    def of(cls, pairs) -> Ppp:
        return cls(AltSequence.of(pairs))

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return self.seq.pairs

    @property
    def half_perimeter(self) -> int:
        return len(self.pairs) + sum(b - a for a, b in self.pairs)

    def to_dict(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data) -> Ppp:
        return cls.of(data["pairs"])


@dataclass(frozen=True)
class MarkedPpp:
    ppp: Ppp
    j: int

    def __post_init__(self):
        a1, b1 = self.ppp.pairs[0]
        if not a1 <= self.j <= b1:
            raise InvalidSequence(f"mark {self.j} outside [{a1},{b1}]")

    @classmethod
    def of(cls, pairs, j: int) -> MarkedPpp:
        return cls(Ppp.of(pairs), j)

    def to_dict(self) -> dict:
        return {"pairs": [list(p) for p in self.ppp.pairs], "mark": self.j}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data) -> MarkedPpp:
        return cls.of(data["pairs"], int(data["mark"]))


def f_to_heap(s: AltSequence) -> Heap:
    return Heap.from_pieces(Piece(a, b) for a, b in reversed(s.pairs))


def leftmost_minimal(h: Heap) -> Piece:
    return min(h.minima(), key=lambda p: p.a)


def rightmost_maximal(h: Heap) -> Piece:
    return max(h.maxima(), key=lambda p: p.a)


def f_inverse(h: Heap) -> AltSequence:
    """Peel leftmost minima; the first one peeled is ``(a_m, b_m)``."""
    out = []
    while len(h):
        p = leftmost_minimal(h)
        out.append((p.a, p.b))
        h = h.remove_minimal(p)
    return AltSequence(tuple(reversed(out)))


def in_H_tilde(h: Heap) -> bool:
    if not len(h):
        return True
    return rightmost_maximal(h).a <= leftmost_minimal(h).b


def semi_pyramid(h: Heap) -> bool:
    tops = h.maxima()
    return len(tops) == 1 and tops[0].a == 1


def statistics(p: Ppp) -> tuple[int, int, int]:
    """``(width, height, area)``."""
    pairs = p.pairs
    return len(pairs), sum(b - a for a, b in pairs), sum(b for _, b in pairs)


def half_turn_sequence(s: AltSequence) -> AltSequence:
    if not s.pairs:
        return s
    lo = min(a for a, _ in s.pairs)
    hi = max(b for _, b in s.pairs)
    return AltSequence(tuple((lo + hi - b, lo + hi - a) for a, b in reversed(s.pairs)))


def half_turn_heap(h: Heap) -> Heap:
    """Rotate the heap by a half-turn: reflect every segment and reverse the order."""
    ps = h.pieces()
    if not ps:
        return h
    lo = min(p.a for p in ps)
    hi = max(p.b for p in ps)
    return Heap.from_pieces(Piece(lo + hi - p.b, lo + hi - p.a) for p in reversed(ps))


# marked PPPs and diagrams


def is_rectangular(p: Ppp) -> bool:
    return len({v for pair in p.pairs for v in pair}) == 1


def _weak_cells(p: Ppp, periods: int) -> dict[int, list[int]]:
    """Heights of the weak cells on each anti-diagonal, over several periods."""
    pairs = p.pairs
    m = len(pairs)
    T = sum(b for _, b in pairs) - sum(a for a, _ in pairs)
    beta = [0]
    for i in range(1, m):
        beta.append(beta[-1] + pairs[i - 1][1] - pairs[i][0])
    lines: dict[int, list[int]] = {}
    for t in range(-periods, periods + 1):
        for i in range(m):
            col = i + 1 + t * m
            base = beta[i] + t * T
            for y in range(base + 1, base + pairs[i][1]):
                lines.setdefault(col + y, []).append(y - col + 1)
    return lines


def marked_ppp_to_diagram(mp: MarkedPpp) -> AlternatingDiagram:
    p = mp.ppp
    if is_rectangular(p) and p.pairs[0][0] > 1:
        raise RectangularPpp(f"rectangular PPP with columns of height {p.pairs[0][0]}")
    n = p.half_perimeter
    periods = 2 + sum(b for _, b in p.pairs)
    lines = _weak_cells(p, periods)
    cols = [len(lines.get(mp.j + k, ())) for k in range(n)]
    types = {}
    for k in range(n):
        if cols[k] == cols[(k + 1) % n] > 0:
            lo_here = min(lines[mp.j + k])
            lo_next = min(lines[mp.j + k + 1])
            types[k] = "R" if lo_here < lo_next else "L"
    return validate(cols, types, n)


def diagram_to_marked_ppp(d: AlternatingDiagram) -> MarkedPpp:
    """Rebuild the boundary paths of the weak PPP line by line.

    Between anti-diagonals s and s+1 the upper path ``U`` and the lifted
    lower path ``L'`` each take one step.  The gap between them on line s is
    ``|D_s|``, so its variation fixes the steps, and for equal sizes the
    chain type decides: both north for ``R``, both east for ``L`` (and for
    two empty lines).
    """
    n = d.n
    c = d.cols
    types = d.chain_types

    def steps(k):
        a, b = c[k % n], c[(k + 1) % n]
        if b == a + 1:
            return "N", "E"
        if b == a - 1:
            return "E", "N"
        if a > 0 and types[k % n] == "R":
            return "N", "N"
        return "E", "E"

    periods = max(c) + 3
    # u-coordinates of both paths on line s; U passes through (0, 0) on line 0
    u_up = {0: 0}
    u_lo = {0: c[0]}
    for s in range(0, periods * n):
        su, sl = steps(s)
        u_up[s + 1] = u_up[s] + (su == "E")
        u_lo[s + 1] = u_lo[s] + (sl == "E")
    for s in range(0, -periods * n, -1):
        su, sl = steps(s - 1)
        u_up[s - 1] = u_up[s] - (su == "E")
        u_lo[s - 1] = u_lo[s] - (sl == "E")

    def east_heights(u):
        # height of the east step leaving abscissa X, for each X
        out = {}
        for s in sorted(u)[:-1]:
            if u[s + 1] == u[s] + 1:
                out[u[s]] = s - u[s]
        return out

    top = east_heights(u_up)
    bottom = {X: Y - 1 for X, Y in east_heights(u_lo).items()}
    m = u_up[n] - u_up[0]
    pairs = []
    for X in range(m):
        pairs.append((top[X - 1] - bottom[X], top[X] - bottom[X]))
    return MarkedPpp(Ppp.of(pairs), 0 - bottom[0])


# the sets W_0 and W_1


@dataclass(frozen=True)
class WClass:
    kind: str  # "type0", "type1" or "not_in_W"
    u1: tuple[Piece, ...] = ()
    s: Piece | None = None
    s_prime: Piece | None = None

    @property
    def in_W(self) -> bool:
        return self.kind != "not_in_W"


def _without(h: Heap, drop: Sequence[Piece]) -> Heap:
    """Remove minimal pieces ``drop`` (each once)."""
    for p in drop:
        h = h.remove_minimal(p)
    return h


def classify_W(f: Heap) -> WClass:
    if len(f.layers) <= 1:
        raise TrivialHeap("classification needs a heap with at least two layers")
    mins = f.minima()
    maxs = f.maxima()
    upper = [p for k, p in f.maxima_by_layer() if k > 0]
    if not upper:
        return WClass("not_in_W")
    sf = max(upper, key=lambda p: p.a)
    y = [p for p in maxs if p.a > sf.b]
    x = [p for p in mins if p.b < sf.a]
    u1 = sorted(set(x) | set(y))
    fprime = Heap.from_pieces(p for layer in f.layers[1:] for p in layer)
    s0 = None
    if not in_H_tilde(fprime):
        for cand in mins:
            if in_H_tilde(Heap.from_pieces([cand] + fprime.pieces())):
                s0 = cand
                break
    u2 = sorted(p for p in mins if p != s0)
    if u1 != u2 or not in_H_tilde(_without(f, u1)):
        return WClass("not_in_W", tuple(u1))
    if s0 is not None:
        s0p = min((p for p in fprime.minima() if p.meets(s0)), key=lambda p: p.a)
        return WClass("type0", tuple(u1), s0, s0p)
    s1 = max(x, key=lambda p: p.a)
    (s1p,) = fprime.minima()
    return WClass("type1", tuple(u1), s1, s1p)


def _swap(f: Heap, s: Piece, sp: Piece) -> Heap:
    a_part = [p for p in f.minima()]
    a_part.remove(s)
    fprime = Heap.from_pieces(p for layer in f.layers[1:] for p in layer)
    b_part = fprime.remove_minimal(sp)
    return Heap.from_pieces(a_part + [Piece(s.a, sp.b), Piece(sp.a, s.b)] + b_part.pieces())


def psi0(f: Heap) -> Heap:
    c = classify_W(f)
    if c.kind != "type0":
        raise WrongType(f"heap is {c.kind}, psi0 needs type0")
    return _swap(f, c.s, c.s_prime)


def psi1(f: Heap) -> Heap:
    c = classify_W(f)
    if c.kind != "type1":
        raise WrongType(f"heap is {c.kind}, psi1 needs type1")
    return _swap(f, c.s, c.s_prime)


def iter_sequences(max_width: int, max_b: int) -> Iterator[AltSequence]:
    """All alternating sequences of length 1..max_width with entries at most ``max_b``."""
    def rec(prefix):
        if prefix:
            yield AltSequence(tuple(prefix))
        if len(prefix) == max_width:
            return
        cap = prefix[-1][1] if prefix else max_b
        for a in range(1, cap + 1):
            for b in range(a, max_b + 1):
                prefix.append((a, b))
                yield from rec(prefix)
                prefix.pop()
    yield from rec([])
