"""Affine alternating diagrams and the bijection with 321-avoiding affine permutations.

A diagram of rank ``n`` is stored by its column sizes ``|D_0|, ..., |D_{n-1}|``
and, for every ``i`` with ``|D_i| == |D_{i+1}| > 0`` (indices mod n), the type
of the alternating chain on the labels ``s_i, s_{i+1}``: ``"R"`` when it reads
``s_i s_{i+1} ...`` from bottom to top, ``"L"`` when it reads
``s_{i+1} s_i ...``.  Bottom-to-top is the left-to-right order of a word.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exceptions import (
    ChainTypeDomainMismatch,
    ExcludedUniformL,
    ExcludedUniformR,
    NotAlternating,
    NotFullyCommutative,
    SizeMismatch,
)
from .permutations import AffinePermutation, alternates, identity, reduced_word, word_to_permutation

__all__ = [
    "AlternatingDiagram", "validate", "empty_diagram", "delta", "delta_inverse",
    "linear_extension", "chain_sequence", "size", "is_finite", "is_self_dual", "dual",
]

Element = tuple[int, int]  # (column, position from the bottom)


@dataclass(frozen=True, order=True)
class AlternatingDiagram:
    n: int
    cols: tuple[int, ...]
    types: tuple[tuple[int, str], ...] = field(default=())

    @property
    def chain_types(self) -> dict[int, str]:
        return dict(self.types)

    @property
    def size(self) -> int:
        return sum(self.cols)

    def to_dict(self) -> dict:
        return {"n": self.n, "cols": list(self.cols),
                "types": {str(i): t for i, t in self.types}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> AlternatingDiagram:
        types = {int(i): t for i, t in data.get("types", {}).items()}
        return validate(data["cols"], types, data["n"])


def required_type_positions(cols: Sequence[int]) -> list[int]:
    n = len(cols)
    return [i for i in range(n) if cols[i] == cols[(i + 1) % n] > 0]


def validate(col_sizes: Sequence[int], chain_types: Mapping[int, str], n: int) -> AlternatingDiagram:
    cols = tuple(int(c) for c in col_sizes)
    if n < 1 or len(cols) != n:
        raise SizeMismatch(f"rank {n} needs {n} column sizes, got {len(cols)}")
    if min(cols) < 0:
        raise NotAlternating(f"negative column size in {cols}")
    for i in range(n):
        if abs(cols[i] - cols[(i + 1) % n]) > 1:
            raise NotAlternating(
                f"columns {i} and {(i + 1) % n} differ by more than one: {cols}")
    types = {int(i) % n: t for i, t in chain_types.items()}
    needed = required_type_positions(cols)
    if sorted(types) != needed or len(types) != len(chain_types):
        raise ChainTypeDomainMismatch(
            f"chain types given on {sorted(chain_types)}, required exactly on {needed}")
    if any(t not in ("L", "R") for t in types.values()):
        raise ChainTypeDomainMismatch(f"chain types must be 'L' or 'R': {types}")
    if len(needed) == n:
        labels = set(types.values())
        if labels == {"R"}:
            raise ExcludedUniformR(f"all columns equal to {cols[0]} with uniform type R")
        if labels == {"L"}:
            raise ExcludedUniformL(f"all columns equal to {cols[0]} with uniform type L")
    return AlternatingDiagram(n, cols, tuple(sorted(types.items())))


def empty_diagram(n: int) -> AlternatingDiagram:
    return AlternatingDiagram(n, (0,) * n, ())


def delta(s: AffinePermutation) -> AlternatingDiagram:
    """The diagram read off any reduced word of a 321-avoiding ``s``."""
    n = s.n
    if n == 1:
        return empty_diagram(1)
    word = reduced_word(s)
    if not alternates(word, n):
        raise NotFullyCommutative(f"{s} is not 321-avoiding (reduced word {word})")
    cols = [0] * n
    for a in word:
        cols[a] += 1
    types = {}
    for i in required_type_positions(cols):
        first = next(a for a in word if a in (i, (i + 1) % n))
        types[i] = "R" if first == i else "L"
    return validate(cols, types, n)


def chain_sequence(d: AlternatingDiagram, i: int) -> list[Element]:
    """Elements of the chain on labels ``s_i, s_{i+1}``, bottom to top."""
    n = d.n
    j = (i + 1) % n
    a, b = d.cols[i], d.cols[j]
    if a == 0 and b == 0:
        return []
    if a > b or (a == b and d.chain_types[i] == "R"):
        first, second = i, j
    else:
        first, second = j, i
    total = a + b
    return [(first if k % 2 == 0 else second, k // 2) for k in range(total)]


def _covers(d: AlternatingDiagram) -> dict[Element, set[Element]]:
    up: dict[Element, set[Element]] = {
        (c, k): set() for c in range(d.n) for k in range(d.cols[c])}
    for i in range(d.n):
        seq = chain_sequence(d, i)
        for lo, hi in zip(seq, seq[1:]):
            up[lo].add(hi)
    return up


def linear_extension(d: AlternatingDiagram, strategy: str = "column") -> list[Element]:
    """A linear extension of the diagram's poset.

    ``"column"`` always takes the available element with the smallest column
    index; ``"level"`` takes the one lowest in the poset (longest chain below
    it), breaking ties by column.
    """
    up = _covers(d)
    indeg = {e: 0 for e in up}
    for e, hs in up.items():
        for h in hs:
            indeg[h] += 1
    if strategy == "column":
        key = {e: (e[0], e[1]) for e in up}
    elif strategy == "level":
        level = {e: 0 for e in up}
        for e in _topological(up, dict(indeg)):
            for h in up[e]:
                level[h] = max(level[h], level[e] + 1)
        key = {e: (level[e], e[0], e[1]) for e in up}
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    ready = [(key[e], e) for e, k in indeg.items() if k == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, e = heapq.heappop(ready)
        order.append(e)
        for h in up[e]:
            indeg[h] -= 1
            if indeg[h] == 0:
                heapq.heappush(ready, (key[h], h))
    if len(order) != len(up):
        raise NotAlternating("chains do not define a poset (cycle in the order)")
    return order


def _topological(up, indeg):
    stack = [e for e, k in indeg.items() if k == 0]
    out = []
    while stack:
        e = stack.pop()
        out.append(e)
        for h in up[e]:
            indeg[h] -= 1
            if indeg[h] == 0:
                stack.append(h)
    return out


def delta_inverse(d: AlternatingDiagram, strategy: str = "column") -> AffinePermutation:
    """Multiply the generators along a linear extension of ``d``."""
    if d.n == 1:
        return identity(1)
    word = [c for c, _ in linear_extension(d, strategy)]
    return word_to_permutation(d.n, word)


def size(d: AlternatingDiagram) -> int:
    return d.size


def is_finite(d: AlternatingDiagram) -> bool:
    return d.cols[0] == 0


def dual(d: AlternatingDiagram) -> AlternatingDiagram:
    """Reverse the order: every chain is read backwards, flipping its type."""
    flip = {"L": "R", "R": "L"}
    return AlternatingDiagram(d.n, d.cols, tuple((i, flip[t]) for i, t in d.types))


def is_self_dual(d: AlternatingDiagram) -> bool:
    return dual(d) == d
