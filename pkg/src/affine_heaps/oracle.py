"""Brute-force enumerators used as independent checks of the closed forms."""

from __future__ import annotations

import io
import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .diagrams import AlternatingDiagram, required_type_positions, validate
from .exceptions import DomainError
from .monodimer import Walk
from .permutations import (
    AffinePermutation,
    identity,
    inversion_number,
    is_321_avoiding_scan,
    is_321_avoiding_word,
    is_finite,
    is_involution,
    right_multiply,
)
from .ppp import AltSequence, Ppp

__all__ = [
    "CountTable", "CLASS_TAGS", "fc_levels", "enumerate_fc_elements",
    "enumerate_diagrams", "enumerate_walks", "enumerate_ppp", "WALK_VARIANTS",
]

CLASS_TAGS = ("affine", "finite", "affine_involution", "finite_involution")
WALK_VARIANTS = ("G", "Gprime", "noloops", "loops_at_zero")


@dataclass(frozen=True)
class CountTable:
    n: int
    class_tag: str
    rows: dict[int, int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.rows.values())

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("length,count\n")
        for length in sorted(self.rows):
            out.write(f"{length},{self.rows[length]}\n")
        return out.getvalue()

    def to_dict(self) -> dict:
        return {"n": self.n, "class": self.class_tag,
                "rows": {str(k): self.rows[k] for k in sorted(self.rows)}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@lru_cache(maxsize=64)
def fc_levels(n: int, max_len: int) -> tuple[tuple[AffinePermutation, ...], ...]:
    """321-avoiding elements of the affine group grouped by length.

    Breadth-first from the identity: a neighbour ``s o s_i`` is kept when its
    inversion number is one more and both 321 tests accept it.  Prefixes of
    reduced words of 321-avoiding elements avoid 321, so nothing is missed.
    """
    levels = [(identity(n),)]
    for length in range(1, max_len + 1):
        nxt = set()
        for s in levels[-1]:
            for i in range(n):
                t = right_multiply(s, i)
                if t in nxt or inversion_number(t) != length:
                    continue
                ok_scan = is_321_avoiding_scan(t)
                if ok_scan != is_321_avoiding_word(t):
                    raise AssertionError(f"321 tests disagree on {t}")
                if ok_scan:
                    nxt.add(t)
        levels.append(tuple(sorted(nxt)))
    return tuple(levels)


def _keep(tag: str, s: AffinePermutation) -> bool:
    if tag == "affine":
        return True
    if tag == "finite":
        return is_finite(s)
    if tag == "affine_involution":
        return is_involution(s)
    return is_finite(s) and is_involution(s)


def enumerate_fc_elements(n: int, max_len: int, class_tag: str = "affine") -> CountTable:
    if n < 2:
        raise DomainError("enumeration needs n >= 2")
    if class_tag not in CLASS_TAGS:
        raise ValueError(f"unknown class {class_tag!r}; expected one of {CLASS_TAGS}")
    rows = {}
    for length, level in enumerate(fc_levels(n, max_len)):
        count = sum(1 for s in level if _keep(class_tag, s))
        if count:
            rows[length] = count
    return CountTable(n, class_tag, rows)


def _cyclic_size_sequences(n: int, max_size: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix, total):
        if len(prefix) == n:
            if abs(prefix[-1] - prefix[0]) <= 1:
                yield tuple(prefix)
            return
        last = prefix[-1]
        for c in (last - 1, last, last + 1):
            if c >= 0 and total + c <= max_size:
                prefix.append(c)
                yield from rec(prefix, total + c)
                prefix.pop()

    for c0 in range(max_size + 1):
        yield from rec([c0], c0)


def enumerate_diagrams(n: int, max_size: int) -> Iterator[AlternatingDiagram]:
    """Every valid diagram of rank ``n`` with at most ``max_size`` points."""
    for cols in _cyclic_size_sequences(n, max_size):
        needed = required_type_positions(cols)
        for labels in itertools.product("LR", repeat=len(needed)):
            try:
                yield validate(cols, dict(zip(needed, labels)), n)
            except DomainError:
                continue


def _loop_labels(variant: str, v: int) -> tuple[str, ...]:
    if variant == "G":
        return ("L", "R") if v > 0 else ("L",)
    if variant == "Gprime":
        return ("L", "R")
    if variant == "noloops":
        return ()
    return ("L",) if v == 0 else ()


def enumerate_walks(variant: str, length: int, max_area: int) -> Iterator[Walk]:
    """Closed walks with ``length`` steps and area at most ``max_area``.

    ``G`` has both loops at positive vertices and an L-loop at 0, ``Gprime``
    both loops everywhere, ``noloops`` no loops and ``loops_at_zero`` only
    the L-loop at 0.  For ``length == 0`` the empty walk at each vertex up to
    ``max_area`` is produced.
    """
    if variant not in WALK_VARIANTS:
        raise ValueError(f"unknown graph variant {variant!r}; expected one of {WALK_VARIANTS}")
    if length == 0:
        for v in range(max_area + 1):
            yield Walk(v)
        return

    def rec(start, v, steps, area):
        left = length - len(steps)
        if left == 0:
            if v == start:
                yield Walk(start, tuple(steps))
            return
        if abs(v - start) > left:
            return
        # the k-th remaining step leaves from a vertex >= v - k
        if area + sum(max(0, v - k) for k in range(left)) > max_area:
            return
        for label in _loop_labels(variant, v):
            steps.append(("loop", label))
            yield from rec(start, v, steps, area + v)
            steps.pop()
        steps.append(("up", None))
        yield from rec(start, v + 1, steps, area + v)
        steps.pop()
        if v > 0:
            steps.append(("down", None))
            yield from rec(start, v - 1, steps, area + v)
            steps.pop()

    for start in range(max_area + 1):
        yield from rec(start, start, [], 0)


def enumerate_ppp(max_width: int, max_area: int) -> Iterator[Ppp]:
    """PPPs of width ``<= max_width`` and area ``<= max_area``."""
    def rec(prefix, area):
        if prefix and prefix[0][0] <= prefix[-1][1]:
            yield Ppp(AltSequence(tuple(prefix)))
        if len(prefix) == max_width:
            return
        cap = prefix[-1][1] if prefix else max_area
        for a in range(1, cap + 1):
            for b in range(a, max_area - area + 1):
                prefix.append((a, b))
                yield from rec(prefix, area + b)
                prefix.pop()
    yield from rec([], 0)
