"""Affine permutations in window notation.

An affine permutation of size ``n`` is a bijection ``s`` of the integers with
``s(i + n) == s(i) + n`` whose window ``[s(1), ..., s(n)]`` sums to
``n (n + 1) / 2``.  Products follow function composition:
``compose(s, t)(i) == s(t(i))`` and a word ``[i1, ..., ik]`` stands for
``s_i1 o ... o s_ik``.

>>> s = from_window(4, [6, -3, -1, 8])
>>> inversion_number(s), is_321_avoiding(s)
(9, True)
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exceptions import NotBijective, SizeMismatch, WrongSum

__all__ = [
    "AffinePermutation", "from_window", "identity", "generator", "apply",
    "compose", "inverse", "inversion_number", "inversion_number_shi",
    "reduced_word", "word_to_permutation", "is_321_avoiding",
    "is_321_avoiding_scan", "is_321_avoiding_word", "alternates", "is_involution",
    "is_finite", "right_multiply", "parse_window",
]


@dataclass(frozen=True, order=True)
class AffinePermutation:
    n: int
    window: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return apply(self, i)

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.window) + "]"

    def to_dict(self) -> dict:
        return {"n": self.n, "window": list(self.window)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data) -> AffinePermutation:
        return from_window(data["n"], data["window"])


def from_window(n: int, values: Sequence[int]) -> AffinePermutation:
    values = tuple(int(v) for v in values)
    if n < 1 or len(values) != n:
        raise SizeMismatch(f"window of size {n} needs {n} values, got {len(values)}")
    if len({v % n for v in values}) != n:
        raise NotBijective(f"window {list(values)} has colliding residues mod {n}")
    if sum(values) != n * (n + 1) // 2:
        raise WrongSum(f"window {list(values)} sums to {sum(values)}, expected {n * (n + 1) // 2}")
    return AffinePermutation(n, values)


def parse_window(text: str) -> AffinePermutation:
    """Parse the text form ``"[a1,a2,...,an]"``; the size is the number of entries."""
    body = text.strip().replace("−", "-")
    if not re.fullmatch(r"\[\s*-?\d+(\s*,\s*-?\d+)*\s*\]", body):
        raise ValueError(f"not a window: {text!r}")
    values = [int(v) for v in body[1:-1].split(",")]
    return from_window(len(values), values)


def identity(n: int) -> AffinePermutation:
    return AffinePermutation(n, tuple(range(1, n + 1)))


def generator(n: int, i: int) -> AffinePermutation:
    """The simple reflection ``s_i``; ``s_0`` is ``[0, 2, ..., n-1, n+1]``."""
    if n < 2:
        raise SizeMismatch("generators need n >= 2")
    i %= n
    w = list(range(1, n + 1))
    if i == 0:
        w[0], w[-1] = 0, n + 1
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return AffinePermutation(n, tuple(w))


def apply(s: AffinePermutation, i: int) -> int:
    k, r = divmod(i - 1, s.n)
    return s.window[r] + k * s.n


def compose(s: AffinePermutation, t: AffinePermutation) -> AffinePermutation:
    if s.n != t.n:
        raise SizeMismatch(f"cannot compose sizes {s.n} and {t.n}")
    return AffinePermutation(s.n, tuple(apply(s, v) for v in t.window))


def inverse(s: AffinePermutation) -> AffinePermutation:
    n = s.n
    w = [0] * n
    for i, v in enumerate(s.window, start=1):
        k, r = divmod(v - 1, n)
        # s(i) = v  =>  s^-1(r + 1) = i - k n
        w[r] = i - k * n
    return AffinePermutation(n, tuple(w))


def right_multiply(s: AffinePermutation, i: int) -> AffinePermutation:
    """``s o s_i``: swap the values at positions i and i+1 (periodically)."""
    n = s.n
    i %= n
    w = list(s.window)
    if i == 0:
        # positions 0 and 1; s(0) = s(n) - n
        w[0], w[-1] = w[-1] - n, w[0] + n
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return AffinePermutation(n, tuple(w))


def _max_drop(s: AffinePermutation) -> int:
    # max_k (k - s(k)); s(j) >= j - this for every integer j
    return max(k - v for k, v in enumerate(s.window, start=1))


def _max_rise(s: AffinePermutation) -> int:
    # max_k (s(k) - k); s(j) <= j + this for every integer j
    return max(v - k for k, v in enumerate(s.window, start=1))


def inversion_number(s: AffinePermutation) -> int:
    """Count pairs ``(i, j)`` with ``1 <= i <= n``, ``j > i`` and ``s(i) > s(j)``.

    Since ``s(j) >= j - D`` with ``D = max_k (k - s(k))``, only ``j`` with
    ``j < s(i) + D`` can contribute, so the scan is finite.
    """
    drop = _max_drop(s)
    total = 0
    for i in range(1, s.n + 1):
        si = s.window[i - 1]
        for j in range(i + 1, si + drop):
            if apply(s, j) < si:
                total += 1
    return total


def inversion_number_shi(s: AffinePermutation) -> int:
    """Shi's closed formula ``sum_{1<=i<j<=n} |floor((s(j) - s(i)) / n)|``."""
    n, w = s.n, s.window
    return sum(abs((w[j] - w[i]) // n) for i in range(n) for j in range(i + 1, n))


def reduced_word(s: AffinePermutation) -> list[int]:
    """A reduced word for ``s`` found by peeling right descents.

    A right descent at ``i`` means ``s(i) > s(i+1)``; then ``s o s_i`` is one
    shorter.  The smallest descent position is always taken.
    """
    if s.n == 1:
        return []
    letters = []
    cur = s
    while True:
        w = cur.window
        n = cur.n
        for i in range(n):
            left = w[-1] - n if i == 0 else w[i - 1]
            if left > w[i]:
                break
        else:
            break
        letters.append(i)
        cur = right_multiply(cur, i)
    letters.reverse()
    return letters


def word_to_permutation(n: int, word: Iterable[int]) -> AffinePermutation:
    s = identity(n)
    for i in word:
        s = right_multiply(s, i)
    return s


def alternates(word: Sequence[int], n: int) -> bool:
    """True when, for every i, the letters i and i+1 (mod n) alternate in ``word``."""
    if n == 2:
        return all(a != b for a, b in zip(word, word[1:]))
    for i in range(n):
        pair = (i, (i + 1) % n)
        sub = [a for a in word if a in pair]
        if any(a == b for a, b in zip(sub, sub[1:])):
            return False
    return True


def is_321_avoiding_scan(s: AffinePermutation) -> bool:
    """Direct search for a 321 pattern with its middle entry in ``1..n``.

    For a pattern ``i < j < k`` with ``s(i) > s(j) > s(k)``: ``s(i) <= i + R``
    forces ``i >= s(j) + 1 - R`` and ``s(k) >= k - D`` forces
    ``k <= s(j) - 1 + D``, where ``R = max(s(k) - k)`` and ``D = max(k - s(k))``.
    """
    rise, drop = _max_rise(s), _max_drop(s)
    for j in range(1, s.n + 1):
        sj = s.window[j - 1]
        left = any(apply(s, i) > sj for i in range(sj + 1 - rise, j))
        if left and any(apply(s, k) < sj for k in range(j + 1, sj + drop)):
            return False
    return True


def is_321_avoiding_word(s: AffinePermutation) -> bool:
    """Alternation test on the greedy reduced word."""
    if s.n <= 2:
        return True
    return alternates(reduced_word(s), s.n)


def is_321_avoiding(s: AffinePermutation) -> bool:
    return is_321_avoiding_scan(s)


def is_involution(s: AffinePermutation) -> bool:
    return compose(s, s) == identity(s.n)


def is_finite(s: AffinePermutation) -> bool:
    return all(1 <= v <= s.n for v in s.window)
