"""Exact truncated power series in the three variables ``x``, ``y``, ``q``.

A :class:`TruncatedSeries` stores a sparse map from exponent triples
``(dx, dy, dq)`` to :class:`fractions.Fraction` coefficients together with
per-variable truncation bounds ``(X, Y, Q)``.  Every coefficient whose
exponents are all within the bounds is exact; anything above a bound has been
discarded.  Binary operations work on the componentwise minimum of the two
bounds, so exactness is preserved through ``+``, ``*`` and :meth:`recip`.

>>> T = (3, 0, 3)
>>> (1 - q(T)).recip()
TruncatedSeries({(0, 0, 0): 1, (0, 0, 1): 1, (0, 0, 2): 1, (0, 0, 3): 1}, trunc=(3, 0, 3))
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .exceptions import (
    DivergentInfiniteProduct,
    IncompatibleTruncation,
    NegativeExponent,
    NonUnitConstantTerm,
)

__all__ = [
    "TruncatedSeries", "VARIABLES", "Exponent", "Trunc",
    "one", "zero", "x", "y", "q", "monomial",
    "add", "mul", "recip", "derivative", "substitute_scale", "pochhammer",
]

Exponent = tuple[int, int, int]
Trunc = tuple[int, int, int]
Scalar = Union[int, Fraction]

VARIABLES = ("x", "y", "q")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}


def _var_index(var: str) -> int:
    try:
        return _INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; expected one of {VARIABLES}") from None


def _within(exp: Exponent, trunc: Trunc) -> bool:
    return exp[0] <= trunc[0] and exp[1] <= trunc[1] and exp[2] <= trunc[2]


class TruncatedSeries:
    """Immutable sparse truncated series with exact rational coefficients."""

    __slots__ = ("_terms", "_trunc", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None, trunc: Trunc = (0, 0, 0)):
        trunc = tuple(int(t) for t in trunc)
        if len(trunc) != 3 or min(trunc) < 0:
            raise ValueError(f"truncation bounds must be three nonnegative integers, got {trunc}")
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if min(exp) < 0:
                raise NegativeExponent(f"negative exponent {exp}")
            if c and _within(exp, trunc):
                clean[exp] = Fraction(c)
        self._terms = clean
        self._trunc = trunc
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def trunc(self) -> Trunc:
        return self._trunc

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """A copy of the coefficient map."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, x: int = 0, y: int = 0, q: int = 0) -> Fraction:
        exp = (x, y, q)
        if not _within(exp, self._trunc):
            raise IndexError(f"exponent {exp} lies above truncation {self._trunc}")
        return self._terms.get(exp, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0, 0), Fraction(0))

    def q_polynomial(self, x: int = 0, y: int = 0) -> dict[int, Fraction]:
        """Coefficients of ``x**x y**y`` as a map from q-degree to value."""
        return {e[2]: c for e, c in sorted(self._terms.items()) if e[0] == x and e[1] == y}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def is_nonnegative_integral(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self._terms.values())

    # -- truncation ------------------------------------------------------

    def restrict(self, trunc: Trunc) -> TruncatedSeries:
        """Drop everything above ``trunc``; bounds may only shrink."""
        if any(t > s for t, s in zip(trunc, self._trunc)):
            raise IncompatibleTruncation(f"cannot widen truncation {self._trunc} to {trunc}")
        return TruncatedSeries(self._terms, trunc)

    def _common(self, other: TruncatedSeries) -> Trunc:
        return tuple(min(a, b) for a, b in zip(self._trunc, other._trunc))

    def _coerce(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries({(0, 0, 0): other}, self._trunc)
        return NotImplemented

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = self._common(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, 0) + c
        return TruncatedSeries(out, trunc)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries({e: -c for e, c in self._terms.items()}, self._trunc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries({e: c * other for e, c in self._terms.items()}, self._trunc)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        X, Y, Q = trunc = self._common(other)
        left = [(e, c) for e, c in self._terms.items() if _within(e, trunc)]
        right = [(e, c) for e, c in other._terms.items() if _within(e, trunc)]
        out: dict[Exponent, Fraction] = {}
        for (a0, a1, a2), ca in left:
            for (b0, b1, b2), cb in right:
                d0, d1, d2 = a0 + b0, a1 + b1, a2 + b2
                if d0 > X or d1 > Y or d2 > Q:
                    continue
                key = (d0, d1, d2)
                out[key] = out.get(key, 0) + ca * cb
        return TruncatedSeries(out, trunc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncatedSeries:
        if k < 0:
            return self.recip() ** (-k)
        result = one(self._trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self * other.recip()

    def recip(self) -> TruncatedSeries:
        """Multiplicative inverse of a series with constant term 1.

        Coefficients are solved for one monomial at a time in lexicographic
        order of exponents, which refines the componentwise partial order, so
        every coefficient needed on the right-hand side is already known.
        """
        if self.constant_term() != 1:
            raise NonUnitConstantTerm(
                f"reciprocal needs constant term 1, got {self.constant_term()}")
        X, Y, Q = self._trunc
        support = [(e, c) for e, c in self._terms.items() if e != (0, 0, 0)]
        inv: dict[Exponent, Fraction] = {(0, 0, 0): Fraction(1)}
        for m in itertools.product(range(X + 1), range(Y + 1), range(Q + 1)):
            if m == (0, 0, 0):
                continue
            acc = Fraction(0)
            for (j0, j1, j2), c in support:
                if j0 <= m[0] and j1 <= m[1] and j2 <= m[2]:
                    b = inv.get((m[0] - j0, m[1] - j1, m[2] - j2))
                    if b:
                        acc += c * b
            if acc:
                inv[m] = -acc
        return TruncatedSeries(inv, self._trunc)

    # -- calculus and substitutions -------------------------------------

    def derivative(self, var: str) -> TruncatedSeries:
        """Formal partial derivative; the bound in ``var`` drops by one."""
        i = _var_index(var)
        if self._trunc[i] == 0:
            raise IncompatibleTruncation(
                f"cannot differentiate in {var} with truncation bound 0 in that variable")
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        trunc = list(self._trunc)
        trunc[i] -= 1
        return TruncatedSeries(out, tuple(trunc))

    def euler(self, var: str) -> TruncatedSeries:
        """``var * d/dvar`` without loss of truncation."""
        i = _var_index(var)
        return TruncatedSeries({e: c * e[i] for e, c in self._terms.items()}, self._trunc)

    def substitute_scale(self, var: str, power_of_q: int, *, into: str | None = None,
                         factor: Scalar = 1) -> TruncatedSeries:
        """Substitute ``var -> factor * target * q**power_of_q``.

        ``target`` is ``var`` itself, or the variable named by ``into`` (so
        ``substitute_scale("y", -1, into="x")`` is ``y -> x/q``).  A negative
        power shrinks the q-bound by ``|power_of_q|`` times the bound of
        ``var`` because those output coefficients depend on input terms that
        were never stored.
        """
        i = _var_index(var)
        j = i if into is None else _var_index(into)
        k = int(power_of_q)
        factor = Fraction(factor)
        trunc = list(self._trunc)
        if k < 0:
            trunc[2] -= -k * self._trunc[i]
            if trunc[2] < 0:
                raise IncompatibleTruncation(
                    f"q-bound {self._trunc[2]} too small for {var} -> q^{k} with bound {self._trunc[i]}")
        if j != i:
            trunc[j] = min(self._trunc[j], self._trunc[i])
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            f = list(e)
            f[2] += k * e[i]
            if f[2] < 0:
                raise NegativeExponent(
                    f"substituting {var} -> q^{k} sends {e} to negative q-degree {f[2]}")
            if j != i:
                f[i] = 0
                f[j] += e[i]
            key = tuple(f)
            out[key] = out.get(key, 0) + c * factor ** e[i]
        return TruncatedSeries(out, tuple(trunc))

    # -- comparison and display -----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._trunc == other._trunc and self._terms == other._terms

    def agrees_with(self, other: TruncatedSeries) -> bool:
        """Equality after truncating both sides to their common bounds."""
        trunc = self._common(other)
        return self.restrict(trunc) == other.restrict(trunc)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._trunc, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in sorted(self._terms.items()))
        return f"TruncatedSeries({{{body}}}, trunc={self._trunc})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items()):
            mono = "*".join(
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(VARIABLES, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "trunc": list(self._trunc),
            "terms": [
                {"x": e[0], "y": e[1], "q": e[2], "num": c.numerator, "den": c.denominator}
                for e, c in sorted(self._terms.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> TruncatedSeries:
        terms = {
            (t["x"], t["y"], t["q"]): Fraction(t["num"], t.get("den", 1))
            for t in data["terms"]
        }
        return cls(terms, tuple(data["trunc"]))

    @classmethod
    def from_json(cls, text: str) -> TruncatedSeries:
        return cls.from_dict(json.loads(text))


# -- constructors ---------------------------------------------------------

def zero(trunc: Trunc) -> TruncatedSeries:
    return TruncatedSeries({}, trunc)


def one(trunc: Trunc) -> TruncatedSeries:
    return TruncatedSeries({(0, 0, 0): 1}, trunc)


def monomial(coef: Scalar = 1, x: int = 0, y: int = 0, q: int = 0, *,
             trunc: Trunc) -> TruncatedSeries:
    return TruncatedSeries({(x, y, q): coef}, trunc)


def x(trunc: Trunc) -> TruncatedSeries:  # noqa: A001 - mirrors the variable name
    return monomial(1, x=1, trunc=trunc)


def y(trunc: Trunc) -> TruncatedSeries:
    return monomial(1, y=1, trunc=trunc)


def q(trunc: Trunc) -> TruncatedSeries:
    return monomial(1, q=1, trunc=trunc)


# -- functional spellings ---------------------------------------------------

def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def recip(a: TruncatedSeries) -> TruncatedSeries:
    return a.recip()


def derivative(a: TruncatedSeries, var: str) -> TruncatedSeries:
    return a.derivative(var)


def substitute_scale(a: TruncatedSeries, var: str, power_of_q: int, *,
                     into: str | None = None, factor: Scalar = 1) -> TruncatedSeries:
    return a.substitute_scale(var, power_of_q, into=into, factor=factor)


def pochhammer(argument: TruncatedSeries, n: int | None, trunc: Trunc | None = None) -> TruncatedSeries:
    """The q-Pochhammer symbol ``(argument; q)_n``; ``n=None`` means infinity.

    ``argument`` must be a single-term series ``c * x^a y^b q^d``.  The
    infinite product stops at the first factor whose correction term lies
    above the truncation bounds, since every later factor is then 1.
    """
    if len(argument) > 1:
        raise ValueError("pochhammer argument must be a monomial")
    trunc = argument.trunc if trunc is None else trunc
    result = one(trunc)
    if not argument:
        return result
    ((a, b, d), c), = argument.items()
    if n is None and (a, b, d) == (0, 0, 0):
        raise DivergentInfiniteProduct(
            "(c; q)_oo with a constant argument has no truncated expansion")
    k = 0
    while n is None or k < n:
        exp = (a, b, d + k)
        if not _within(exp, trunc):
            # later factors only raise the q-degree further
            break
        result = result * TruncatedSeries({(0, 0, 0): 1, exp: -c}, trunc)
        k += 1
    return result
