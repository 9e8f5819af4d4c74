"""Named q-series and the closed-form right-hand sides of the counting theorems.

All constructors take a truncation ``trunc = (X, Y, Q)`` and return a
:class:`~affine_heaps.series.TruncatedSeries` exact up to those bounds.
Logarithmic derivatives ``-x F'/F`` are formed with the Euler operator
``x d/dx`` so that no x-degree is lost.

The finite-permutation series ``S`` is indexed with a shift: the coefficient
of ``x**k`` counts 321-avoiding permutations of ``k + 1`` letters, whereas in
``Stilde`` the coefficient of ``x**n`` counts affine permutations of size
``n``.  The same shift applies to ``invS`` / ``invStilde``.
"""

from __future__ import annotations

from math import comb
from typing import Callable

from .series import Trunc, TruncatedSeries, monomial, one, pochhammer, zero

__all__ = [
    "series_J", "series_cal_J", "series_h", "series_j", "series_frak_h",
    "series_N", "series_Nhat", "theorem_S", "theorem_S_tilde",
    "theorem_involutions", "walk_series_O", "walk_series_Ostar",
    "walk_series_Obar", "walk_series_Obarstar", "rectangular_correction",
    "log_derivative", "NAMED_SERIES", "named_series",
]


def _qpoch(x_deg: int, y_deg: int, q_deg: int, n: int | None, trunc: Trunc,
           coef: int = 1) -> TruncatedSeries:
    return pochhammer(monomial(coef, x_deg, y_deg, q_deg, trunc=trunc), n, trunc)


def _partial_sum(term: Callable[[int], TruncatedSeries | None], lead: Callable[[int], tuple],
                 trunc: Trunc) -> TruncatedSeries:
    """Sum ``term(n)`` for n = 0, 1, ... until the leading monomial leaves the box.

    ``lead(n)`` is the exponent of the lowest monomial of the n-th term; it
    must be componentwise nondecreasing in n, which the guard below checks.
    """
    total = zero(trunc)
    previous = None
    n = 0
    while True:
        exp = lead(n)
        if previous is not None and any(a < b for a, b in zip(exp, previous)):
            raise AssertionError(f"leading exponent not monotone at n={n}: {previous} -> {exp}")
        if any(e > t for e, t in zip(exp, trunc)):
            return total
        total = total + term(n)
        previous = exp
        n += 1


def series_J(trunc: Trunc) -> TruncatedSeries:
    """``J(x) = sum (-x)^n q^C(n,2) / ((q;q)_n (xq;q)_n)``."""
    def term(n):
        den = _qpoch(0, 0, 1, n, trunc) * _qpoch(1, 0, 1, n, trunc)
        return monomial((-1) ** n, n, 0, comb(n, 2), trunc=trunc) * den.recip()
    return _partial_sum(term, lambda n: (n, 0, comb(n, 2)), trunc)


def series_cal_J(trunc: Trunc) -> TruncatedSeries:
    """``sum (-1)^ceil(n/2) x^n q^C(n,2) / (q^2;q^2)_floor(n/2)``."""
    def term(n):
        den = _q2poch(n // 2, trunc)
        return monomial((-1) ** ((n + 1) // 2), n, 0, comb(n, 2), trunc=trunc) * den.recip()
    return _partial_sum(term, lambda n: (n, 0, comb(n, 2)), trunc)


def _q2poch(n: int, trunc: Trunc) -> TruncatedSeries:
    # (q^2; q^2)_n
    out = one(trunc)
    for k in range(1, n + 1):
        out = out * (1 - monomial(1, 0, 0, 2 * k, trunc=trunc))
    return out


def series_h(trunc: Trunc) -> TruncatedSeries:
    """``h(x) = sum (-x)^n q^C(n,2) (x q^n; q)_oo / (q;q)_n``."""
    def term(n):
        num = _qpoch(1, 0, n, None, trunc)
        return monomial((-1) ** n, n, 0, comb(n, 2), trunc=trunc) * num * _qpoch(0, 0, 1, n, trunc).recip()
    return _partial_sum(term, lambda n: (n, 0, comb(n, 2)), trunc)


def series_j(trunc: Trunc) -> TruncatedSeries:
    """``j(x) = sum (-x)^n q^C(n,2) (x q^(n+1); q)_oo / (q;q)_n``."""
    def term(n):
        num = _qpoch(1, 0, n + 1, None, trunc)
        return monomial((-1) ** n, n, 0, comb(n, 2), trunc=trunc) * num * _qpoch(0, 0, 1, n, trunc).recip()
    return _partial_sum(term, lambda n: (n, 0, comb(n, 2)), trunc)


def series_frak_h(trunc: Trunc) -> TruncatedSeries:
    """Signed series of trivial heaps of dimers: ``sum (-1)^n x^2n q^C(2n,2) / (q^2;q^2)_n``."""
    def term(n):
        return monomial((-1) ** n, 2 * n, 0, comb(2 * n, 2), trunc=trunc) * _q2poch(n, trunc).recip()
    return _partial_sum(term, lambda n: (2 * n, 0, comb(2 * n, 2)), trunc)


def series_N(trunc: Trunc) -> TruncatedSeries:
    """``N(x,y,q) = sum (-y)^n q^C(n+1,2) / ((q;q)_n (xq;q)_n)``."""
    def term(n):
        den = _qpoch(0, 0, 1, n, trunc) * _qpoch(1, 0, 1, n, trunc)
        return monomial((-1) ** n, 0, n, comb(n + 1, 2), trunc=trunc) * den.recip()
    return _partial_sum(term, lambda n: (0, n, comb(n + 1, 2)), trunc)


def series_Nhat(trunc: Trunc) -> TruncatedSeries:
    """``sum_{n>=1} (-y)^n q^C(n+1,2) / ((q;q)_(n-1) (xq;q)_n)``.

    This is the signed series of trivial heaps of segments that *contain* a
    segment starting at 1 (it has no constant term).
    """
    def term(n):
        if n == 0:
            return zero(trunc)
        den = _qpoch(0, 0, 1, n - 1, trunc) * _qpoch(1, 0, 1, n, trunc)
        return monomial((-1) ** n, 0, n, comb(n + 1, 2), trunc=trunc) * den.recip()
    return _partial_sum(term, lambda n: (0, n, comb(n + 1, 2)), trunc)


def log_derivative(f: TruncatedSeries, var: str = "x") -> TruncatedSeries:
    """``-var * d f/d var / f`` for a series with constant term 1."""
    return -(f.euler(var) * f.recip())


def rectangular_correction(trunc: Trunc) -> TruncatedSeries:
    """``sum_{n>=1} x^n q^n / (1 - q^n)`` expanded as ``sum_{n,k>=1} x^n q^(nk)``."""
    X, _, Q = trunc
    terms = {}
    for n in range(1, X + 1):
        for k in range(1, Q // n + 1):
            terms[(n, 0, n * k)] = 1
    return TruncatedSeries(terms, trunc)


def _x_to_xq(f: TruncatedSeries, sign: int = 1) -> TruncatedSeries:
    return f.substitute_scale("x", 1, factor=sign)


def theorem_S(trunc: Trunc) -> TruncatedSeries:
    """``J(xq) / ((1 - xq) J(x))``; ``[x^k]`` counts 321-avoiding permutations of k+1 letters."""
    J = series_J(trunc)
    return _x_to_xq(J) * J.recip() * (1 - monomial(1, 1, 0, 1, trunc=trunc)).recip()


def theorem_S_tilde(trunc: Trunc) -> TruncatedSeries:
    """``-x J'(x)/J(x) - sum x^n q^n/(1-q^n)``; ``[x^n]`` counts affine 321-avoiding permutations."""
    return log_derivative(series_J(trunc)) - rectangular_correction(trunc)


def theorem_involutions(trunc: Trunc) -> tuple[TruncatedSeries, TruncatedSeries]:
    """The pair ``(calJ(-xq)/calJ(x), -x calJ'(x)/calJ(x))``."""
    cj = series_cal_J(trunc)
    return _x_to_xq(cj, -1) * cj.recip(), log_derivative(cj)


def walk_series_O(trunc: Trunc) -> TruncatedSeries:
    """Closed walks on the graph with both loops at every vertex: ``-x h'/h``."""
    return log_derivative(series_h(trunc))


def walk_series_Ostar(trunc: Trunc) -> TruncatedSeries:
    """Closed walks with only an L-loop at vertex 0: ``-x j'/j``."""
    return log_derivative(series_j(trunc))


def walk_series_Obar(trunc: Trunc) -> TruncatedSeries:
    """Closed walks without loops: ``-x frak_h'/frak_h``."""
    return log_derivative(series_frak_h(trunc))


def walk_series_Obarstar(trunc: Trunc) -> TruncatedSeries:
    """Closed walks whose loops all sit at vertex 0: ``-x calJ'/calJ``."""
    return log_derivative(series_cal_J(trunc))


NAMED_SERIES: dict[str, Callable[[Trunc], TruncatedSeries]] = {
    "J": series_J,
    "calJ": series_cal_J,
    "h": series_h,
    "j": series_j,
    "frakh": series_frak_h,
    "N": series_N,
    "Nhat": series_Nhat,
    "S": theorem_S,
    "Stilde": theorem_S_tilde,
    "invS": lambda t: theorem_involutions(t)[0],
    "invStilde": lambda t: theorem_involutions(t)[1],
    "O": walk_series_O,
    "Ostar": walk_series_Ostar,
    "Obar": walk_series_Obar,
    "Obarstar": walk_series_Obarstar,
}


def named_series(name: str, trunc: Trunc) -> TruncatedSeries:
    try:
        build = NAMED_SERIES[name]
    except KeyError:
        raise KeyError(f"unknown series {name!r}; known: {', '.join(NAMED_SERIES)}") from None
    return build(trunc)
