"""Verification suites: every closed form checked against brute force.

Each suite returns a list of :class:`Check` records.  Scale parameters are
keyword arguments with the acceptance defaults.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Callable

from . import qformulas as qf
from .diagrams import AlternatingDiagram, delta, delta_inverse, is_finite, is_self_dual, validate
from .exceptions import RectangularPpp
from .heaps import (
    FiniteDigraph,
    Path,
    Piece,
    enumerate_heaps,
    heap_exponent,
    inversion_lemma_lhs,
    inversion_lemma_rhs,
    psi_cycles,
    psi_cycles_inverse,
    pyramid_series_lhs,
    pyramid_series_rhs,
    segment_weight,
)
from .monodimer import (
    G,
    md_universe,
    md_weight,
    phi,
    phi_inverse,
    signed_trivial_sum,
    upsilon,
    upsilon_inverse,
)
from .oracle import enumerate_diagrams, enumerate_fc_elements, enumerate_ppp, enumerate_walks, fc_levels
from .permutations import from_window, inversion_number, is_involution
from .permutations import is_finite as perm_is_finite
from .ppp import (
    MarkedPpp,
    Ppp,
    classify_W,
    diagram_to_marked_ppp,
    f_inverse,
    f_to_heap,
    in_H_tilde,
    iter_sequences,
    marked_ppp_to_diagram,
    psi0,
    psi1,
    rightmost_maximal,
    semi_pyramid,
    statistics,
)
from .series import TruncatedSeries, monomial, pochhammer

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{status} {self.suite}: {self.name}{tail}"


def _first_diff(a: TruncatedSeries, b: TruncatedSeries) -> str:
    keys = sorted(set(a.terms) | set(b.terms))
    for k in keys:
        if a.terms.get(k, 0) != b.terms.get(k, 0):
            return f"first difference at x^{k[0]} y^{k[1]} q^{k[2]}: {a.terms.get(k, 0)} vs {b.terms.get(k, 0)}"
    return ""


def _series_check(suite: str, name: str, lhs: TruncatedSeries, rhs: TruncatedSeries) -> Check:
    ok = lhs == rhs
    return Check(suite, name, ok, "" if ok else _first_diff(lhs, rhs))


# 1, 2, 3


def thm_main(n_max: int = 6, len_max: int = 12) -> list[Check]:
    trunc = (n_max, 0, len_max)
    st = qf.theorem_S_tilde(trunc)
    s = qf.theorem_S(trunc)
    out = []
    for n in range(2, n_max + 1):
        aff = enumerate_fc_elements(n, len_max, "affine").rows
        fin = enumerate_fc_elements(n, len_max, "finite").rows
        bad = [(l, aff.get(l, 0), st.coefficient(n, 0, l)) for l in range(len_max + 1)
               if aff.get(l, 0) != st.coefficient(n, 0, l)]
        bad += [(l, fin.get(l, 0), s.coefficient(n - 1, 0, l)) for l in range(len_max + 1)
                if fin.get(l, 0) != s.coefficient(n - 1, 0, l)]
        out.append(Check("thm-main", f"n={n}", not bad, f"length, oracle, formula: {bad[0]}" if bad else ""))
    return out


def thm_involutions(n_max: int = 6, len_max: int = 12) -> list[Check]:
    trunc = (n_max, 0, len_max)
    inv_s, inv_st = qf.theorem_involutions(trunc)
    out = []
    for n in range(2, n_max + 1):
        aff = enumerate_fc_elements(n, len_max, "affine_involution").rows
        fin = enumerate_fc_elements(n, len_max, "finite_involution").rows
        bad = [(l, aff.get(l, 0), inv_st.coefficient(n, 0, l)) for l in range(len_max + 1)
               if aff.get(l, 0) != inv_st.coefficient(n, 0, l)]
        bad += [(l, fin.get(l, 0), inv_s.coefficient(n - 1, 0, l)) for l in range(len_max + 1)
                if fin.get(l, 0) != inv_s.coefficient(n - 1, 0, l)]
        out.append(Check("thm-involutions", f"n={n}", not bad, f"length, oracle, formula: {bad[0]}" if bad else ""))
    return out


def catalan(n_max: int = 6) -> list[Check]:
    out = []
    for n in range(2, n_max + 1):
        total = enumerate_fc_elements(n, comb(n, 2), "finite").total()
        expected = comb(2 * n, n) // (n + 1)
        out.append(Check("catalan", f"n={n}", total == expected, f"{total} vs {expected}"))
    return out


# 4


def _random_segment_universe(rng: random.Random, size: int, width: int) -> list[Piece]:
    all_segments = [Piece(a, b) for b in range(1, width + 1) for a in range(1, b + 1)]
    return sorted(rng.sample(all_segments, size))


def inversion_lemma(max_site: int = 5, q_max: int = 10, x_max: int = 6, seed: int = 20240601) -> list[Check]:
    out = []
    universe = [p for p in md_universe("md_star", max_site) if p.b <= max_site]
    trunc = (x_max, 0, q_max)
    subsets = {
        "M={[0]L,[0,1]}": [Piece(0, 0, "L"), Piece(0, 1)],
        "M=all": universe,
        "M=empty": [],
        "M=L-monomers": [p for p in universe if p.label == "L"],
    }
    for name, m in subsets.items():
        out.append(_series_check("inversion-lemma", f"monomer/dimer {name}",
                                 inversion_lemma_lhs(universe, m, md_weight, trunc),
                                 inversion_lemma_rhs(universe, m, md_weight, trunc)))
    out.append(_series_check("inversion-lemma", "monomer/dimer pyramids",
                             pyramid_series_lhs(universe, md_weight, trunc),
                             pyramid_series_rhs(universe, md_weight, trunc)))
    rng = random.Random(seed)
    strunc = (4, 4, 10)
    for k in range(3):
        uni = _random_segment_universe(rng, 6, 5)
        m = rng.sample(uni, 3)
        label = "segments " + " ".join(str(p) for p in uni)
        out.append(_series_check("inversion-lemma", f"{label} M={' '.join(str(p) for p in sorted(m))}",
                                 inversion_lemma_lhs(uni, m, segment_weight, strunc),
                                 inversion_lemma_rhs(uni, m, segment_weight, strunc)))
        out.append(_series_check("inversion-lemma", f"{label} pyramids",
                                 pyramid_series_lhs(uni, segment_weight, strunc),
                                 pyramid_series_rhs(uni, segment_weight, strunc)))
    return out


# 5


def trivial_series(q_max: int = 12, x_max: int = 12) -> list[Check]:
    trunc = (x_max, 0, q_max)
    pairs = [("md", qf.series_h), ("md_star", qf.series_j),
             ("dimers_only", qf.series_frak_h), ("L_at_zero_only", qf.series_cal_J)]
    return [_series_check("trivial-series", f"{model} = {f.__name__}", signed_trivial_sum(model, trunc), f(trunc))
            for model, f in pairs]


# 6


WORKED_WINDOW = (8, (-6, 13, -4, -1, 0, 14, 19, 1))
PSI_GRAPH = FiniteDigraph.from_edges([
    ("A", "B"), ("B", "F"), ("F", "C"), ("C", "G"), ("G", "B"),
    ("F", "A"), ("B", "C"), ("C", "E"), ("E", "D"), ("D", "C"),
])
PSI_PATH = "ABFCGBFABCEDCE"
WORKED_PPP = ((5, 7), (7, 7), (2, 4), (1, 2), (2, 6))


def _x12q17_diagram() -> AlternatingDiagram:
    # a rank-12 diagram with 17 points, chains of every kind present
    return validate((1, 2, 2, 3, 2, 1, 1, 1, 1, 1, 1, 1), {1: "R", 5: "L", 6: "R", 7: "L", 8: "R", 9: "L", 10: "R", 11: "L"}, 12)


def _check(suite, name, cond, detail=""):
    return Check(suite, name, bool(cond), "" if cond else detail)


def bijection_round_trips(n_max: int = 5, size_max: int = 8, walk_len: int = 8, walk_area: int = 12,
                          heap_pieces: int = 4, heap_coord: int = 5) -> list[Check]:
    S = "bijection-round-trips"
    out = []
    # worked instances
    s = from_window(*WORKED_WINDOW)
    d = delta(s)
    out.append(_check(S, "31-element diagram", d.size == 31 and inversion_number(s) == 31
                      and delta_inverse(d) == s and delta_inverse(d, "level") == s, str(d)))
    dd = _x12q17_diagram()
    mp = upsilon(dd)
    out.append(_check(S, "weight x^12 q^17", mp.exponent() == (12, 0, 17) and phi(dd).area() == 17
                      and upsilon_inverse(mp) == dd, str(mp.exponent())))
    p = Ppp.of(WORKED_PPP)
    h = f_to_heap(p.seq)
    out.append(_check(S, "PPP width 5 height 9 area 26",
                      statistics(p) == (5, 9, 26) and in_H_tilde(h) and f_inverse(h) == p.seq
                      and heap_exponent(h, segment_weight) == (9, 5, 26), str(statistics(p))))
    eta, heap = psi_cycles(PSI_GRAPH, Path.from_vertices(PSI_PATH))
    cycles = sorted(str(c) for c in heap.pieces())
    out.append(_check(S, "psi example path", str(eta) == "ABCE" and cycles == ["(ABF)", "(BFCG)", "(CED)"]
                      and str(psi_cycles_inverse(PSI_GRAPH, eta, heap)) == PSI_PATH, f"{eta} {cycles}"))

    # delta, phi, upsilon against the oracles
    for n in range(2, n_max + 1):
        levels = fc_levels(n, size_max)
        diagrams = sorted(enumerate_diagrams(n, size_max))
        bad = []
        images = set()
        for length, level in enumerate(levels):
            for w in level:
                dw = delta(w)
                images.add(dw)
                if (dw.size != length or delta_inverse(dw) != w or delta_inverse(dw, "level") != w
                        or is_finite(dw) != perm_is_finite(w) or is_self_dual(dw) != is_involution(w)):
                    bad.append(str(w))
        out.append(_check(S, f"delta n={n}", not bad and images == set(diagrams), f"{bad[:1]} {len(images)} vs {len(diagrams)}"))
        bad = []
        for dg in diagrams:
            w = phi(dg)
            mpy = upsilon(dg)
            if (phi_inverse(w) != dg or w.area() != dg.size or (w.start == 0) != is_finite(dg)
                    or is_self_dual(dg) != all(v == 0 for v, (k, _) in zip(w.vertices(), w.steps) if k == "loop")
                    or mpy.exponent() != (n, 0, dg.size) or upsilon_inverse(mpy) != dg):
                bad.append(dg.to_json())
        out.append(_check(S, f"phi and upsilon n={n}", not bad, bad[0] if bad else ""))

    # psi on closed walks of the half-line graph
    bad = []
    count = 0
    for length in range(walk_len + 1):
        for w in enumerate_walks("G", length, walk_area):
            if length == 0 and w.start > 0:
                continue
            count += 1
            path = w.to_path()
            eta, heap = psi_cycles(G, path)
            weight = heap_exponent(heap, lambda c: (len(c.edges), 0, sum(e.src for e in c.edges)))
            tops = heap.maxima()
            ok = (psi_cycles_inverse(G, eta, heap) == path and not eta.edges
                  and weight == (length, 0, w.area())
                  and (length == 0 or (len(tops) == 1 and w.start in tops[0].vertices)))
            if not ok:
                bad.append(w.to_json())
    out.append(_check(S, f"psi on {count} closed walks", not bad, bad[0] if bad else ""))

    # f on small heaps
    uni = [Piece(a, b) for b in range(1, heap_coord + 1) for a in range(1, b + 1)]
    bad = []
    count = 0
    for hp, _ in enumerate_heaps(uni, lambda p: (0, 1, 0), (0, heap_pieces, 0)):
        count += 1
        seq = f_inverse(hp)
        if f_to_heap(seq) != hp or in_H_tilde(hp) != (len(seq) == 0 or seq.wraps()):
            bad.append(str(hp))
    out.append(_check(S, f"f on {count} heaps", not bad, bad[0] if bad else ""))
    bad = [str(sq.pairs) for sq in iter_sequences(heap_pieces, heap_coord) if f_inverse(f_to_heap(sq)) != sq]
    out.append(_check(S, "f on sequences", not bad, bad[0] if bad else ""))

    # marked PPPs against diagrams
    for n in range(1, n_max + 1):
        images = set()
        bad = []
        for pp in enumerate_ppp(n, n + size_max):
            m = len(pp.pairs)
            if pp.half_perimeter != n or statistics(pp)[2] - m > size_max:
                continue
            a1, b1 = pp.pairs[0]
            for j in range(a1, b1 + 1):
                mpp = MarkedPpp(pp, j)
                try:
                    dg = marked_ppp_to_diagram(mpp)
                except RectangularPpp:
                    continue
                if dg in images or dg.size != statistics(pp)[2] - m or diagram_to_marked_ppp(dg) != mpp:
                    bad.append(mpp.to_json())
                images.add(dg)
        expected = set(enumerate_diagrams(n, size_max))
        out.append(_check(S, f"marked PPP n={n}", not bad and images == expected,
                          f"{bad[:1]} {len(images)} vs {len(expected)}"))
    return out


# 7


def _segment_universe(q_max: int) -> list[Piece]:
    return [Piece(a, b) for b in range(1, q_max + 1) for a in range(1, b + 1)]


def ppp_series(x_max: int = 5, y_max: int = 5, q_max: int = 12) -> list[Check]:
    S = "ppp-series"
    trunc = (x_max, y_max, q_max)
    tilde: dict = {}
    marked: dict = {}
    semi: dict = {}
    for h, e in enumerate_heaps(_segment_universe(q_max), segment_weight, trunc):
        if not len(h):
            continue
        if in_H_tilde(h):
            tilde[e] = tilde.get(e, 0) + 1
            top = rightmost_maximal(h)
            marked[e] = marked.get(e, 0) + top.length
        if semi_pyramid(h):
            semi[e] = semi.get(e, 0) + 1
    N = qf.series_N(trunc)
    Nhat = qf.series_Nhat(trunc)
    xs = monomial(1, 1, 0, 0, trunc=trunc)
    out = [
        _series_check(S, "H-tilde = -y dN/dy / N", TruncatedSeries(tilde, trunc), qf.log_derivative(N, "y")),
        _series_check(S, "marked = -x dN/dx / N", TruncatedSeries(marked, trunc), qf.log_derivative(N, "x")),
        _series_check(S, "x * semi-pyramids = -x Nhat / N",
                      xs * TruncatedSeries(semi, trunc), -(xs * Nhat * N.recip())),
    ]
    # the same H-tilde sum from the PPP side
    tally: dict = {}
    for p in enumerate_ppp(y_max, q_max):
        w, hgt, area = statistics(p)
        if hgt <= x_max:
            tally[(hgt, w, area)] = tally.get((hgt, w, area), 0) + 1
    out.append(_series_check(S, "PPP tally = H-tilde sum", TruncatedSeries(tally, trunc), TruncatedSeries(tilde, trunc)))
    return out


# 8


def cancellation(x_max: int = 6, y_max: int = 4, q_max: int = 10) -> list[Check]:
    S = "cancellation"
    trunc = (x_max, y_max, q_max)
    total: dict = {}
    w0 = w1 = 0
    bad = []
    for h, e in enumerate_heaps(_segment_universe(q_max), segment_weight, trunc):
        if len(h.layers) <= 1:
            continue
        c = classify_W(h)
        if not c.in_W:
            continue
        total[e] = total.get(e, 0) + (-1) ** len(c.u1)
        if c.kind == "type0":
            w0 += 1
            g = psi0(h)
            back = psi1(g) if classify_W(g).kind == "type1" else None
        else:
            w1 += 1
            g = psi1(h)
            back = psi0(g) if classify_W(g).kind == "type0" else None
        if back != h or heap_exponent(g, segment_weight) != e or len(g.minima()) != len(h.minima()):
            bad.append(str(h))
    residue = TruncatedSeries(total, trunc)
    return [
        Check(S, "signed sum over W vanishes", not residue, str(residue)),
        Check(S, f"psi0/psi1 pair W0 ({w0}) with W1 ({w1})", not bad and w0 == w1, bad[0] if bad else ""),
    ]


# 9


def identities(x_max: int = 6, q_max: int = 14) -> list[Check]:
    S = "identities"
    t = (x_max, 0, q_max)
    J, j, h = qf.series_J(t), qf.series_j(t), qf.series_h(t)
    cj, fh = qf.series_cal_J(t), qf.series_frak_h(t)
    xs = monomial(1, 1, 0, 0, trunc=t)
    xq = monomial(1, 1, 0, 1, trunc=t)
    shift = lambda f, sign=1: f.substitute_scale("x", 1, factor=sign)  # noqa: E731
    big = (x_max, x_max, q_max + x_max)
    N = qf.series_N(big).substitute_scale("y", -1, into="x")
    Nhat = qf.series_Nhat(big).substitute_scale("y", -1, into="x")
    t2 = N.trunc
    J2 = qf.series_J(t2)
    return [
        _series_check(S, "j = h + x h(xq)", j, h + xs * shift(h)),
        _series_check(S, "J (xq;q)_oo = j", J * pochhammer(xq, None, t), j),
        _series_check(S, "N(x,x/q,q) = J", N, J2),
        _series_check(S, "Nhat(x,x/q,q) = -x J(xq)/(1-xq)", Nhat,
                      -(monomial(1, 1, 0, 0, trunc=t2) * shift(J2) * (1 - monomial(1, 1, 0, 1, trunc=t2)).recip())),
        _series_check(S, "calJ = frakh - x frakh(xq)", cj, fh - xs * shift(fh)),
        _series_check(S, "calJ - frakh(xq) = -x calJ(-xq)", cj - shift(fh), -(xs * shift(cj, -1))),
    ]


# 10


def walk_series(len_max: int = 10, area_max: int = 12) -> list[Check]:
    S = "walk-series"
    trunc = (len_max, 0, area_max)
    pairs = [("G", qf.walk_series_Ostar, "-x j'/j"), ("Gprime", qf.walk_series_O, "-x h'/h"),
             ("loops_at_zero", qf.walk_series_Obarstar, "-x calJ'/calJ"),
             ("noloops", qf.walk_series_Obar, "-x frakh'/frakh")]
    out = []
    for variant, f, label in pairs:
        tally: dict = {}
        for length in range(1, len_max + 1):
            for w in enumerate_walks(variant, length, area_max):
                key = (length, 0, w.area())
                tally[key] = tally.get(key, 0) + 1
        out.append(_series_check(S, f"{variant} = {label}", TruncatedSeries(tally, trunc), f(trunc)))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "thm-main": thm_main,
    "thm-involutions": thm_involutions,
    "catalan": catalan,
    "inversion-lemma": inversion_lemma,
    "trivial-series": trivial_series,
    "bijection-round-trips": bijection_round_trips,
    "ppp-series": ppp_series,
    "cancellation": cancellation,
    "identities": identities,
    "walk-series": walk_series,
}


def run_suite(name: str, **scale) -> list[Check]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    return suite(**scale)
