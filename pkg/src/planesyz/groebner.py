"""Buchberger's algorithm over Q in a handful of variables.

All public bases use graded reverse lexicographic order. Counting ideal
elements of bounded degree through leading monomials (``filtered_ideal_dim``)
is only valid because that order is degree compatible. The elimination order
used internally by :func:`colon_ideal` never leaks out of this module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .polyring import (
    ArityError,
    Monomial,
    Poly,
    grevlex_key,
    monomial_divides,
    monomial_lcm,
    monomials_up_to_degree,
)

OrderKey = Callable[[Monomial], tuple]
Terms = dict[Monomial, Fraction]

INFINITE = math.inf


def _elimination_key(m: Monomial) -> tuple:
    # last variable is the tag; it dominates, ties broken by grevlex on the rest
    return (m[-1], grevlex_key(m[:-1]))


ORDERS: dict[str, OrderKey] = {"grevlex": grevlex_key, "elim-last": _elimination_key}


def _lead(p: Terms, key: OrderKey) -> Monomial:
    return max(p, key=key)


def _sub_multiple(p: Terms, g: Terms, shift: Monomial, c: Fraction) -> None:
    """In place: p -= c * x^shift * g."""
    for m, v in g.items():
        k = tuple(a + b for a, b in zip(m, shift))
        w = p.get(k, 0) - c * v
        if w:
            p[k] = w
        else:
            p.pop(k, None)


def _reduce(p: Terms, basis: Sequence[tuple[Monomial, Terms]], key: OrderKey) -> Terms:
    """Full reduction of ``p`` by monic ``basis`` entries ``(lead, terms)``."""
    p = dict(p)
    rem: Terms = {}
    while p:
        m = _lead(p, key)
        c = p[m]
        for lm, g in basis:
            if monomial_divides(lm, m):
                _sub_multiple(p, g, tuple(a - b for a, b in zip(m, lm)), c)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _monic(p: Terms, key: OrderKey) -> tuple[Monomial, Terms]:
    lm = _lead(p, key)
    lc = p[lm]
    return lm, {m: v / lc for m, v in p.items()}


def _spoly(f: tuple[Monomial, Terms], g: tuple[Monomial, Terms]) -> Terms:
    (lf, tf), (lg, tg) = f, g
    lcm = monomial_lcm(lf, lg)
    out: Terms = {}
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    for m, v in tf.items():
        out[tuple(a + b for a, b in zip(m, sf))] = v
    _sub_multiple(out, tg, sg, Fraction(1))
    return out


def buchberger(gens: Sequence[Terms], nvars: int, key: OrderKey) -> list[tuple[Monomial, Terms]]:
    """Reduced monic Groebner basis, sorted by descending leading monomial."""
    G: list[tuple[Monomial, Terms]] = []
    for g in gens:
        if g:
            G.append(_monic(g, key))
    if not G:
        return []
    pairs = set(itertools.combinations(range(len(G)), 2))
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(monomial_lcm(G[ij[0]][0], G[ij[1]][0])), ij))
        pairs.discard((i, j))
        li, lj = G[i][0], G[j][0]
        lcm = monomial_lcm(li, lj)
        if all(a == b + c for a, b, c in zip(lcm, li, lj)):
            continue  # coprime leading monomials
        if _chain_criterion(i, j, lcm, G, pairs):
            continue
        r = _reduce(_spoly(G[i], G[j]), G, key)
        if r:
            G.append(_monic(r, key))
            n = len(G) - 1
            pairs.update((k, n) for k in range(n))
    return _interreduce(G, key)


def _chain_criterion(i: int, j: int, lcm: Monomial, G, pairs) -> bool:
    for k in range(len(G)):
        if k in (i, j):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        if monomial_divides(G[k][0], lcm):
            return True
    return False


def _interreduce(G: list[tuple[Monomial, Terms]], key: OrderKey) -> list[tuple[Monomial, Terms]]:
    G = sorted(G, key=lambda g: key(g[0]))
    minimal = []
    for idx, (lm, g) in enumerate(G):
        if any(monomial_divides(G[k][0], lm) and (G[k][0] != lm or k < idx)
               for k in range(len(G)) if k != idx):
            continue
        minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [h for k, h in enumerate(minimal) if k != idx]
        tail = dict(g)
        del tail[lm]
        tail = _reduce(tail, others, key)
        tail[lm] = Fraction(1)
        reduced.append((lm, tail))
    reduced.sort(key=lambda g: key(g[0]), reverse=True)
    return reduced


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[Poly, ...]
    ideal_arity: int
    order: str = "grevlex"

    @property
    def key(self) -> OrderKey:
        return ORDERS[self.order]

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [_lead(dict(g.terms()), self.key) for g in self.generators]

    def _basis(self) -> list[tuple[Monomial, Terms]]:
        return [(_lead(dict(g.terms()), self.key), dict(g.terms())) for g in self.generators]

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def normal_form(self, p: Poly) -> Poly:
        if p.nvars != self.ideal_arity:
            raise ArityError("polynomial and ideal live in different rings")
        return Poly._raw(_reduce(dict(p.terms()), self._basis(), self.key), p.nvars)

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    def __len__(self) -> int:
        return len(self.generators)


def groebner(gens: Sequence[Poly], order: str = "grevlex") -> GroebnerBasis:
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one generator to fix the ring")
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise ArityError("generators live in different rings")
    key = ORDERS[order]
    basis = buchberger([dict(g.terms()) for g in gens], nvars, key)
    return GroebnerBasis(tuple(Poly._raw(t, nvars) for _, t in basis), nvars, order)


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    return gb.normal_form(p)


def contains(gb: GroebnerBasis, p: Poly) -> bool:
    return gb.contains(p)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    basis = gb._basis()
    for f, g in itertools.combinations(basis, 2):
        if _reduce(_spoly(f, g), basis, gb.key):
            return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    basis = gb._basis()
    for idx, (lm, g) in enumerate(basis):
        if g[lm] != 1:
            return False
        for k, (lk, _) in enumerate(basis):
            if k != idx and any(monomial_divides(lk, m) for m in g):
                return False
    return True


# -- quotients -------------------------------------------------------------------

def _pure_power_bounds(gb: GroebnerBasis) -> list[int] | None:
    n = gb.ideal_arity
    bounds: list[int | None] = [None] * n
    for lm in gb.leading_monomials:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 0:
            return [0] * n
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or lm[i] < bounds[i]:
                bounds[i] = lm[i]
    if any(b is None for b in bounds):
        return None
    return bounds  # type: ignore[return-value]


def standard_monomials(gb: GroebnerBasis) -> list[Monomial] | None:
    """Monomials outside the leading-term ideal, or None when there are infinitely many."""
    bounds = _pure_power_bounds(gb)
    if bounds is None:
        return None
    lms = gb.leading_monomials
    out = [m for m in itertools.product(*(range(b) for b in bounds))
           if not any(monomial_divides(lm, m) for lm in lms)]
    out.sort(key=grevlex_key, reverse=True)
    return out


def quotient_dimension(gb: GroebnerBasis) -> int | float:
    """dim_Q of the quotient ring; ``INFINITE`` for positive-dimensional ideals."""
    std = standard_monomials(gb)
    return INFINITE if std is None else len(std)


def filtered_ideal_dim(gb: GroebnerBasis, s: int) -> int:
    """dim_Q (I ∩ polynomials of degree <= s), read off the leading monomials."""
    if gb.order != "grevlex":
        raise ValueError("filtered counting needs a degree-compatible order")
    lms = gb.leading_monomials
    return sum(1 for m in monomials_up_to_degree(s, gb.ideal_arity)
               if any(monomial_divides(lm, m) for lm in lms))


def graded_ideal_dim(gb: GroebnerBasis, k: int) -> int:
    """dim_Q of the degree-k part of a homogeneous ideal."""
    if k < 0:
        return 0
    return filtered_ideal_dim(gb, k) - (filtered_ideal_dim(gb, k - 1) if k else 0)


def _with_tag(p: Poly, tag_exp: int = 0) -> Terms:
    return {m + (tag_exp,): c for m, c in p.terms()}


def colon_ideal(I: GroebnerBasis, h: Poly) -> GroebnerBasis:
    """Groebner basis of ``I : (h)`` through ``I ∩ (h)`` computed with a tag variable."""
    if h.is_zero():
        raise ValueError("colon by the zero polynomial is undefined")
    if h.nvars != I.ideal_arity:
        raise ArityError("polynomial and ideal live in different rings")
    n = I.ideal_arity
    if I.is_zero():
        return I
    gens: list[Terms] = []
    for g in I.generators:
        gens.append(_with_tag(g, 1))  # t * g
    one_minus_t: Terms = dict(_with_tag(h, 0))
    for m, c in h.terms():
        one_minus_t[m + (1,)] = one_minus_t.get(m + (1,), 0) - c  # (1 - t) * h
    gens.append(one_minus_t)
    basis = buchberger(gens, n + 1, _elimination_key)
    quotients = []
    for lm, g in basis:
        if lm[-1] == 0:  # elimination order: tag-free lead means tag-free element
            p = Poly._raw({m[:-1]: c for m, c in g.items()}, n)
            quotients.append(p.exquo(h))
    return groebner(quotients)
