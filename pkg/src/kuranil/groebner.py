"""Buchberger-based ideal arithmetic over exact rationals.

Certifies that computed obstruction ideals equal published intersections of
components: reduced Gröbner bases give canonical forms for ideal equality, and
intersections are computed by the standard one-variable elimination trick.

The pair-selection strategy is fixed so results are byte-for-byte reproducible:
pairs are processed in ascending (lcm total degree, i, j) order, with the
coprime-leading-monomial and chain criteria applied at selection time.
Intermediate polynomials are rescaled to integer-primitive form with positive
leading coefficient to control coefficient growth.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import (
    GREVLEX,
    LEX,
    UVAR,
    MonomialOrder,
    Polynomial,
    mono_coprime,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    parse_polynomial,
)


class GroebnerTimeout(RuntimeError):
    """Cooperative deadline exceeded during a Gröbner basis computation."""


class OrderMismatch(ValueError):
    """Operands carry different monomial orders."""


class GroebnerBasis:
    """A reduced Gröbner basis: normalized, pairwise fully reduced, sorted ascending."""

    __slots__ = ("order", "polys")

    def __init__(self, order: MonomialOrder, polys: Sequence[Polynomial]):
        self.order = order
        self.polys = tuple(polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.order == other.order and self.polys == other.polys

    def __hash__(self) -> int:
        return hash((self.order, self.polys))

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero

    def __repr__(self) -> str:
        body = ", ".join(g.to_str(self.order) for g in self.polys)
        return f"GroebnerBasis({self.order.kind}; {body})"


def _prep(basis: Iterable[Polynomial], order: MonomialOrder):
    return [(g, *g.leading_term(order)) for g in basis if g]


def _reduce_full(p: Polynomial, prepped, order: MonomialOrder,
                 deadline: float | None = None) -> Polynomial:
    """Full multivariate division remainder of ``p`` by the prepped basis."""
    remainder: dict = {}
    work = p
    steps = 0
    while work:
        steps += 1
        if deadline is not None and not steps % 64 and time.monotonic() > deadline:
            raise GroebnerTimeout("basis computation exceeded the time limit")
        lm, lc = work.leading_term(order)
        for g, glm, glc in prepped:
            if mono_divides(glm, lm):
                factor = Polynomial({mono_div(lm, glm): lc / glc})
                work = work - factor * g
                break
        else:
            remainder[lm] = lc
            work = work - Polynomial({lm: lc})
    return Polynomial(remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    fm, fc = f.leading_term(order)
    gm, gc = g.leading_term(order)
    l = mono_lcm(fm, gm)
    a = Polynomial({mono_div(l, fm): Fraction(1) / fc})
    b = Polynomial({mono_div(l, gm): Fraction(1) / gc})
    return a * f - b * g


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder = GREVLEX,
               time_limit: float | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    ``time_limit`` (seconds) bounds the pair loop cooperatively; exceeding it
    raises :class:`GroebnerTimeout`.
    """
    deadline = None if time_limit is None else time.monotonic() + time_limit
    basis: list[Polynomial] = []
    seen: set[Polynomial] = set()
    for g in gens:
        if not g:
            continue
        g = g.normalized(order)
        if g not in seen:
            seen.add(g)
            basis.append(g)
    if not basis:
        return GroebnerBasis(order, ())
    basis.sort(key=lambda g: order.key(g.leading_monomial(order)))
    lms = [g.leading_monomial(order) for g in basis]
    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    treated: set[tuple[int, int]] = set()

    def pair_key(p):
        i, j = p
        return (mono_degree(mono_lcm(lms[i], lms[j])), i, j)

    while pending:
        if deadline is not None and time.monotonic() > deadline:
            raise GroebnerTimeout(f"basis computation exceeded {time_limit} s")
        sel = min(pending, key=pair_key)
        pending.discard(sel)
        treated.add(sel)
        i, j = sel
        if mono_coprime(lms[i], lms[j]):
            continue
        lcm_ij = mono_lcm(lms[i], lms[j])
        chained = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(lms[k], lcm_ij):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 in treated and p2 in treated:
                chained = True
                break
        if chained:
            continue
        rem = _reduce_full(s_polynomial(basis[i], basis[j], order),
                           _prep(basis, order), order, deadline)
        if rem:
            rem = rem.normalized(order)
            basis.append(rem)
            lms.append(rem.leading_monomial(order))
            t = len(basis) - 1
            pending.update((k, t) for k in range(t))
    return GroebnerBasis(order, _reduce_basis(basis, order, deadline))


def _reduce_basis(basis: list[Polynomial], order: MonomialOrder,
                  deadline: float | None = None) -> list[Polynomial]:
    """Minimalize, then inter-reduce tails; output sorted ascending by leading monomial."""
    ordered = sorted(basis, key=lambda g: order.key(g.leading_monomial(order)))
    kept: list[Polynomial] = []
    kept_lms: list = []
    for g in ordered:
        lm = g.leading_monomial(order)
        if any(mono_divides(other, lm) for other in kept_lms):
            continue
        kept.append(g)
        kept_lms.append(lm)
    for idx in range(len(kept)):
        others = kept[:idx] + kept[idx + 1:]
        kept[idx] = _reduce_full(kept[idx], _prep(others, order),
                                 order, deadline).normalized(order)
    return kept


def normal_form(p: Polynomial, G: GroebnerBasis,
                order: MonomialOrder | None = None) -> Polynomial:
    """Division remainder of ``p`` by ``G``; zero iff ``p`` lies in the ideal."""
    if order is not None and order != G.order:
        raise OrderMismatch(f"normal form requested in {order.kind} "
                            f"against a {G.order.kind} basis")
    return _reduce_full(p, _prep(G.polys, G.order), G.order)


def _as_basis(I, order: MonomialOrder, time_limit: float | None) -> GroebnerBasis:
    if isinstance(I, GroebnerBasis):
        if I.order != order:
            raise OrderMismatch(f"expected a {order.kind} basis, got {I.order.kind}")
        return I
    return buchberger(I, order, time_limit)


def ideal_member(p: Polynomial, I, order: MonomialOrder = GREVLEX,
                 time_limit: float | None = None) -> bool:
    return normal_form(p, _as_basis(I, order, time_limit)).is_zero


def ideal_equal(I, J, order: MonomialOrder = GREVLEX,
                time_limit: float | None = None) -> bool:
    """Ideal equality via uniqueness of the reduced Gröbner basis."""
    return _as_basis(I, order, time_limit).polys == _as_basis(J, order, time_limit).polys


def ideal_intersect(I: Sequence[Polynomial], J: Sequence[Polynomial],
                    time_limit: float | None = None) -> list[Polynomial]:
    """Generators of I ∩ J by elimination: GB of u·I + (1−u)·J in lex with u
    greatest, keeping the u-free polynomials."""
    gens_i = [g for g in I if g]
    gens_j = [g for g in J if g]
    if not gens_i or not gens_j:
        return []
    u = Polynomial.variable(UVAR)
    one_minus_u = Polynomial.one() - u
    combined = [u * f for f in gens_i] + [one_minus_u * g for g in gens_j]
    gb = buchberger(combined, LEX, time_limit)
    out = [g.normalized(GREVLEX) for g in gb if UVAR not in g.variables()]
    out.sort(key=lambda g: GREVLEX.key(g.leading_monomial(GREVLEX)))
    return out


def parse_ideal_components(text: str) -> list[list[Polynomial]]:
    """Parse an ideal file: one polynomial per line, components separated by
    lines starting with the word \"component\"; ``#`` starts a comment."""
    components: list[list[Polynomial]] = []
    current: list[Polynomial] = []
    started = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("component"):
            if started and current:
                components.append(current)
            current = []
            started = True
            continue
        current.append(parse_polynomial(line))
        started = True
    if current:
        components.append(current)
    return components
