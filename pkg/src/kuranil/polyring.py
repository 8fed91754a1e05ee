"""Sparse multivariate polynomials over Q in the deformation parameters t_i^j.

Variables are pairs ``(i, j)`` standing for the parameter ``t_i^j`` (``i`` = the
harmonic-direction index, ``j`` = the frame-vector index), printed ``t<i>_<j>``.
The reserved pair ``UVAR = (0, 0)`` is the auxiliary elimination variable ``u``.

The variable ranking is row-major ascending ``t1_1 < t1_2 < ... < t2_1 < ...``
with ``u`` ranked above every ``t`` variable.  Two monomial orders are provided:

* ``GREVLEX`` – graded reverse lexicographic: higher total degree wins; on equal
  degree, the monomial with the *smaller* exponent at the least-ranked variable
  where they differ is the *greater* one.
* ``LEX`` – pure lexicographic: the larger exponent at the greatest-ranked
  variable where they differ wins.

Monomials are tuples ``((var, exp), ...)`` sorted by variable rank, exponents
positive.  ``Polynomial`` is immutable and hashable.
"""

from __future__ import annotations

import functools
import itertools
import re
from fractions import Fraction

Var = tuple[int, int]
Mono = tuple[tuple[Var, int], ...]

UVAR: Var = (0, 0)

EMPTY_MONO: Mono = ()


def var_rank(v: Var) -> tuple[bool, int, int]:
    """Sort key for variables; ``u`` ranks above every ``t_i^j``."""
    return (v == UVAR, v[0], v[1])


def var_name(v: Var) -> str:
    if v == UVAR:
        return "u"
    return f"t{v[0]}_{v[1]}"


def mono_from_dict(d: dict[Var, int]) -> Mono:
    return tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda p: var_rank(p[0])))


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_mul(a: Mono, b: Mono) -> Mono:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return mono_from_dict(d)


def mono_divides(a: Mono, b: Mono) -> bool:
    """True if monomial ``a`` divides ``b``."""
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def mono_div(a: Mono, b: Mono) -> Mono:
    """Quotient ``a / b``; caller must ensure divisibility."""
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) - e
        if d[v] < 0:
            raise ValueError(f"{b} does not divide {a}")
    return mono_from_dict(d)


def mono_lcm(a: Mono, b: Mono) -> Mono:
    d = dict(a)
    for v, e in b:
        d[v] = max(d.get(v, 0), e)
    return mono_from_dict(d)


def mono_coprime(a: Mono, b: Mono) -> bool:
    vb = {v for v, _ in b}
    return all(v not in vb for v, _ in a)


def mono_str(m: Mono) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in m:
        parts.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    return "*".join(parts)


class MonomialOrder:
    """A total order on monomials, usable as ``kind`` in {"grevlex", "lex"}."""

    __slots__ = ("kind", "_key")

    def __init__(self, kind: str):
        if kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self._key = functools.cmp_to_key(self.compare)

    def compare(self, a: Mono, b: Mono) -> int:
        """Classic cmp: positive if ``a`` is greater than ``b``."""
        if a == b:
            return 0
        if self.kind == "grevlex":
            da, db = mono_degree(a), mono_degree(b)
            if da != db:
                return 1 if da > db else -1
            ea, eb = dict(a), dict(b)
            for v in sorted(set(ea) | set(eb), key=var_rank):
                xa, xb = ea.get(v, 0), eb.get(v, 0)
                if xa != xb:
                    # smaller exponent at the least differing variable wins
                    return 1 if xa < xb else -1
            return 0
        ea, eb = dict(a), dict(b)
        for v in sorted(set(ea) | set(eb), key=var_rank, reverse=True):
            xa, xb = ea.get(v, 0), eb.get(v, 0)
            if xa != xb:
                return 1 if xa > xb else -1
        return 0

    def key(self, m: Mono):
        return self._key(m)

    def max(self, monos) -> Mono:
        return max(monos, key=self._key)

    def sorted_desc(self, monos) -> list[Mono]:
        return sorted(monos, key=self._key, reverse=True)

    def __repr__(self) -> str:
        return f"MonomialOrder({self.kind!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and self.kind == other.kind

    def __hash__(self) -> int:
        return hash(("MonomialOrder", self.kind))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class Polynomial:
    """Immutable sparse polynomial with ``Fraction`` coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[Mono, Fraction] | None = None):
        clean: dict[Mono, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c if isinstance(c, Fraction) else Fraction(c)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return _ZERO

    @staticmethod
    def one() -> "Polynomial":
        return _ONE

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial({EMPTY_MONO: Fraction(c)})

    @staticmethod
    def variable(v: Var) -> "Polynomial":
        return Polynomial({((v, 1),): Fraction(1)})

    # -- basic queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(m == EMPTY_MONO for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(EMPTY_MONO, Fraction(0))

    def total_degree(self) -> int:
        """Maximum monomial degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Polynomial(terms)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) - c
        return Polynomial(terms)

    def __rsub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return _ZERO
            f = Fraction(other)
            return Polynomial({m: c * f for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        terms: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return Polynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = _ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    # -- order-dependent operations -----------------------------------------

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Mono, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = order.max(self.terms)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Mono:
        return self.leading_term(order)[0]

    def normalized(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Integer-primitive scalar multiple with positive leading coefficient."""
        if not self.terms:
            return self
        coeffs = list(self.terms.values())
        denom_lcm = 1
        for c in coeffs:
            denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
        num_gcd = 0
        for c in coeffs:
            num_gcd = _gcd(num_gcd, abs(c.numerator * (denom_lcm // c.denominator)))
        scale = Fraction(denom_lcm, num_gcd)
        _, lead = self.leading_term(order)
        if lead * scale < 0:
            scale = -scale
        return self * scale

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, assignment: dict[Var, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            prod = c
            for v, e in m:
                if v not in assignment:
                    raise KeyError(f"no value supplied for variable {var_name(v)}")
                prod *= Fraction(assignment[v]) ** e
            total += prod
        return total

    # -- rendering ----------------------------------------------------------

    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for m in order.sorted_desc(self.terms):
            c = self.terms[m]
            mag = abs(c)
            if m == EMPTY_MONO:
                body = str(mag)
            elif mag == 1:
                body = mono_str(m)
            else:
                body = f"{mag}*{mono_str(m)}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_str()!r})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _coerce(x) -> Polynomial | None:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(x) if x else _ZERO
    return None


_ZERO = Polynomial()
_ONE = Polynomial({EMPTY_MONO: Fraction(1)})


def var_poly(i: int, j: int) -> Polynomial:
    """The parameter ``t_i^j`` as a polynomial."""
    return Polynomial.variable((i, j))


def minor2(i: int, j: int, k: int, l: int) -> Polynomial:
    """2x2 minor ``t_i^k * t_j^l - t_i^l * t_j^k``.

    Lower indices ``i, j`` select parameter rows (harmonic directions), upper
    indices ``k, l`` select columns (frame vectors); repeated indices on either
    level make the minor identically zero and are rejected.
    """
    if i == j:
        raise ValueError(f"repeated lower index {i}")
    if k == l:
        raise ValueError(f"repeated upper index {k}")
    return var_poly(i, k) * var_poly(j, l) - var_poly(i, l) * var_poly(j, k)


def minor3(i: int, j: int, k: int, l: int, m: int, n: int) -> Polynomial:
    """3x3 minor: determinant over lower (row-parameter) indices ``i, j, k``
    and upper (column) indices ``l, m, n``."""
    lower = (i, j, k)
    upper = (l, m, n)
    if len(set(lower)) != 3:
        raise ValueError(f"repeated lower index in {lower}")
    if len(set(upper)) != 3:
        raise ValueError(f"repeated upper index in {upper}")
    total = Polynomial.zero()
    for perm, sign in (
        ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
        ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1),
    ):
        prod = Polynomial.one()
        for row, col in zip(range(3), perm):
            prod = prod * var_poly(lower[row], upper[col])
        total = total + prod * sign
    return total


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)"
    r"|(?P<tvar>t(?P<ti>\d+)_(?P<tj>\d+))"
    r"|(?P<uvar>u\b)"
    r"|(?P<minor2>delta\[(?P<m2low>\d+);(?P<m2up>\d+)\])"
    r"|(?P<minor3>Delta\[(?P<m3low>\d+);(?P<m3up>\d+)\])"
    r"|(?P<op>[-+*^()]))"
)


class PolynomialParseError(ValueError):
    pass


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            rest = text[pos:].strip()
            if not rest:
                break
            raise PolynomialParseError(f"cannot tokenize {rest[:20]!r}")
        pos = m.end()
        if m.group("number"):
            if "/" in m.group("number"):
                p, q = m.group("number").split("/")
                tokens.append(("num", Fraction(int(p), int(q))))
            else:
                tokens.append(("num", Fraction(int(m.group("number")))))
        elif m.group("tvar"):
            tokens.append(("var", (int(m.group("ti")), int(m.group("tj")))))
        elif m.group("uvar"):
            tokens.append(("var", UVAR))
        elif m.group("minor2"):
            low, up = m.group("m2low"), m.group("m2up")
            if len(low) != 2 or len(up) != 2:
                raise PolynomialParseError(f"delta needs two lower and two upper digits: {m.group(0)}")
            tokens.append(("poly", minor2(int(low[0]), int(low[1]), int(up[0]), int(up[1]))))
        elif m.group("minor3"):
            low, up = m.group("m3low"), m.group("m3up")
            if len(low) != 3 or len(up) != 3:
                raise PolynomialParseError(f"Delta needs three lower and three upper digits: {m.group(0)}")
            tokens.append(("poly", minor3(int(low[0]), int(low[1]), int(low[2]),
                                          int(up[0]), int(up[1]), int(up[2]))))
        else:
            tokens.append(("op", m.group("op")))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise PolynomialParseError(f"expected {op!r}, got {val!r}")

    def parse_expr(self) -> Polynomial:
        total = self.parse_term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                term = self.parse_term()
                total = total + term if val == "+" else total - term
            else:
                return total

    def parse_term(self) -> Polynomial:
        total = self.parse_factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.next()
                total = total * self.parse_factor()
            elif kind in ("num", "var", "poly") or (kind == "op" and val == "("):
                # implicit multiplication, e.g. "2t1_1" or "t2_1delta[12;12]"
                total = total * self.parse_factor()
            else:
                return total

    def parse_factor(self) -> Polynomial:
        base = self.parse_atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            ekind, eval_ = self.next()
            if ekind != "num" or eval_.denominator != 1:
                raise PolynomialParseError("exponent must be a nonnegative integer")
            return base ** int(eval_)
        return base

    def parse_atom(self) -> Polynomial:
        kind, val = self.next()
        if kind == "num":
            return Polynomial.constant(val)
        if kind == "var":
            return Polynomial.variable(val)
        if kind == "poly":
            return val
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return -self.parse_factor()
        if kind == "op" and val == "+":
            return self.parse_factor()
        raise PolynomialParseError(f"unexpected token {val!r}")


def parse_polynomial(text: str) -> Polynomial:
    """Parse expressions like ``2*t1_1^2 - delta[12;12] + 1/2``.

    Grammar: numbers (``p`` or ``p/q``), parameters ``t<i>_<j>``, the
    elimination variable ``u``, minor shorthands ``delta[ij;kl]`` (2x2) and
    ``Delta[ijk;lmn]`` (3x3), with ``+ - * ^`` and parentheses.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialParseError("empty polynomial")
    parser = _Parser(tokens)
    poly = parser.parse_expr()
    if parser.pos != len(tokens):
        raise PolynomialParseError(f"trailing tokens at {parser.pos}")
    return poly


def all_parameters(m: int, n: int) -> list[Var]:
    """Row-major list of the parameters ``t_i^j`` for ``1 <= i <= m``, ``1 <= j <= n``."""
    return [(i, j) for i, j in itertools.product(range(1, m + 1), range(1, n + 1))]
