"""Nilpotent Lie algebras with exact rational structure constants.

Two kinds of ambient object live here:

* ``LieAlgebra`` — a complex nilpotent Lie algebra given by structure constants
  on a fixed basis ``X_1..X_n``.  Structure strings like ``"(0,0,12,13)"`` list
  the coframe differentials: entry ``k`` is ``dw^k`` as a sum of wedge pairs
  ``ab`` meaning ``w^a ∧ w^b``.  Brackets are recovered through the duality
  ``dα(x, y) = −α([x, y])``, so ``"(0,0,12)"`` has ``[X1, X2] = −X3``.
* ``ComplexStructureAlgebra`` — a real Lie algebra with integrable left-invariant
  complex structure, presented by the differentials of the (1,0)-coframe
  ``w^1..w^n``; each ``dw^k`` may have a (2,0) part (``w^a ∧ w^b``) and a (1,1)
  part (``cw^a ∧ w^b``, with ``cw`` the conjugated covector).  Conjugate
  equations are implied (all coefficients are rational).

Both implement the ambient protocol consumed by the exterior-algebra module:
``complex_dim``, ``covector_differential``, ``vector_bracket``, ``vector_delbar``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .linalg import Matrix


class JacobiViolation(ValueError):
    """The Jacobi identity fails; carries a witness basis triple."""

    def __init__(self, triple: tuple[int, int, int], defect):
        self.triple = triple
        self.defect = defect
        super().__init__(f"Jacobi identity fails on (X{triple[0]}, X{triple[1]}, X{triple[2]})")


class NotNilpotent(ValueError):
    pass


class NotIntegrable(ValueError):
    """The coframe differential has a (0,2) component on (1,0)-covectors."""


class StructureParseError(ValueError):
    pass


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim in canonical (RREF) row form.

    Equality of subspaces is literal equality of the frozen rows.
    """

    ambient_dim: int
    rows: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_vectors(ambient_dim: int, vectors) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        rows, _ = linalg.rref([[Fraction(x) for x in v] for v in vecs]) if vecs else ([], [])
        return Subspace(ambient_dim, tuple(tuple(r) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> Matrix:
        return [list(r) for r in self.rows]

    def pivots(self) -> list[int]:
        out = []
        for row in self.rows:
            for c, x in enumerate(row):
                if x:
                    out.append(c)
                    break
        return out

    def contains(self, vector) -> bool:
        v = [Fraction(x) for x in vector]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        reduced = linalg.reduce_against(self.basis(), self.pivots(), v)
        return all(x == 0 for x in reduced)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.rows)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


Brackets = dict[tuple[int, int], dict[int, Fraction]]


class LieAlgebra:
    """Complex Lie algebra ``[X_i, X_j] = Σ_k c^k_ij X_k`` with ``i < j`` stored."""

    def __init__(self, dim: int, brackets: Brackets, name: str | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        clean: Brackets = {}
        for (i, j), comp in brackets.items():
            if not (1 <= i < j <= dim):
                raise ValueError(f"bracket key ({i},{j}) out of range for dim {dim}")
            entries = {k: Fraction(c) for k, c in comp.items() if c}
            for k in entries:
                if not 1 <= k <= dim:
                    raise ValueError(f"bracket target X{k} out of range")
            if entries:
                clean[(i, j)] = entries
        self.dim = dim
        self.brackets = clean
        self.name = name or f"lie-algebra-dim-{dim}"

    # -- basic bracket access ------------------------------------------------

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        """[X_i, X_j] as a sparse coefficient vector."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket_vectors(self, x: list[Fraction], y: list[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x, start=1):
            if not xi:
                continue
            for j, yj in enumerate(y, start=1):
                if not yj:
                    continue
                for k, c in self.bracket(i, j).items():
                    out[k - 1] += xi * yj * c
        return out

    # -- ambient protocol ----------------------------------------------------

    @property
    def complex_dim(self) -> int:
        return self.dim

    def covector_differential(self, index: int, barred: bool) -> list[tuple[int, bool, int, bool, Fraction]]:
        """d of the covector as triples (a, barred_a, b, barred_b, coeff).

        ``dα(x, y) = −α([x, y])`` gives ``dw^k = −Σ_{i<j} c^k_ij w^i ∧ w^j``;
        the barred equation is its conjugate (rational coefficients).
        """
        out = []
        for (i, j), comp in self.brackets.items():
            c = comp.get(index)
            if c:
                out.append((i, barred, j, barred, -c))
        return out

    def vector_bracket(self, i: int, bi: bool, j: int, bj: bool) -> dict[tuple[int, bool], Fraction]:
        """Lie bracket of frame vectors, allowing conjugated arguments."""
        if bi != bj:
            return {}  # [g, ḡ] = 0 for a complex Lie algebra viewed as parallelisable
        return {(k, bi): c for k, c in self.bracket(i, j).items()}

    def vector_delbar(self, j: int) -> dict[tuple[int, tuple[int, bool]], Fraction]:
        return {}

    # -- validation ----------------------------------------------------------

    def validate(self, require_nilpotent: bool = True) -> None:
        n = self.dim
        basis = linalg.identity(n)
        for i, j, k in itertools.combinations(range(1, n + 1), 3):
            acc = [Fraction(0)] * n
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.bracket_vectors(basis[a - 1], basis[b - 1])
                outer = self.bracket_vectors(inner, basis[c - 1])
                acc = [u + v for u, v in zip(acc, outer)]
            if any(acc):
                raise JacobiViolation((i, j, k), acc)
        if require_nilpotent:
            series = self.descending_central_series(validated=True)
            if series[-1].dim != 0:
                raise NotNilpotent(
                    f"descending central series stabilizes at dimension {series[-1].dim}"
                )

    # -- structural invariants ----------------------------------------------

    def descending_central_series(self, validated: bool = False) -> list[Subspace]:
        """[C_0 = g, C_1, ..., C_last] with C_{k+1} = span[C_k, g]; stops when
        the dimension stops dropping (reaching 0 iff nilpotent)."""
        n = self.dim
        current = Subspace.from_vectors(n, linalg.identity(n))
        series = [current]
        while current.dim:
            spans = []
            for row in current.rows:
                for j in range(1, n + 1):
                    ej = [Fraction(1) if t == j - 1 else Fraction(0) for t in range(n)]
                    spans.append(self.bracket_vectors(list(row), ej))
            nxt = Subspace.from_vectors(n, spans)
            if nxt.dim == current.dim:
                series.append(nxt)
                break
            series.append(nxt)
            current = nxt
        return series

    def nilpotency_index(self) -> int:
        series = self.descending_central_series()
        if series[-1].dim != 0:
            raise NotNilpotent("algebra is not nilpotent")
        return len(series) - 1

    def center(self) -> Subspace:
        n = self.dim
        rows = []
        for j in range(1, n + 1):
            for k in range(n):
                rows.append([Fraction(self.bracket(i, j).get(k + 1, 0)) for i in range(1, n + 1)])
        return Subspace.from_vectors(n, linalg.nullspace(rows, n))

    def derived_algebra(self) -> Subspace:
        spans = []
        for (i, j), comp in self.brackets.items():
            vec = [Fraction(0)] * self.dim
            for k, c in comp.items():
                vec[k - 1] = c
            spans.append(vec)
        return Subspace.from_vectors(self.dim, spans)

    def derived_annihilator(self) -> Subspace:
        """Ann([g,g]) inside the dual space; its dimension is h^{0,1}."""
        derived = self.derived_algebra()
        if derived.dim == 0:
            return Subspace.from_vectors(self.dim, linalg.identity(self.dim))
        return Subspace.from_vectors(self.dim, linalg.nullspace(derived.basis(), self.dim))

    def is_abelian(self) -> bool:
        return not self.brackets

    def free_two_step_quotient_test(self) -> "FreeTwoStepResult":
        """Decide whether g/C_2 is the free 2-step algebra on dim(g/C_1) generators."""
        series = self.descending_central_series()
        c1 = series[1] if len(series) > 1 else Subspace.from_vectors(self.dim, [])
        c2 = series[2] if len(series) > 2 else Subspace.from_vectors(self.dim, [])
        if c1.dim == 0:
            return FreeTwoStepResult("abelian", self.dim, 0, 0, True)
        m0 = self.dim - c1.dim
        expected = m0 * (m0 - 1) // 2
        # generator representatives: unit vectors at the non-pivot coordinates of C_1
        free_coords = [c for c in range(self.dim) if c not in c1.pivots()]
        c2_rows, c2_pivots = c2.basis(), c2.pivots()
        images = []
        for a, b in itertools.combinations(free_coords, 2):
            ea = [Fraction(1) if t == a else Fraction(0) for t in range(self.dim)]
            eb = [Fraction(1) if t == b else Fraction(0) for t in range(self.dim)]
            images.append(linalg.reduce_against(c2_rows, c2_pivots, self.bracket_vectors(ea, eb)))
        rank = linalg.rank(images) if images else 0
        quotient_dim = c1.dim - c2.dim
        injective = rank == expected
        verdict = "free" if (injective and quotient_dim == expected) else "not_free"
        return FreeTwoStepResult(verdict, m0, quotient_dim, expected, injective)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim})"


@dataclass(frozen=True)
class FreeTwoStepResult:
    verdict: str                   # "abelian" | "free" | "not_free"
    generator_count: int           # dim(g / C_1)
    quotient_dim: int              # dim(C_1 / C_2)
    expected_dim: int              # generator_count choose 2
    bracket_injective: bool


# -- constructors ------------------------------------------------------------

def abelian(k: int, name: str | None = None) -> LieAlgebra:
    return LieAlgebra(k, {}, name=name or f"a_{k}")


def free_two_step(m: int) -> LieAlgebra:
    """V ⊕ Λ²V with [a + β, a' + β'] = a ∧ a'; dimension m + m(m−1)/2."""
    if m < 2:
        raise ValueError("free 2-step algebra needs at least 2 generators")
    pairs = list(itertools.combinations(range(1, m + 1), 2))
    brackets: Brackets = {}
    for idx, (a, b) in enumerate(pairs):
        brackets[(a, b)] = {m + 1 + idx: Fraction(1)}
    return LieAlgebra(m + len(pairs), brackets, name=f"b_{m}")


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str | None = None) -> LieAlgebra:
    brackets: Brackets = {key: dict(comp) for key, comp in a.brackets.items()}
    for (i, j), comp in b.brackets.items():
        brackets[(i + a.dim, j + a.dim)] = {k + a.dim: c for k, c in comp.items()}
    return LieAlgebra(a.dim + b.dim, brackets, name=name or f"{a.name}+{b.name}")


# -- Salamon-notation parser -------------------------------------------------

_SALAMON_TERM = re.compile(r"^(?P<coef>\d+\*)?(?P<pair>\d\d)$")


def parse_salamon(text: str) -> LieAlgebra:
    """Parse structure strings like ``"(0,0,12,13+24)"``.

    Entry ``k`` is ``dw^k``: either ``0`` or a ±-separated sum of terms, each an
    optional integer coefficient ``c*`` followed by two distinct digits ``ab``
    (``a < b``) meaning ``w^a ∧ w^b``.  Digits must not exceed the dimension.
    """
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise StructureParseError("structure string must be parenthesized")
    entries = [e.strip() for e in s[1:-1].split(",")]
    if not entries or entries == [""]:
        raise StructureParseError("empty structure string")
    n = len(entries)
    brackets: Brackets = {}
    for k, entry in enumerate(entries, start=1):
        if entry == "0":
            continue
        if not entry:
            raise StructureParseError(f"empty entry {k}")
        chunks = re.split(r"(?=[+-])", entry)
        for chunk in chunks:
            if not chunk:
                continue
            sign = Fraction(1)
            body = chunk
            if body[0] in "+-":
                sign = Fraction(-1) if body[0] == "-" else Fraction(1)
                body = body[1:]
            m = _SALAMON_TERM.match(body)
            if not m:
                raise StructureParseError(f"malformed term {chunk!r} in entry {k}")
            coef = sign * Fraction(int(m.group("coef")[:-1])) if m.group("coef") else sign
            a, b = int(m.group("pair")[0]), int(m.group("pair")[1])
            if a == b:
                raise StructureParseError(f"repeated digit in term {chunk!r}")
            if a > b:
                a, b = b, a
                coef = -coef
            if b > n:
                raise StructureParseError(f"index {b} exceeds dimension {n}")
            # dw^k = Σ A^k_ab w^a∧w^b  ⟹  [X_a, X_b] = −Σ_k A^k_ab X_k
            comp = brackets.setdefault((a, b), {})
            comp[k] = comp.get(k, Fraction(0)) - coef
    brackets = {key: {k: c for k, c in comp.items() if c}
                for key, comp in brackets.items()}
    brackets = {key: comp for key, comp in brackets.items() if comp}
    return LieAlgebra(n, brackets, name=text.strip())


# -- structure-constant file format -----------------------------------------

_RAT = r"-?\d+(?:/\d+)?"


def _parse_rational(tok: str) -> Fraction:
    if "/" in tok:
        p, q = tok.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(tok))


def parse_structure_file(text: str, name: str | None = None) -> LieAlgebra:
    """Line-based format: optional ``dim n`` plus ``bracket i j = c1*k1 + c2*k2``.

    Coefficients are integers or rationals ``p/q``; a bare ``k`` means ``1*k``.
    Lines starting with ``#`` and blank lines are ignored.
    """
    dim: int | None = None
    brackets: Brackets = {}
    max_index = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim"):
            dim = int(line.split()[1])
            continue
        m = re.match(r"^bracket\s+(\d+)\s+(\d+)\s*=\s*(.+)$", line)
        if not m:
            raise StructureParseError(f"line {lineno}: cannot parse {line!r}")
        i, j = int(m.group(1)), int(m.group(2))
        if i == j:
            raise StructureParseError(f"line {lineno}: bracket of a vector with itself")
        rhs = m.group(3).strip()
        comp: dict[int, Fraction] = {}
        if rhs != "0":
            for chunk in re.split(r"(?=[+-])", rhs.replace(" ", "")):
                if not chunk:
                    continue
                tm = re.match(rf"^([+-]?)(?:({_RAT.lstrip('-?')})\*)?(\d+)$", chunk)
                if not tm:
                    raise StructureParseError(f"line {lineno}: malformed term {chunk!r}")
                sign = Fraction(-1) if tm.group(1) == "-" else Fraction(1)
                coef = sign * (_parse_rational(tm.group(2)) if tm.group(2) else Fraction(1))
                k = int(tm.group(3))
                comp[k] = comp.get(k, Fraction(0)) + coef
        swap = i > j
        if swap:
            i, j = j, i
            comp = {k: -c for k, c in comp.items()}
        tgt = brackets.setdefault((i, j), {})
        for k, c in comp.items():
            tgt[k] = tgt.get(k, Fraction(0)) + c
        max_index = max(max_index, i, j, *comp.keys()) if comp else max(max_index, i, j)
    n = dim if dim is not None else max_index
    if n == 0:
        raise StructureParseError("no content")
    brackets = {key: {k: c for k, c in comp.items() if c} for key, comp in brackets.items()}
    brackets = {key: comp for key, comp in brackets.items() if comp}
    return LieAlgebra(n, brackets, name=name or "structure-file")


# -- complex structures ------------------------------------------------------

D20 = dict[int, dict[tuple[int, int], Fraction]]   # k -> {(a,b) a<b: coeff of w^a∧w^b}
D11 = dict[int, dict[tuple[int, int], Fraction]]   # k -> {(a,b): coeff of cw^a∧w^b}


class ComplexStructureAlgebra:
    """Real Lie algebra with integrable complex structure, given by the
    differentials of the (1,0)-coframe.  Conjugate equations implied."""

    def __init__(self, n: int, d20: D20, d11: D11, name: str | None = None):
        self.n = n
        self.d20 = {
            k: {pair: Fraction(c) for pair, c in comp.items() if c}
            for k, comp in d20.items()
        }
        self.d20 = {k: comp for k, comp in self.d20.items() if comp}
        self.d11 = {
            k: {pair: Fraction(c) for pair, c in comp.items() if c}
            for k, comp in d11.items()
        }
        self.d11 = {k: comp for k, comp in self.d11.items() if comp}
        for k, comp in itertools.chain(self.d20.items(), self.d11.items()):
            if not 1 <= k <= n:
                raise ValueError(f"covector index {k} out of range")
            for (a, b) in comp:
                if not (1 <= a <= n and 1 <= b <= n):
                    raise ValueError(f"wedge indices ({a},{b}) out of range")
        for k, comp in self.d20.items():
            for (a, b) in comp:
                if a >= b:
                    raise ValueError("(2,0) wedge pairs must have a < b")
        self.name = name or f"complex-structure-dim-{n}"

    # -- ambient protocol ----------------------------------------------------

    @property
    def complex_dim(self) -> int:
        return self.n

    def covector_differential(self, index: int, barred: bool) -> list[tuple[int, bool, int, bool, Fraction]]:
        """dw^k (or its conjugate): (2,0) terms w^a∧w^b plus (1,1) terms cw^a∧w^b."""
        out = []
        for (a, b), c in self.d20.get(index, {}).items():
            out.append((a, barred, b, barred, c))
        for (a, b), c in self.d11.get(index, {}).items():
            out.append((a, not barred, b, barred, c))
        return out

    def vector_bracket(self, i: int, bi: bool, j: int, bj: bool) -> dict[tuple[int, bool], Fraction]:
        """Bracket of frame vectors, complexified: [X_i, X_j], [X̄_i, X_j], etc."""
        out: dict[tuple[int, bool], Fraction] = {}
        if bi == bj:
            # [X_i, X_j] = −Σ A^k_ij X_k (conjugate everything if both barred)
            if i == j:
                return {}
            sign = Fraction(1)
            a, b = i, j
            if a > b:
                a, b = b, a
                sign = Fraction(-1)
            for k, comp in self.d20.items():
                c = comp.get((a, b))
                if c:
                    out[(k, bi)] = out.get((k, bi), Fraction(0)) - sign * c
            return {key: c for key, c in out.items() if c}
        # mixed: [X̄_a, X_b] = −Σ_k B^k_ab X_k + Σ_k B^k_ba X̄_k
        if bi and not bj:
            a, b = i, j
            flip = False
        else:
            a, b = j, i
            flip = True
        for k, comp in self.d11.items():
            c = comp.get((a, b))
            if c:
                out[(k, False)] = out.get((k, False), Fraction(0)) - c
            c2 = comp.get((b, a))
            if c2:
                out[(k, True)] = out.get((k, True), Fraction(0)) + c2
        if flip:
            out = {key: -c for key, c in out.items()}
        return {key: c for key, c in out.items() if c}

    def vector_delbar(self, j: int) -> dict[tuple[int, tuple[int, bool]], Fraction]:
        """∂̄X_j = Σ_a cw^a ⊗ pr^{1,0}[X̄_a, X_j], as {(a, vector_key): coeff}."""
        out: dict[tuple[int, tuple[int, bool]], Fraction] = {}
        for a in range(1, self.n + 1):
            for (k, barred), c in self.vector_bracket(a, True, j, False).items():
                if not barred:
                    out[(a, (k, False))] = c
        return out

    def classify(self) -> str:
        if not self.d11:
            return "parallelisable"
        if not self.d20:
            return "abelian"
        return "generic"

    def __repr__(self) -> str:
        return f"ComplexStructureAlgebra({self.name!r}, n={self.n})"


def classify_complex_structure(csa: ComplexStructureAlgebra) -> str:
    return csa.classify()


def to_complex_structure(L: LieAlgebra) -> ComplexStructureAlgebra:
    """Embed a complex Lie algebra with purely (2,0) coframe differentials."""
    d20: D20 = {}
    for (i, j), comp in L.brackets.items():
        for k, c in comp.items():
            d20.setdefault(k, {})[(i, j)] = d20.get(k, {}).get((i, j), Fraction(0)) - c
    return ComplexStructureAlgebra(L.dim, d20, {}, name=L.name)


_CSA_TERM = re.compile(
    rf"^([+-]?)(?:({_RAT.lstrip('-?')})\*)?(c?)w(\d+)\^(c?)w(\d+)$"
)


def parse_complex_structure_file(text: str, name: str | None = None) -> ComplexStructureAlgebra:
    """Parse lines ``dw<k> = [±][c*]w<a>^w<b> ...`` with ``cw`` = conjugated covector.

    A ``dim n`` line fixes the complex dimension (otherwise inferred from the
    largest index).  Terms with both covectors conjugated would make the
    structure non-integrable and are rejected.
    """
    dim: int | None = None
    d20: D20 = {}
    d11: D11 = {}
    max_index = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim"):
            dim = int(line.split()[1])
            continue
        m = re.match(r"^dw(\d+)\s*=\s*(.+)$", line)
        if not m:
            raise StructureParseError(f"line {lineno}: cannot parse {line!r}")
        k = int(m.group(1))
        max_index = max(max_index, k)
        rhs = m.group(2).replace(" ", "")
        if rhs == "0":
            continue
        for chunk in re.split(r"(?=[+-])", rhs):
            if not chunk:
                continue
            tm = _CSA_TERM.match(chunk)
            if not tm:
                raise StructureParseError(f"line {lineno}: malformed term {chunk!r}")
            sign = Fraction(-1) if tm.group(1) == "-" else Fraction(1)
            coef = sign * (_parse_rational(tm.group(2)) if tm.group(2) else Fraction(1))
            bar_a, a = bool(tm.group(3)), int(tm.group(4))
            bar_b, b = bool(tm.group(5)), int(tm.group(6))
            max_index = max(max_index, a, b)
            if bar_a and bar_b:
                raise NotIntegrable(
                    f"line {lineno}: (0,2) term {chunk!r} in the differential of a (1,0)-covector"
                )
            if not bar_a and not bar_b:
                if a == b:
                    raise StructureParseError(f"line {lineno}: repeated covector in {chunk!r}")
                if a > b:
                    a, b = b, a
                    coef = -coef
                comp = d20.setdefault(k, {})
                comp[(a, b)] = comp.get((a, b), Fraction(0)) + coef
            else:
                # normalize to cw^a ∧ w^b
                if bar_b:
                    a, b = b, a
                    coef = -coef
                comp = d11.setdefault(k, {})
                comp[(a, b)] = comp.get((a, b), Fraction(0)) + coef
    n = dim if dim is not None else max_index
    if n == 0:
        raise StructureParseError("no content")
    return ComplexStructureAlgebra(n, d20, d11, name=name or "complex-structure-file")
