"""Deformation core: Schouten brackets, the degree-by-degree Maurer-Cartan
solution, obstruction ideals, and structural smoothness certificates.

The generic first-order deformation Φ₁ = Σ t_i^j ω̄^i ⊗ X_j (harmonic basis ⊗
frame vectors) is extended degree by degree via

    Φ_k = −δ ∘ P ( Σ_{0<i<k} [Φ_i, Φ_{k−i}] ),

where P is the orthogonal projection onto the ∂̄-exact part and δ the inverse
of ∂̄ from exact 2-forms back to coexact 1-forms.  The harmonic parts of the
bracket sums — the parts the correction terms cannot absorb — accumulate into
the obstruction ideal; its vanishing locus is the local deformation space.

For a complex-parallelisable structure the recursion terminates at the
nilpotency index ν and the obstruction coefficients are polynomials of degree
at most ν.  For general integrable structures the recursion need not
terminate, so a degree cap is mandatory and results are truncations.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import groebner, hodge, linalg
from .algebra import ComplexStructureAlgebra, LieAlgebra
from .exterior import (
    AmbientMismatch,
    BarredVectorError,
    ExteriorForm,
    VectorForm,
    vector_key_str,
)
from .polyring import GREVLEX, Polynomial, Var, var_name, var_poly


class NonParallelisableAmbient(ValueError):
    """The wedge-and-bracket Schouten shortcut needs a parallelisable ambient."""


class MissingDegreeCap(ValueError):
    """The recursion over a general ambient requires an explicit max_degree."""


class ClosednessViolation(RuntimeError):
    """A bracket sum acquired a coexact component that the obstruction ideal
    found so far cannot account for — an implementation bug by the DGLA
    structure, never expected on valid input."""

    def __init__(self, degree: int, v_part: VectorForm, offending: list[Polynomial]):
        self.degree = degree
        self.v_part = v_part
        self.offending = offending
        polys = "; ".join(str(p) for p in offending[:4])
        super().__init__(
            f"bracket sum at degree {degree} has a coexact component with "
            f"coefficients outside the obstruction ideal found so far: {polys}")


def _is_parallelisable(ambient) -> bool:
    if isinstance(ambient, LieAlgebra):
        return True
    if isinstance(ambient, ComplexStructureAlgebra):
        return ambient.classify() == "parallelisable"
    return False


def schouten_parallelisable(a: VectorForm, b: VectorForm) -> VectorForm:
    """[ᾱ⊗X, β̄⊗Y] = ᾱ∧β̄⊗[X,Y], valid when ∂̄ kills every frame vector."""
    if a.ambient is not b.ambient:
        raise AmbientMismatch("Schouten bracket of forms over different ambients")
    if not _is_parallelisable(a.ambient):
        raise NonParallelisableAmbient(
            "ambient has a (1,1) structure part; use schouten_general")
    if a.has_barred_vectors() or b.has_barred_vectors():
        raise BarredVectorError("Schouten bracket inputs must have (1,0) vector parts")
    ambient = a.ambient
    out: dict = {}
    for (i, bi), alpha in a.components.items():
        for (j, bj), beta in b.components.items():
            br = ambient.vector_bracket(i, bi, j, bj)
            if not br:
                continue
            w = alpha.wedge(beta)
            if not w:
                continue
            for key, c in br.items():
                cur = out.get(key)
                out[key] = w.scale(c) if cur is None else cur + w.scale(c)
    return VectorForm(ambient, out)


def schouten_general(a: VectorForm, b: VectorForm) -> VectorForm:
    """Three-term Schouten bracket on Λ^{0,•} ⊗ (1,0)-vectors:

        [ᾱ⊗X, β̄⊗Y] = β̄∧(i_Y ∂ᾱ)⊗X + ᾱ∧(i_X ∂β̄)⊗Y + ᾱ∧β̄⊗[X,Y].

    The Lie-derivative terms reduce to contractions of ∂-parts because frame
    coefficients are constant and (1,0)-vectors contract (0,q)-forms to zero.
    On a parallelisable ambient ∂ of a (0,q)-form vanishes and the formula
    degenerates to the wedge-and-bracket shortcut."""
    if a.ambient is not b.ambient:
        raise AmbientMismatch("Schouten bracket of forms over different ambients")
    ambient = a.ambient
    out: dict = {}

    def add(key, form):
        if not form:
            return
        cur = out.get(key)
        out[key] = form if cur is None else cur + form

    items_a = [(key, alpha, alpha.del_()) for key, alpha in a.components.items()]
    items_b = [(key, beta, beta.del_()) for key, beta in b.components.items()]
    for (i, bi), alpha, del_alpha in items_a:
        for (j, bj), beta, del_beta in items_b:
            if del_alpha:
                add((i, bi), beta.wedge(del_alpha.contract(j, bj)))
            if del_beta:
                add((j, bj), alpha.wedge(del_beta.contract(i, bi)))
            br = ambient.vector_bracket(i, bi, j, bj)
            if br:
                w = alpha.wedge(beta)
                if w:
                    for key, c in br.items():
                        add(key, w.scale(c))
    return VectorForm(ambient, out)


class PhiSeries:
    """The solution Φ = Φ₁ + Φ₂ + … of the recursion, with its audit trail.

    ``terms[k]`` is Φ_k (t-degree k); ``bracket_sums[k]`` the bracket sum the
    step consumed, ``harmonic_parts[k]`` its harmonic (obstructing) part, and
    ``dropped_coexact[k]`` any coexact component certified to vanish on the
    obstruction locus and therefore dropped.
    """

    def __init__(self, ambient, decomposition, kind: str, variables: list[Var],
                 max_degree: int):
        self.ambient = ambient
        self.decomposition = decomposition
        self.kind = kind
        self.variables = variables
        self.max_degree = max_degree
        self.terms: dict[int, VectorForm] = {}
        self.bracket_sums: dict[int, VectorForm] = {}
        self.harmonic_parts: dict[int, VectorForm] = {}
        self.dropped_coexact: dict[int, VectorForm] = {}

    def phi(self, k: int) -> VectorForm:
        return self.terms.get(k, VectorForm.zero(self.ambient))

    def full(self) -> VectorForm:
        total = VectorForm.zero(self.ambient)
        for k in sorted(self.terms):
            total = total + self.terms[k]
        return total

    def as_list(self) -> list[VectorForm]:
        return [self.phi(k) for k in range(1, self.max_degree + 1)]

    def bracket(self, x: VectorForm, y: VectorForm) -> VectorForm:
        if self.kind == "scalar":
            return schouten_parallelisable(x, y)
        return schouten_general(x, y)


def generic_harmonic_element(decomposition) -> tuple[VectorForm, list[Var]]:
    """Σ t_i^j ω̄^i⊗X_j over the harmonic basis.

    Scalar complex: variable t_i^j pairs the i-th harmonic 1-form with the j-th
    frame vector.  Vector-valued complex: each harmonic basis vector is indexed
    by its RREF pivot cell (ω̄^a, X_b) → variable t_a^b; for a parallelisable
    structure the two schemes agree."""
    ambient = decomposition.ambient
    variables: list[Var] = []
    total = VectorForm.zero(ambient)
    if decomposition.kind == "scalar":
        hbasis = decomposition.basis(1, "H")
        n = ambient.complex_dim
        for i, h in enumerate(hbasis, start=1):
            for j in range(1, n + 1):
                v = (i, j)
                variables.append(v)
                total = total + VectorForm.single(ambient, h.scale(var_poly(i, j)), j)
    else:
        hbasis = decomposition.basis(1, "H")
        pivots = decomposition.harmonic_pivot_cells(1)
        for h, cell in zip(hbasis, pivots):
            (mi, (b, _barred)) = cell
            a = mi[0].index
            variables.append((a, b))
            total = total + h.scale(var_poly(a, b))
    return total, variables


def _vector_in_subspace(vf: VectorForm, rows, pivots, n: int) -> bool:
    """Whether every frame-vector coefficient vector of ``vf`` lies in the span
    of ``rows`` (polynomial coefficients reduce against the RREF basis)."""
    by_cell: dict = {}
    for (j, _barred), form in vf.components.items():
        for mi, c in form.terms.items():
            by_cell.setdefault(mi, [Polynomial.zero()] * n)[j - 1] = c
    for vec in by_cell.values():
        reduced = linalg.reduce_against(rows, pivots, vec)
        if any(reduced):
            return False
    return True


def _harmonic_coefficients(decomposition, h_part: VectorForm) -> dict:
    """Coefficients of a harmonic element against the RREF harmonic 2-basis.

    Keys: (basis row index, vector key) for the scalar complex, with the
    element decomposed frame vector by frame vector; (basis row index, None)
    for the vector-valued complex."""
    out: dict = {}
    if not h_part:
        return out
    pivots = decomposition.pivot_columns(2, "H")
    if decomposition.kind == "scalar":
        for key, form in h_part.components.items():
            coords = decomposition._object_coords(2, form)
            for r, p in enumerate(pivots):
                if coords[p]:
                    out[(r, key)] = coords[p]
    else:
        coords = decomposition._object_coords(2, h_part)
        for r, p in enumerate(pivots):
            if coords[p]:
                out[(r, None)] = coords[p]
    return out


def phi_recursion(L, decomposition=None, max_degree: int | None = None,
                  initial: VectorForm | None = None) -> PhiSeries:
    """Solve the Maurer-Cartan equation degree by degree up to ``max_degree``.

    ``L`` is a nilpotent Lie algebra (parallelisable path, scalar complex) or a
    ComplexStructureAlgebra (vector-valued complex; ``max_degree`` mandatory).
    ``initial`` overrides the generic Φ₁ with a specific harmonic element.
    """
    if isinstance(L, LieAlgebra):
        kind = "scalar"
        if decomposition is None:
            decomposition = hodge.build_decomposition(L)
        cap = L.nilpotency_index() if max_degree is None else max_degree
        central = L.descending_central_series()
    else:
        kind = "theta"
        if max_degree is None:
            raise MissingDegreeCap(
                "general structures need an explicit max_degree: the recursion "
                "need not terminate")
        if decomposition is None:
            decomposition = hodge.build_theta_decomposition(L)
        cap = max_degree
        central = None
    if decomposition.kind != kind:
        raise ValueError(f"decomposition kind {decomposition.kind!r} does not "
                         f"match the {kind!r} recursion path")

    if initial is not None:
        if initial.ambient is not L:
            raise AmbientMismatch("initial element lives over a different ambient")
        phi1, variables = initial, sorted(
            {v for f in initial.components.values()
             for p in f.terms.values() for v in p.variables()})
    else:
        phi1, variables = generic_harmonic_element(decomposition)

    series = PhiSeries(L, decomposition, kind, variables, cap)
    series.terms[1] = phi1
    obstruction_so_far: list[Polynomial] = []
    obstruction_gb = None

    for k in range(2, cap + 1):
        s_k = VectorForm.zero(L)
        for i in range(1, k):
            lo, hi = series.phi(i), series.phi(k - i)
            if lo and hi:
                s_k = s_k + series.bracket(lo, hi)
        series.bracket_sums[k] = s_k
        if not s_k:
            series.terms[k] = VectorForm.zero(L)
            series.harmonic_parts[k] = VectorForm.zero(L)
            continue
        if central is not None:
            depth = min(k - 1, len(central) - 1)
            sub = central[depth]
            if not _vector_in_subspace(s_k, sub.basis(), sub.pivots(), L.dim):
                raise RuntimeError(
                    f"internal invariant violated: bracket sum at degree {k} "
                    f"leaves central-series stage {depth}")
        exact_part = decomposition.project_exact(s_k, 2)
        if decomposition.is_closed(s_k, 2):
            harmonic_part = s_k - exact_part
        else:
            harmonic_part = decomposition.project_harmonic(s_k, 2)
            coexact_part = s_k - exact_part - harmonic_part
            if coexact_part:
                obstruction_so_far = [
                    p for part in series.harmonic_parts.values()
                    for p in _harmonic_coefficients(decomposition, part).values()]
                obstruction_so_far.extend(
                    _harmonic_coefficients(decomposition, harmonic_part).values())
                obstruction_gb = groebner.buchberger(obstruction_so_far, GREVLEX)
                bad = [c for form in coexact_part.components.values()
                       for c in form.terms.values()
                       if not obstruction_gb.contains(c)]
                if bad:
                    raise ClosednessViolation(k, coexact_part, bad)
                series.dropped_coexact[k] = coexact_part
        series.harmonic_parts[k] = harmonic_part
        series.terms[k] = -decomposition.delta_op(exact_part)
    return series


class ObstructionResult:
    """The harmonic part of [Φ,Φ]: coefficient polynomials and the normalized
    generator list of the obstruction ideal."""

    def __init__(self, harmonic_coefficients: dict, series: PhiSeries | None = None):
        self.harmonic_coefficients = harmonic_coefficients
        self.series = series
        normalized = []
        seen = set()
        for p in harmonic_coefficients.values():
            q = p.normalized(GREVLEX)
            if q and q not in seen:
                seen.add(q)
                normalized.append(q)
        normalized.sort(key=lambda g: GREVLEX.key(g.leading_monomial(GREVLEX)))
        self.generators: list[Polynomial] = normalized
        self.degree_profile: list[int] = [g.total_degree() for g in normalized]

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def coefficient_strings(self) -> dict[str, str]:
        out = {}
        for (r, key), p in sorted(self.harmonic_coefficients.items(),
                                  key=lambda kv: (kv[0][0], kv[0][1] or (0, False))):
            label = f"h2[{r}]" if key is None else f"h2[{r}]*{vector_key_str(key)}"
            out[label] = str(p)
        return out


def obstruction_map(L, series: PhiSeries | None = None,
                    decomposition=None) -> ObstructionResult:
    """Total obstruction Σ_k H(bracket sum at degree k) for parallelisable L."""
    if series is None:
        series = phi_recursion(L, decomposition=decomposition)
    dec = series.decomposition
    total: dict = {}
    for k in sorted(series.harmonic_parts):
        for key, p in _harmonic_coefficients(dec, series.harmonic_parts[k]).items():
            total[key] = total.get(key, Polynomial.zero()) + p
    total = {key: p for key, p in total.items() if p}
    return ObstructionResult(total, series)


def quadratic_obstruction_closed_form(L, decomposition=None) -> ObstructionResult:
    """Degree-2 obstruction from the closed determinant formula

        H[Φ₁,Φ₁] = H( 2 Σ_{i<j} Σ_{k<l} (t_i^k t_j^l − t_i^l t_j^k) ω̄^i∧ω̄^j ⊗ [X_k,X_l] ),

    built directly from minors and structure constants — an independent code
    path from the recursion, used for cross-validation."""
    from .polyring import minor2
    if decomposition is None:
        decomposition = hodge.build_decomposition(L)
    hbasis = decomposition.basis(1, "H")
    n = L.complex_dim
    total = VectorForm.zero(L)
    for i in range(1, len(hbasis) + 1):
        for j in range(i + 1, len(hbasis) + 1):
            wij = hbasis[i - 1].wedge(hbasis[j - 1])
            if not wij:
                continue
            for k in range(1, n + 1):
                for l in range(k + 1, n + 1):
                    br = L.vector_bracket(k, False, l, False)
                    if not br:
                        continue
                    coeff = minor2(i, j, k, l) * 2
                    for key, c in br.items():
                        total = total + VectorForm.single(
                            L, wij.scale(coeff * c), key[0], key[1])
    h_part = decomposition.project_harmonic(total, 2)
    return ObstructionResult(_harmonic_coefficients(decomposition, h_part))


def mc_residual(L, series: PhiSeries, subtract_harmonic: bool = True) -> VectorForm:
    """∂̄Φ + [Φ,Φ] − H[Φ,Φ] (the defining identity of the construction).

    With ``subtract_harmonic=False`` the plain defect ∂̄Φ + [Φ,Φ] is returned
    instead — nonzero exactly in the obstructed directions.  For capped series
    over general ambients the brackets are assembled degree by degree and
    truncated at the cap."""
    ambient = series.ambient
    if series.kind == "scalar":
        phi = series.full()
        residual = phi.delbar_theta()
        full_bracket = series.bracket(phi, phi)
        residual = residual + full_bracket
        if subtract_harmonic:
            residual = residual - series.decomposition.project_harmonic(full_bracket, 2)
        return residual
    residual = series.phi(1).delbar_theta()
    for k in range(2, series.max_degree + 1):
        s_k = VectorForm.zero(ambient)
        for i in range(1, k):
            lo, hi = series.phi(i), series.phi(k - i)
            if lo and hi:
                s_k = s_k + series.bracket(lo, hi)
        term = series.phi(k).delbar_theta() + s_k
        if subtract_harmonic:
            term = term - series.decomposition.project_harmonic(s_k, 2)
        residual = residual + term
    return residual


def smoothness_tests(L, decomposition=None, obstruction: ObstructionResult | None = None) -> dict:
    """Structural certificates: the wedge test on harmonic 1-forms, the
    free-2-step verdict, and polynomial vanishing of the obstruction map.

    For non-abelian L, ``lambda2_singular`` (some product of harmonic 1-forms
    is not ∂̄-exact) is equivalent to the quotient by the second central-series
    stage not being free — and certifies an obstructed direction."""
    if decomposition is None:
        decomposition = hodge.build_decomposition(L)
    hbasis = decomposition.basis(1, "H")
    wedge_exact = True
    for i in range(len(hbasis)):
        for j in range(i + 1, len(hbasis)):
            w = hbasis[i].wedge(hbasis[j])
            if w and not decomposition.in_space(w, "B", 2):
                wedge_exact = False
                break
        if not wedge_exact:
            break
    if obstruction is None:
        obstruction = obstruction_map(L, decomposition=decomposition)
    return {
        "lambda2_singular": (not L.is_abelian()) and not wedge_exact,
        "free_verdict": L.free_two_step_quotient_test().verdict,
        "obs_identically_zero": obstruction.is_zero,
    }


def parallelisable_directions(L, decomposition=None) -> dict:
    """The unobstructed subspace H¹ ⊗ z(g) and the cylinder-base dimension
    d = h^{0,1} · dim(g/z)."""
    if decomposition is None:
        decomposition = hodge.build_decomposition(L)
    z = L.center()
    m = decomposition.harmonic_dim(1)
    hbasis = decomposition.basis(1, "H")
    vectors = []
    for h in hbasis:
        for row in z.basis():
            vf = VectorForm.zero(L)
            for j, c in enumerate(row, start=1):
                if c:
                    vf = vf + VectorForm.single(L, h.scale(c), j)
            vectors.append(vf)
    return {
        "subspace": vectors,
        "subspace_dim": m * z.dim,
        "d": m * (L.dim - z.dim),
    }


def random_central_assignment(L, decomposition=None, rng: random.Random | None = None) -> dict:
    """A random rational t-grid point supported on H¹ ⊗ z(g)."""
    if decomposition is None:
        decomposition = hodge.build_decomposition(L)
    rng = rng or random.Random()
    z = L.center()
    m = decomposition.harmonic_dim(1)
    n = L.dim
    assignment = {(i, j): Fraction(0) for i in range(1, m + 1) for j in range(1, n + 1)}
    for i in range(1, m + 1):
        vec = [Fraction(0)] * n
        for row in z.basis():
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            for j in range(n):
                vec[j] += c * row[j]
        for j in range(n):
            assignment[(i, j + 1)] = vec[j]
    return assignment


# -- published row data for discrepancy annotations ---------------------------

def _overview_annotations(L, report: dict) -> list[dict]:
    """Cross-checks against the published summary-dimension formulas that
    disagree with the computed first-cohomology dimension; surfaced, not hidden."""
    notes: list[dict] = []
    h1 = report["h1_theta"]
    if L.is_abelian():
        k = L.dim
        published = k * k * (k + 1) // 2
        if published != h1:
            notes.append({
                "tag": "paper-discrepancy",
                "subject": "abelian smooth dimension",
                "computed": h1,
                "published": published,
                "note": (f"computed h^1(Theta) = k^2 = {h1} for the abelian algebra of "
                         f"dimension {k}; the published overview states "
                         f"k^2(k+1)/2 = {published}"),
            })
    elif (report["free_verdict"] == "free" and report["nu"] == 2
          and report["smooth"]):
        result = L.free_two_step_quotient_test()
        m = result.generator_count
        published = m * m * (m + 3) // 2
        if published != h1:
            notes.append({
                "tag": "paper-discrepancy",
                "subject": "free-2-step smooth dimension",
                "computed": h1,
                "published": published,
                "note": (f"computed h^1(Theta) = {h1} for the free 2-step algebra on "
                         f"{m} generators; the published overview states "
                         f"m^2(m+3)/2 = {published}"),
            })
    return notes


class KuranishiReport:
    """Aggregated analysis of one algebra, JSON-serializable and stable."""

    def __init__(self, data: dict):
        self.data = data

    def __getitem__(self, key):
        return self.data[key]

    def __eq__(self, other) -> bool:
        if isinstance(other, KuranishiReport):
            return self.data == other.data
        return NotImplemented

    def to_dict(self) -> dict:
        return self.data

    @staticmethod
    def from_dict(data: dict) -> "KuranishiReport":
        return KuranishiReport(data)

    def to_text(self) -> str:
        d = self.data
        if "kind" in d:
            lines = [
                f"algebra        {d['algebra']}",
                f"dim            {d['dim']}",
                f"kind           {d['kind']}",
                f"max degree     {d['max_degree']}",
                f"h^1(Theta)     {d['h1_theta']}",
                f"generators     {len(d['obstruction_generators'])}",
            ]
            for g in d["obstruction_generators"]:
                lines.append(f"    {g}")
            for k in sorted(d["phi"], key=int):
                lines.append(f"phi_{k}          {d['phi'][k]}")
            for k in sorted(d["dropped_coexact"], key=int):
                lines.append(f"dropped[{k}]     {d['dropped_coexact'][k]}")
            for note in d["annotations"]:
                lines.append(f"[{note['tag']}] {note['note']}")
            return "\n".join(lines)
        lines = [
            f"algebra        {d['algebra']}",
            f"dim            {d['dim']}",
            f"nu             {d['nu']}",
            f"h^1(Theta)     {d['h1_theta']}",
            f"hodge h^{{0,q}}  {d['hodge_numbers']}",
            f"free verdict   {d['free_verdict']}",
            f"smooth         {'yes' if d['smooth'] else 'no'}",
            f"generators     {len(d['obstruction_generators'])}",
        ]
        for g in d["obstruction_generators"]:
            lines.append(f"    {g}")
        lines.append(f"cylinder dim d {d['cylinder_dim']}")
        lines.append(f"central subspace dim {d['parallelisable_subspace']['dim']}")
        if d["kuranishi_dim"] is not None:
            lines.append(f"Kuranishi dim  {d['kuranishi_dim']} (smooth)")
        for note in d["annotations"]:
            lines.append(f"[{note['tag']}] {note['note']}")
        return "\n".join(lines)


def analyze(L: LieAlgebra, name: str | None = None) -> KuranishiReport:
    """Full parallelisable-path analysis of a validated nilpotent Lie algebra."""
    L.validate()
    decomposition = hodge.build_decomposition(L)
    series = phi_recursion(L, decomposition=decomposition)
    obstruction = obstruction_map(L, series=series)
    quadratic = quadratic_obstruction_closed_form(L, decomposition=decomposition)
    tests = smoothness_tests(L, decomposition=decomposition, obstruction=obstruction)
    directions = parallelisable_directions(L, decomposition=decomposition)
    hodge_nums = [decomposition.harmonic_dim(q) for q in range(L.dim + 1)]
    h1 = hodge_nums[1] * L.dim
    smooth = tests["obs_identically_zero"]
    data = {
        "algebra": name or L.name or f"dim-{L.dim} algebra",
        "dim": L.dim,
        "nu": L.nilpotency_index(),
        "hodge_numbers": hodge_nums,
        "theta_cohomology": [h * L.dim for h in hodge_nums],
        "h1_theta": h1,
        "free_verdict": tests["free_verdict"],
        "lambda2_singular": tests["lambda2_singular"],
        "smooth": smooth,
        "obstruction_generators": [str(g) for g in obstruction.generators],
        "degree_profile": obstruction.degree_profile,
        "quadratic_generators": [str(g) for g in quadratic.generators],
        "kuranishi_dim": h1 if smooth else None,
        "cylinder_dim": directions["d"],
        "parallelisable_subspace": {
            "dim": directions["subspace_dim"],
            "vectors": [str(v) for v in directions["subspace"]],
        },
    }
    data["annotations"] = _overview_annotations(L, data)
    return KuranishiReport(data)


def analyze_general(csa: ComplexStructureAlgebra, max_degree: int = 3,
                    initial: VectorForm | None = None,
                    name: str | None = None) -> KuranishiReport:
    """Capped analysis over a general integrable structure (vector-valued complex)."""
    decomposition = hodge.build_theta_decomposition(csa)
    series = phi_recursion(csa, decomposition=decomposition,
                           max_degree=max_degree, initial=initial)
    obstruction_by_degree = {}
    pivots = decomposition.pivot_columns(2, "H")
    generators: list[Polynomial] = []
    for k in sorted(series.harmonic_parts):
        coeffs = _harmonic_coefficients(decomposition, series.harmonic_parts[k])
        if coeffs:
            obstruction_by_degree[str(k)] = {f"h2[{r}]": str(p)
                                             for (r, _), p in sorted(coeffs.items())}
            generators.extend(coeffs.values())
    seen = set()
    gens = []
    for p in generators:
        q = p.normalized(GREVLEX)
        if q and q not in seen:
            seen.add(q)
            gens.append(q)
    gens.sort(key=lambda g: GREVLEX.key(g.leading_monomial(GREVLEX)))
    data = {
        "algebra": name or csa.name or f"dim-{csa.n} structure",
        "dim": csa.n,
        "kind": csa.classify(),
        "max_degree": max_degree,
        "space_dims": {str(q): decomposition.space_dims(q) for q in range(3)},
        "h1_theta": decomposition.harmonic_dim(1),
        "phi": {str(k): str(series.phi(k)) for k in sorted(series.terms)},
        "harmonic_parts": {str(k): str(v)
                           for k, v in sorted(series.harmonic_parts.items()) if v},
        "obstruction_by_degree": obstruction_by_degree,
        "obstruction_generators": [str(g) for g in gens],
        "dropped_coexact": {str(k): str(v)
                            for k, v in sorted(series.dropped_coexact.items())},
        "annotations": [],
    }
    return KuranishiReport(data)
