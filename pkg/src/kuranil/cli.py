"""Command-line interface: analyze algebras, list the catalog, verify it.

Exit codes: 0 on success, 1 when a verification check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import catalog
from .algebra import (
    ComplexStructureAlgebra,
    LieAlgebra,
    parse_complex_structure_file,
    parse_salamon,
    parse_structure_file,
    to_complex_structure,
)
from .exterior import ExteriorForm, VectorForm
from .groebner import (
    GroebnerBasis,
    GroebnerTimeout,
    buchberger,
    ideal_equal,
    ideal_intersect,
    normal_form,
)
from .hodge import build_theta_decomposition
from .kuranishi import KuranishiReport, analyze, analyze_general, phi_recursion
from .polyring import GREVLEX, LEX, MonomialOrder, Polynomial, parse_polynomial

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class InputError(Exception):
    """Unresolvable CLI target or unparsable input file."""


# -- input resolution --------------------------------------------------------


def load_algebra(target: str) -> LieAlgebra | ComplexStructureAlgebra:
    """Resolve ``target``: catalog name/alias, inline structure string, or file.

    Files whose first effective line starts with ``dw`` are read as complex
    structures; everything else as structure-constant files.
    """
    try:
        return catalog.get(target).build()
    except KeyError:
        pass
    stripped = target.strip()
    if stripped.startswith("("):
        try:
            return parse_salamon(stripped)
        except ValueError as exc:
            raise InputError(f"cannot parse structure string {target!r}: {exc}") from None
    if os.path.exists(target):
        try:
            text = open(target, encoding="utf-8").read()
        except OSError as exc:
            raise InputError(f"cannot read {target!r}: {exc}") from None
        try:
            if _looks_like_complex_structure(text):
                return parse_complex_structure_file(
                    text, name=os.path.basename(target))
            return parse_structure_file(text, name=os.path.basename(target))
        except ValueError as exc:
            raise InputError(f"cannot parse {target!r}: {exc}") from None
    raise InputError(
        f"{target!r} is neither a catalog name, a structure string, nor a file")


def _looks_like_complex_structure(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("dim"):
            continue
        return line.startswith("dw")
    return False


# -- verification checks -----------------------------------------------------


@dataclass
class CheckResult:
    entry: str
    check: str
    status: str  # PASS | FAIL | SKIP
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"


def _timed(results: list[CheckResult], entry: str, check: str, started: float,
           passed: bool, detail: str = "") -> None:
    results.append(CheckResult(entry, check, "PASS" if passed else "FAIL",
                               detail, time.monotonic() - started))


def _contained(gens: list[Polynomial], basis: GroebnerBasis) -> Polynomial | None:
    """First generator not in the ideal spanned by ``basis``, or None."""
    for g in gens:
        if normal_form(g, basis):
            return g
    return None


def run_entry_checks(entry: catalog.CatalogEntry, timeout: float = 300.0,
                     order: MonomialOrder = GREVLEX) -> list[CheckResult]:
    """All verification checks for one catalog entry.

    ``timeout`` bounds each Gröbner-heavy check (component intersections);
    exceeding it yields SKIP, not FAIL.
    """
    if entry.kind == "general":
        return _general_checks(entry, order)
    return _parallelisable_checks(entry, timeout, order)


def _parallelisable_checks(entry: catalog.CatalogEntry, timeout: float,
                           order: MonomialOrder) -> list[CheckResult]:
    results: list[CheckResult] = []
    started = time.monotonic()
    algebra = entry.build()
    report = analyze(algebra)
    computed = (report["nu"], report["h1_theta"],
                not report["obstruction_generators"])
    expected = (entry.nu, entry.computed_h1, entry.smooth)
    _timed(results, entry.name, "invariants", started, computed == expected,
           f"nu={computed[0]} h1={computed[1]} smooth={'yes' if computed[2] else 'no'}")

    if entry.published_h1 is not None and entry.published_h1 != entry.computed_h1:
        started = time.monotonic()
        notes = [a for a in report["annotations"]
                 if a.get("tag") == "paper-discrepancy"
                 and a.get("published") == entry.published_h1]
        _timed(results, entry.name, "h1-annotation", started, bool(notes),
               f"annotations={len(notes)}")

    gens = [parse_polynomial(s) for s in report["obstruction_generators"]]

    if entry.d is not None:
        started = time.monotonic()
        _timed(results, entry.name, "cylinder-dim", started,
               report["cylinder_dim"] == entry.d,
               f"d={report['cylinder_dim']} expected {entry.d}")

    if entry.expected_generators:
        started = time.monotonic()
        _timed(results, entry.name, "expected-generators", started,
               ideal_equal(gens, entry.expected_ideal(), order=order),
               f"{len(gens)} generators")

    if entry.reducibility:
        results.append(_reducibility_check(entry, gens, order))

    if entry.ideal_file:
        results.append(_containment_check(entry, gens, order))
        results.append(_intersection_check(entry, gens, timeout, order))
    return results


def _readings(entry: catalog.CatalogEntry):
    yield "main", entry.published_components()
    if entry.has_variant:
        yield "variant", entry.published_components(variant=True)


def _containment_check(entry: catalog.CatalogEntry, gens: list[Polynomial],
                       order: MonomialOrder) -> CheckResult:
    """The computed ideal must lie in every stored component (I ⊆ ∩ Qᵢ)."""
    started = time.monotonic()
    failure = ""
    for label, components in _readings(entry):
        offender = None
        for idx, component in enumerate(components, start=1):
            basis = buchberger(component, order=order)
            bad = _contained(gens, basis)
            if bad is not None:
                offender = f"component {idx} misses {bad}"
                break
        if offender is None:
            return CheckResult(entry.name, "component-containment", "PASS",
                               f"{label} reading", time.monotonic() - started)
        failure = f"{label} reading: {offender}"
    return CheckResult(entry.name, "component-containment", "FAIL", failure,
                       time.monotonic() - started)


def _intersection_check(entry: catalog.CatalogEntry, gens: list[Polynomial],
                        timeout: float, order: MonomialOrder) -> CheckResult:
    """The stored components must intersect exactly to the computed ideal."""
    started = time.monotonic()
    deadline = started + timeout
    failure = ""
    for label, components in _readings(entry):
        try:
            # Equality forces the computed ideal into every component, so a
            # reading that fails that containment cannot match; settling it
            # with per-component reductions is far cheaper than the
            # elimination fold and keeps the budget for viable readings.
            offender = None
            for component in components:
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    raise GroebnerTimeout("intersection budget exhausted")
                basis = buchberger(component, order=order,
                                   time_limit=remaining)
                bad = _contained(gens, basis)
                if bad is not None:
                    offender = bad
                    break
            if offender is not None:
                failure = (f"{label} reading: intersection differs from "
                           f"computed ideal ({offender} escapes a component)")
                continue
            intersection = components[0]
            for component in components[1:]:
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    raise GroebnerTimeout("intersection budget exhausted")
                intersection = ideal_intersect(intersection, component,
                                               time_limit=remaining)
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise GroebnerTimeout("intersection budget exhausted")
            if ideal_equal(intersection, gens, order=order,
                           time_limit=remaining):
                return CheckResult(entry.name, "intersection", "PASS",
                                   f"{label} reading",
                                   time.monotonic() - started)
            failure = f"{label} reading: intersection differs from computed ideal"
        except GroebnerTimeout:
            return CheckResult(entry.name, "intersection", "SKIP",
                               f"timed out after {timeout:.0f}s",
                               time.monotonic() - started)
    return CheckResult(entry.name, "intersection", "FAIL", failure,
                       time.monotonic() - started)


def _reducibility_check(entry: catalog.CatalogEntry, gens: list[Polynomial],
                        order: MonomialOrder) -> CheckResult:
    """Certify V(I) = V(linear) ∪ V(rank) through exact ideal membership:
    I ⊆ (linear), I ⊆ (rank), and products · (linear gens) lie back in I."""
    started = time.monotonic()
    families = {key: [parse_polynomial(s) for s in group]
                for key, group in entry.reducibility.items()}
    ideal_basis = buchberger(gens, order=order)
    problems = []
    for key in ("linear", "rank"):
        bad = _contained(gens, buchberger(families[key], order=order))
        if bad is not None:
            problems.append(f"{bad} not in ({key})")
    for product in families["products"]:
        if normal_form(product, ideal_basis):
            problems.append(f"{product} not in computed ideal")
    return CheckResult(entry.name, "reducibility", "PASS" if not problems else "FAIL",
                       "; ".join(problems) or "union certificate holds",
                       time.monotonic() - started)


def _general_checks(entry: catalog.CatalogEntry,
                    order: MonomialOrder) -> list[CheckResult]:
    """Recursion checks for the dimension-7 mixed structure: the second-order
    obstruction vanishes while a third-order one survives."""
    results: list[CheckResult] = []
    csa = entry.build()
    started = time.monotonic()
    decomposition = build_theta_decomposition(csa, max_degree=3)
    _timed(results, entry.name, "h1", started,
           decomposition.harmonic_dim(1) == entry.computed_h1,
           f"h1={decomposition.harmonic_dim(1)}")

    started = time.monotonic()
    initial = (VectorForm.single(csa, ExteriorForm.covector(csa, 3, barred=True), 1)
               + VectorForm.single(csa, ExteriorForm.covector(csa, 4, barred=True), 2))
    series = phi_recursion(csa, decomposition=decomposition, max_degree=3,
                           initial=initial)
    expected_phi2 = VectorForm.single(
        csa, ExteriorForm.covector(csa, 7, barred=True).scale(2), 6)
    second_ok = (not series.harmonic_parts[2]) and series.phi(2) == expected_phi2
    _timed(results, entry.name, "second-order", started, second_ok,
           f"phi_2 = {series.phi(2)}")

    started = time.monotonic()
    w3 = ExteriorForm.covector(csa, 3, barred=True)
    w5 = ExteriorForm.covector(csa, 5, barred=True)
    expected_h3 = VectorForm.single(csa, w3.wedge(w5).scale(4), 6)
    _timed(results, entry.name, "third-order", started,
           series.harmonic_parts[3] == expected_h3,
           f"H(S_3) = {series.harmonic_parts[3]}")
    return results


def run_catalog_checks(names: list[str] | None = None, timeout: float = 300.0,
                       order: MonomialOrder = GREVLEX,
                       jobs: int = 1) -> list[CheckResult]:
    """Run checks for the selected entries (all when ``names`` is empty)."""
    if names:
        entries = [catalog.get(n) for n in names]
    else:
        entries = list(catalog.entries())
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_entry_checks, e, timeout, order)
                       for e in entries]
            groups = [f.result() for f in futures]
    else:
        groups = [run_entry_checks(e, timeout, order) for e in entries]
    return [result for group in groups for result in group]


# -- commands ----------------------------------------------------------------


def _order_from_args(args) -> MonomialOrder:
    return LEX if args.order == "lex" else GREVLEX


def cmd_analyze(args) -> int:
    algebra = load_algebra(args.algebra)
    if args.general or isinstance(algebra, ComplexStructureAlgebra):
        csa = (algebra if isinstance(algebra, ComplexStructureAlgebra)
               else to_complex_structure(algebra))
        report = analyze_general(csa, max_degree=args.max_degree or 3)
    else:
        report = analyze(algebra)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.to_text())
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.json:
        payload = [{
            "name": e.name, "aliases": list(e.aliases), "kind": e.kind,
            "dim": e.dim, "nu": e.nu, "h1_theta": e.computed_h1,
            "published_h1": e.published_h1, "smooth": e.smooth,
            "irreducible": e.irreducible, "reduced": e.reduced,
            "cylinder_dim": e.d, "has_ideal_data": e.ideal_file is not None,
            "notes": e.notes,
        } for e in catalog.entries()]
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    header = f"{'name':<28} {'dim':>3} {'nu':>2} {'h1':>3} {'smooth':>6} {'d':>3}  notes"
    print(header)
    print("-" * len(header))
    for e in catalog.entries():
        print(f"{e.name:<28} {e.dim:>3} {e.nu:>2} {e.computed_h1:>3} "
              f"{'yes' if e.smooth else 'no':>6} "
              f"{e.d if e.d is not None else '-':>3}  {e.notes}")
    return EXIT_OK


def cmd_verify(args) -> int:
    order = _order_from_args(args)
    names = args.names
    if names and all(n.lower() == "all" for n in names):
        names = []
    results = run_catalog_checks(names or None, timeout=args.timeout,
                                 order=order, jobs=args.jobs)
    passed = skipped = 0
    for r in results:
        line = f"[{r.status}] {r.entry} :: {r.check} ({r.seconds:.1f}s)"
        if r.detail:
            line += f" — {r.detail}"
        print(line)
        if r.status == "PASS":
            passed += 1
        elif r.status == "SKIP":
            skipped += 1
    total = len(results)
    summary = f"PASSED {passed}/{total}"
    if skipped:
        summary += f"  SKIPPED {skipped}"
    print(summary)
    return EXIT_OK if passed + skipped == total else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kuranil",
        description="Kuranishi obstruction ideals of nilpotent Lie algebras "
                    "in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser(
        "analyze", help="compute the deformation report for one algebra")
    p_analyze.add_argument("algebra",
                           help="catalog name, structure string like "
                                "'(0,0,12)', or a structure file")
    p_analyze.add_argument("--json", action="store_true",
                           help="emit the report as JSON")
    p_analyze.add_argument("--general", action="store_true",
                           help="use the complex-structure recursion even for "
                                "parallelisable input")
    p_analyze.add_argument("--max-degree", type=int, default=None, metavar="N",
                           help="truncation degree for the general recursion "
                                "(default 3)")
    p_analyze.set_defaults(func=cmd_analyze)

    p_catalog = sub.add_parser("catalog", help="list the built-in algebras")
    p_catalog.add_argument("--json", action="store_true")
    p_catalog.set_defaults(func=cmd_catalog)

    p_verify = sub.add_parser(
        "verify", help="check computed invariants against the stored data")
    p_verify.add_argument("names", nargs="*",
                          help="catalog entries to verify; 'all' or no "
                               "argument selects every entry")
    p_verify.add_argument("--timeout", type=float, default=300.0,
                          metavar="SECONDS",
                          help="budget per Gröbner-heavy check (default 300)")
    p_verify.add_argument("--jobs", type=int, default=1, metavar="N",
                          help="verify entries concurrently")
    p_verify.add_argument("--order", choices=("grevlex", "lex"),
                          default="grevlex",
                          help="monomial order for ideal computations")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
