# app/cli/commands.py
"""
Command handlers. Each handler turns a parsed problem and a resolved
configuration into report sections; main.py wraps them into a Report.
"""
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

from loguru import logger
from pydantic import ValidationError

from app.cli.problem import ProblemSpec
from app.cli.report import Section
from app.config import Settings
from app.core.boundary import (
    HomBackend,
    MatrixFactorization,
    boundary_gram,
    coboundary_check,
    hdf_cohomology,
    hom_complex,
    jacobian_reduced_complex,
    periodic_double_complex,
    shift_compatibility,
    shifted_dims,
    transport_check,
)
from app.core.bulk import (
    BulkTrace,
    MilnorAlgebra,
    TraceBackend,
    bulk_gram,
    bulk_trace,
    critical_locus_finite,
    frobenius_check,
    hessian_class,
    ideal_check,
    jacobian_ideal,
    koszul_cohomology_truncated,
    milnor_algebra,
    scaling_check,
)
from app.core.category import (
    build_hdf_category,
    calabi_yau_check,
    close_under_shift,
    even_subcategory,
    graded_dims_agree,
    hdf_transport_check,
    same_table,
    serre_check,
    supercompletion,
)
from app.core.exceptions import SemanticError
from app.core.groebner import MonomialOrder, format_poly
from app.core.homology import DoubleComplex, cohomology_dims, spectral_pages, total_complex
from app.utils.helpers import keyed_dims, matrix_strings, rational, rationals

SCALING_FACTORS = (Fraction(2), Fraction(-3), Fraction(1, 5))

OPTION_FIELDS = {
    "order": "MONOMIAL_ORDER",
    "trace": "TRACE_BACKEND",
    "scale": "VOLUME_SCALE",
    "truncate": "TRUNCATION",
    "window": "SPECTRAL_WINDOW",
}


def _field_for(key: str, value: str) -> str:
    if key == "backend":
        return "TRACE_BACKEND" if value in (b.value for b in TraceBackend) else "HOM_BACKEND"
    return OPTION_FIELDS[key]


def resolve_settings(options: Dict[str, str], flags: Optional[Dict[str, Optional[str]]] = None) -> Settings:
    """
    CLI flag > option statement > default.

    Raises:
        SemanticError: a value fails validation
    """
    values: Dict[str, str] = {}
    for source in (options, flags or {}):
        for key, value in source.items():
            if value is not None:
                values[_field_for(key, value)] = value
    try:
        return Settings(**values)
    except ValidationError as exc:
        raise SemanticError(f"invalid option: {exc.errors()[0]['msg']}")


def _order(config: Settings) -> MonomialOrder:
    return MonomialOrder(config.MONOMIAL_ORDER)


def _hom_backend(config: Settings) -> HomBackend:
    return HomBackend(config.HOM_BACKEND)


def _bulk(spec: ProblemSpec, config: Settings) -> Tuple[Optional[MilnorAlgebra], Optional[BulkTrace]]:
    jd = jacobian_ideal(spec.pair, _order(config))
    finite, _ = critical_locus_finite(jd)
    if not finite:
        return None, None
    ma = milnor_algebra(jd)
    return ma, bulk_trace(ma, TraceBackend(config.TRACE_BACKEND), config.volume_scale)


# ========================================
# bulk
# ========================================

def run_bulk(spec: ProblemSpec, config: Settings) -> List[Section]:
    pair = spec.pair
    section = Section(name="bulk", data={"W": format_poly(pair.W), "variables": pair.variables})
    jd = jacobian_ideal(pair, _order(config))
    finite, mu = critical_locus_finite(jd)
    section.data["finite"] = finite
    if not finite:
        section.skip("bulk_duality", "critical locus not finite")
        return [section]

    ma = milnor_algebra(jd)
    backend = TraceBackend(config.TRACE_BACKEND)
    tr = bulk_trace(ma, backend, config.volume_scale)
    gram = bulk_gram(ma, tr)
    scale = config.volume_scale
    section.data.update({
        "milnor_number": mu,
        "basis": ma.labels(),
        "trace_backend": backend.value,
        "scale": rational(scale),
        "trace": rationals(tr.covector),
        "hessian_class": rationals(hessian_class(ma)),
        "gram": matrix_strings(gram.matrix),
        "determinant": rational(gram.determinant),
    })
    section.check("nondegenerate", gram.nondegenerate, f"det = {rational(gram.determinant)}")
    section.check("symmetric", gram.symmetric)
    section.check("frobenius", frobenius_check(ma, tr))
    section.check("trace_kills_ideal", ideal_check(ma, tr))
    calibration = tr(hessian_class(ma))
    section.check("hessian_calibration", calibration == mu * scale * scale, f"λ(Hess W) = {rational(calibration)}")
    for c in SCALING_FACTORS:
        section.check(f"scaling_{rational(c)}", scaling_check(ma, backend, c))
    logger.info(f"✅ bulk sector of {pair}: μ = {mu}, det = {gram.determinant}")
    return [section]


# ========================================
# koszul
# ========================================

def run_koszul(spec: ProblemSpec, config: Settings) -> List[Section]:
    pair = spec.pair
    result = koszul_cohomology_truncated(pair, config.TRUNCATION)
    finite, mu = critical_locus_finite(jacobian_ideal(pair, _order(config)))
    section = Section(name="koszul", data={
        "W": format_poly(pair.W),
        "truncation": result.low.degree_bound,
        "truncation_check": result.high.degree_bound,
        "node_dims": {str(k): n for k, n in sorted(result.low.node_dims.items())},
        "cohomology": {str(k): n for k, n in sorted(result.low.cohomology.items())},
        "cohomology_check": {str(k): n for k, n in sorted(result.high.cohomology.items())},
        "stabilized": result.stabilized,
        "finite": finite,
    })
    if finite:
        section.data["milnor_number"] = mu
        section.check("stabilized", result.stabilized)
        section.check("negative_degrees_vanish", result.negative_vanishes)
        section.check("h0_is_milnor_number", result.cohomology.get(0) == mu, f"H^0 = {result.cohomology.get(0)}")
    else:
        section.skip("stabilized", "critical locus not finite")
        section.check(
            "non_isolated_detected",
            not result.negative_vanishes,
            "negative-degree cohomology survives" if not result.negative_vanishes else "",
        )
    return [section]


# ========================================
# boundary
# ========================================

def _object_section(
    name: str, a: MatrixFactorization, tr: BulkTrace, backend: HomBackend, truncation: Optional[int]
) -> Section:
    h = hom_complex(a, a)
    cohomology = hdf_cohomology(h, backend, truncation)
    section = Section(name=f"object:{name}", data={
        "rank": list(a.rank),
        "end_dims": list(cohomology.dims),
        "backend": cohomology.backend.value,
    })
    if cohomology.truncation is not None:
        section.data["truncation"] = cohomology.truncation
        section.check("stabilized", cohomology.stabilized)
    if a.ring.ngens == 1:
        exact = hdf_cohomology(h, HomBackend.SNF).dims
        truncated = hdf_cohomology(h, HomBackend.TRUNCATE, truncation).dims
        section.check("backend_agreement", exact == truncated, f"snf {exact}, truncate {truncated}")
    section.check("trace_kills_coboundaries", coboundary_check(a, tr))
    shift = shift_compatibility(a, tr, backend, truncation)
    section.check("shift_compatibility", all(c.holds for c in shift), f"sign {shift[0].sign}" if shift else "")
    section.check("transport_isomorphism", transport_check(a, a, backend, truncation).isomorphism)
    dims = shifted_dims(a, a, backend, truncation)
    section.data["shifted_dims"] = {k: list(v) for k, v in dims.items()}
    section.check("shifted_dims_agree", len({tuple(v) for v in dims.values()}) == 1)
    return section


def run_boundary(spec: ProblemSpec, config: Settings) -> List[Section]:
    pair = spec.pair
    summary = Section(name="boundary", data={
        "W": format_poly(pair.W),
        "signature": pair.signature,
        "factorizations": list(spec.factorizations),
    })
    if not spec.factorizations:
        summary.skip("boundary_duality", "no factorizations declared")
        return [summary]
    _, tr = _bulk(spec, config)
    if tr is None:
        summary.skip("boundary_duality", "critical locus not finite")
        return [summary]
    backend, truncation = _hom_backend(config), config.TRUNCATION
    sections = [summary]
    for name, a in spec.factorizations.items():
        sections.append(_object_section(name, a, tr, backend, truncation))
    for (n1, a1), (n2, a2) in product(spec.factorizations.items(), repeat=2):
        gram = boundary_gram(a1, a2, tr, backend, truncation)
        section = Section(name=f"pair:{n1},{n2}", data={
            "hom_dims": list(gram.forward.dims),
            "gram": matrix_strings(gram.matrix),
            "row_parities": list(gram.row_parities),
            "col_parities": list(gram.col_parities),
            "rank": gram.rank,
        })
        section.check("nondegenerate", gram.nondegenerate, gram.verdict)
        section.check("graded_cyclic", gram.cyclic)
        section.check("parity_selection", gram.parity_selected)
        sections.append(section)
    logger.info(f"✅ boundary sector of {pair} on {len(spec.factorizations)} factorizations")
    return sections


# ========================================
# spectral
# ========================================

def _spectral_section(K: DoubleComplex, config: Settings, name: str = "spectral") -> Section:
    ss = spectral_pages(K, config.SPECTRAL_R_MAX)
    totals = cohomology_dims(total_complex(K))
    section = Section(name=name, data={
        "condition": ss.condition,
        "stable_page": ss.stable_page,
        "pages": [{"r": page.r, "dims": keyed_dims(page.nonzero())} for page in ss.pages],
        "infinity": keyed_dims({pos: n for pos, n in ss.infinity.items() if n}),
        "total": {str(n): d for n, d in sorted(totals.items())},
        "graded": {str(n): {str(p): g for p, g in fc.graded.items() if g} for n, fc in sorted(ss.filtered.items())},
    })
    agree = all(
        sum(n for (p, q), n in ss.infinity.items() if p + q == degree) == dim
        for degree, dim in totals.items()
    )
    section.check("infinity_matches_total", agree)
    monotone = all(
        later.dims.get(pos, 0) <= n
        for earlier, later in zip(ss.pages, ss.pages[1:])
        for pos, n in earlier.dims.items()
    )
    section.check("pages_decrease", monotone)
    return section


def run_spectral(spec: ProblemSpec, config: Settings) -> List[Section]:
    if spec.has_double_complex:
        K = DoubleComplex(dict(spec.nodes), dict(spec.d1), dict(spec.d2)).validate()
        return [_spectral_section(K, config)]
    if not spec.factorizations:
        raise SemanticError("spectral needs node statements or a factorization")
    name, a = next(iter(spec.factorizations.items()))
    ma, _ = _bulk(spec, config)
    if ma is None:
        raise SemanticError("periodic model needs a finite critical locus")
    M = jacobian_reduced_complex(hom_complex(a, a), ma)
    periodic = periodic_double_complex(M, config.spectral_window)
    section = _spectral_section(periodic.complex, config)
    section.data["model"] = f"periodic End({name}) ⊗ R/J"
    section.data["window"] = list(config.spectral_window)
    expected = M.cohomology_dims()
    window_totals = periodic.total_dims()
    section.data["window_totals"] = {str(n): d for n, d in window_totals.items()}
    section.check(
        "periodic_totals",
        all(d == expected[n % 2] for n, d in window_totals.items()),
        f"H(End ⊗ R/J) = {list(expected)}",
    )
    return [section]


# ========================================
# category
# ========================================

def run_category(spec: ProblemSpec, config: Settings) -> List[Section]:
    pair = spec.pair
    summary = Section(name="category", data={"W": format_poly(pair.W), "signature": pair.signature})
    if not spec.factorizations:
        summary.skip("category_duality", "no factorizations declared")
        return [summary]
    _, tr = _bulk(spec, config)
    if tr is None:
        summary.skip("category_duality", "critical locus not finite")
        return [summary]
    objects = close_under_shift(spec.factorizations.values())
    t = build_hdf_category(objects, tr, _hom_backend(config), config.TRUNCATION)
    summary.data.update({
        "objects": t.objects,
        "hom_dims": {f"{a},{b}": list(t.graded_dim(a, b)) for a, b in product(t.objects, repeat=2)},
        "traces": {a: rationals(t.traces[a]) for a in t.objects},
    })
    summary.check("table_axioms", True, "associativity, units and parity verified")

    shift = t.shift.objects
    shifted = all(
        t.graded_dim(a, shift[b]) == t.graded_dim(a, b)[::-1] == t.graded_dim(shift[a], b)
        for a, b in product(t.objects, repeat=2)
    )
    summary.check("shifted_dims_agree", shifted)
    summary.check("sigma_involution", all(shift[shift[a]] == a for a in t.objects))

    cy = calabi_yau_check(t)
    summary.check("trace_parity", cy.parity_supported)
    summary.check("graded_cyclic", cy.cyclic)
    summary.check("pairings_nondegenerate", cy.nondegenerate)

    ev = even_subcategory(t)
    summary.check("gr_ev_dims", graded_dims_agree(supercompletion(ev), t))
    summary.check("ev_gr_table", same_table(even_subcategory(supercompletion(ev)), ev))
    summary.check("transport_functor", hdf_transport_check(t).holds)

    sections = [summary]
    for verdict in serre_check(t, pair.d):
        section = Section(name=f"serre:{verdict.source},{verdict.target}", data={
            "pairing": matrix_strings(verdict.matrix),
            "rank": verdict.rank,
            "verdict": verdict.verdict,
        })
        section.check("serre_identity", verdict.identity_holds)
        section.check("serre_pairing", verdict.nondegenerate, verdict.verdict)
        sections.append(section)
    logger.info(f"✅ category on {len(t.objects)} objects checked against S = Σ^{pair.d}")
    return sections


COMMANDS: Dict[str, Callable[[ProblemSpec, Settings], List[Section]]] = {
    "bulk": run_bulk,
    "koszul": run_koszul,
    "boundary": run_boundary,
    "spectral": run_spectral,
    "category": run_category,
}
