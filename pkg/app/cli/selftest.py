# app/cli/selftest.py
"""
Invariant battery over the built-in desk models.

Every block is one report section; randomized blocks draw from a single
random.Random seeded with SELFTEST_SEED so reruns are identical.
"""
import random
from fractions import Fraction
from typing import List, Sequence, Tuple

from loguru import logger

from app.cli.report import Section
from app.config import Settings
from app.core.boundary import (
    HomBackend,
    MatrixFactorization,
    PolyMatrix,
    boundary_gram,
    coboundary_check,
    hdf_cohomology,
    hom_complex,
    mf_validate,
    shift_compatibility,
    shift_mf,
    tensor_mf,
)
from app.core.bulk import (
    LGPair,
    TraceBackend,
    bulk_gram,
    bulk_trace,
    critical_locus_finite,
    hessian_class,
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
from app.core.exceptions import PreconditionFailed
from app.core.gradedpair import GradedVS, Grading, contraction_identity_battery, ev_matrix, is_signed_permutation
from app.core.groebner import make_ring
from app.core.homology import (
    cohomology_dims,
    dual_complex,
    filtered_compare,
    spectral_pages,
    total_complex,
)
from app.core.homology.generators import (
    quasi_isomorphic_inclusion,
    random_complex,
    random_double_complex,
    violating_inclusion,
)

SCALES = (Fraction(2), Fraction(-3), Fraction(1, 5))
QIS_INCLUSIONS = 20
VIOLATING_INCLUSIONS = 5
DUALITY_COMPLEXES = 50


# ========================================
# Desk models
# ========================================

def potential(variables: Sequence[str], builder) -> LGPair:
    R = make_ring(variables)
    return LGPair(builder(*R.gens))


def bulk_suite() -> List[Tuple[str, LGPair]]:
    return [
        ("x^2", potential(["x"], lambda x: x**2)),
        ("x^3", potential(["x"], lambda x: x**3)),
        ("x^4", potential(["x"], lambda x: x**4)),
        ("x^5", potential(["x"], lambda x: x**5)),
        ("x^3+y^3", potential(["x", "y"], lambda x, y: x**3 + y**3)),
        ("x^3+y^4", potential(["x", "y"], lambda x, y: x**3 + y**4)),
        ("x^2+y^2+z^2", potential(["x", "y", "z"], lambda x, y, z: x**2 + y**2 + z**2)),
    ]


def monomial_mf(n: int, a: int) -> MatrixFactorization:
    """(x^a | x^(n-a)) factorizing x^n"""
    R = make_ring(["x"])
    x = R.gens[0]
    F = PolyMatrix.from_rows(R, [[x**a]], cols=1)
    G = PolyMatrix.from_rows(R, [[x**(n - a)]], cols=1)
    return mf_validate(1, 1, F, G, x**n, f"P{a}")


def quadric_tensor() -> MatrixFactorization:
    """(x | x) ⊗ (y | y) factorizing x² + y²"""
    R = make_ring(["x", "y"])
    x, y = R.gens
    a = mf_validate(1, 1, PolyMatrix.from_rows(R, [[x]], cols=1), PolyMatrix.from_rows(R, [[x]], cols=1), x**2, "X")
    b = mf_validate(1, 1, PolyMatrix.from_rows(R, [[y]], cols=1), PolyMatrix.from_rows(R, [[y]], cols=1), y**2, "Y")
    return tensor_mf(a, b)


# ========================================
# Bulk sector
# ========================================

def check_milnor_numbers() -> Section:
    section = Section(name="milnor_numbers")
    cases = [(f"x^{n + 1}", potential(["x"], lambda x, k=n + 1: x**k), n) for n in range(1, 9)]
    cases += [
        ("x^3+y^3", potential(["x", "y"], lambda x, y: x**3 + y**3), 4),
        ("x^2+y^2+z^2", potential(["x", "y", "z"], lambda x, y, z: x**2 + y**2 + z**2), 1),
    ]
    for label, pair, expected in cases:
        finite, mu = critical_locus_finite(jacobian_ideal(pair))
        section.data[label] = mu
        section.check(f"mu({label})", finite and mu == expected, f"μ = {mu}, expected {expected}")
    return section


def check_bulk_suite() -> Section:
    section = Section(name="bulk_suite")
    for label, pair in bulk_suite():
        ma = milnor_algebra(jacobian_ideal(pair))
        for backend in TraceBackend:
            # bulk_trace raises when λ(Hess W) ≠ μ
            tr = bulk_trace(ma, backend, Fraction(1))
            gram = bulk_gram(ma, tr)
            section.check(f"{label}/{backend.value}/nondegenerate", gram.nondegenerate, f"det = {gram.determinant}")
            section.check(
                f"{label}/{backend.value}/calibration",
                tr(hessian_class(ma)) == ma.dimension,
            )
            section.check(
                f"{label}/{backend.value}/scaling",
                all(scaling_check(ma, backend, c) for c in SCALES),
            )
    return section


def check_koszul_suite() -> Section:
    section = Section(name="koszul_suite")
    for label, pair in bulk_suite():
        result = koszul_cohomology_truncated(pair)
        _, mu = critical_locus_finite(jacobian_ideal(pair))
        section.check(
            f"{label}",
            result.stabilized and result.negative_vanishes and result.cohomology.get(0) == mu,
            f"H = {dict(sorted(result.cohomology.items()))}",
        )
    degenerate = potential(["x", "y"], lambda x, y: x**2 * y)
    result = koszul_cohomology_truncated(degenerate)
    section.check("x^2*y/non_isolated_detected", not result.negative_vanishes)
    return section


# ========================================
# Spectral sequences and comparison
# ========================================

def check_spectral(rng: random.Random, instances: int) -> Section:
    section = Section(name="spectral_random", data={"instances": instances})
    converged, monotone = 0, 0
    for _ in range(instances):
        K = random_double_complex(rng, width=4, height=4, max_dim=3)
        ss = spectral_pages(K)
        totals = cohomology_dims(total_complex(K))
        if all(
            sum(n for (p, q), n in ss.infinity.items() if p + q == degree) == dim
            for degree, dim in totals.items()
        ):
            converged += 1
        if all(
            later.dims.get(pos, 0) <= n
            for earlier, later in zip(ss.pages, ss.pages[1:])
            for pos, n in earlier.dims.items()
        ):
            monotone += 1
    section.check("infinity_matches_total", converged == instances, f"{converged}/{instances}")
    section.check("pages_decrease", monotone == instances, f"{monotone}/{instances}")
    return section


def check_filtered_compare(rng: random.Random) -> Section:
    section = Section(name="filtered_compare")
    isomorphic = 0
    for _ in range(QIS_INCLUSIONS):
        K = random_double_complex(rng, width=3, height=3, max_dim=2)
        comparison = filtered_compare(quasi_isomorphic_inclusion(rng, K))
        if comparison.all_isomorphisms and comparison.totals_agree:
            isomorphic += 1
    section.check("quasi_isomorphic_columns", isomorphic == QIS_INCLUSIONS, f"{isomorphic}/{QIS_INCLUSIONS}")
    rejected = 0
    for _ in range(VIOLATING_INCLUSIONS):
        K = random_double_complex(rng, width=3, height=3, max_dim=2)
        try:
            filtered_compare(violating_inclusion(rng, K))
        except PreconditionFailed:
            rejected += 1
    section.check("violations_rejected", rejected == VIOLATING_INCLUSIONS, f"{rejected}/{VIOLATING_INCLUSIONS}")
    return section


def check_finite_duality(rng: random.Random) -> Section:
    section = Section(name="finite_duality")
    agree = 0
    for _ in range(DUALITY_COMPLEXES):
        c = random_complex(rng, length=rng.randint(1, 4), max_dim=3, start=rng.randint(-2, 2))
        dims = cohomology_dims(c)
        dual = cohomology_dims(dual_complex(c))
        if all(dual.get(-k, 0) == n for k, n in dims.items()):
            agree += 1
    section.check("dual_cohomology", agree == DUALITY_COMPLEXES, f"{agree}/{DUALITY_COMPLEXES}")
    return section


def check_graded_pairing() -> Section:
    section = Section(name="graded_pairing")
    for d in (1, 2, 3):
        section.check(f"reduced_contraction_d{d}", all(c.holds for c in contraction_identity_battery(d)))
    for grading in Grading:
        space = GradedVS(grading, {-1: 2, 0: 1, 1: 3} if grading == Grading.Z else {0: 2, 1: 3})
        section.check(f"ev_perfect_{grading.value}", is_signed_permutation(ev_matrix(space)))
    return section


# ========================================
# Boundary sector and categories
# ========================================

def check_boundary_suite() -> Section:
    section = Section(name="boundary_suite")
    for n in range(2, 7):
        pair = LGPair(monomial_mf(n, 1).W)
        ma = milnor_algebra(jacobian_ideal(pair))
        tr = bulk_trace(ma, TraceBackend.RESIDUE, Fraction(1))
        objects = [monomial_mf(n, a) for a in range(1, n)]
        for a in objects:
            section.check(f"x^{n}/{a.name}/coboundaries", coboundary_check(a, tr))
            section.check(
                f"x^{n}/{a.name}/shift",
                all(c.holds for c in shift_compatibility(a, tr)),
            )
        for a1 in objects:
            for a2 in objects:
                h = hom_complex(a1, a2)
                exact = hdf_cohomology(h, HomBackend.SNF).dims
                truncated = hdf_cohomology(h, HomBackend.TRUNCATE).dims
                gram = boundary_gram(a1, a2, tr, HomBackend.SNF)
                label = f"x^{n}/{a1.name},{a2.name}"
                section.check(f"{label}/backends", exact == truncated, f"{exact} vs {truncated}")
                section.check(
                    f"{label}/pairing",
                    gram.parity_selected and gram.cyclic and gram.nondegenerate,
                    f"rank {gram.rank}",
                )
    return section


def _category_checks(section: Section, label: str, t, d: int) -> None:
    section.check(f"{label}/serre", all(v.holds for v in serre_check(t, d)))
    section.check(f"{label}/calabi_yau", calabi_yau_check(t).holds)
    shift = t.shift.objects
    section.check(f"{label}/shift_involution", all(shift[shift[a]] == a for a in t.objects))
    section.check(
        f"{label}/shifted_dims",
        all(t.graded_dim(a, shift[b]) == t.graded_dim(a, b)[::-1] for a in t.objects for b in t.objects),
    )
    ev = even_subcategory(t)
    section.check(f"{label}/gr_ev", graded_dims_agree(supercompletion(ev), t) and hdf_transport_check(t).holds)
    section.check(f"{label}/ev_gr", same_table(even_subcategory(supercompletion(ev)), ev))


def check_categories() -> Section:
    section = Section(name="categories")
    a = monomial_mf(3, 1)
    pair = LGPair(a.W)
    tr = bulk_trace(milnor_algebra(jacobian_ideal(pair)), TraceBackend.RESIDUE, Fraction(1))
    t = build_hdf_category(close_under_shift([a, monomial_mf(3, 2)]), tr, HomBackend.SNF)
    _category_checks(section, "x^3", t, pair.d)

    q = quadric_tensor()
    pair = LGPair(q.W)
    tr = bulk_trace(milnor_algebra(jacobian_ideal(pair)), TraceBackend.RESIDUE, Fraction(1))
    t = build_hdf_category(close_under_shift([q]), tr, HomBackend.TRUNCATE)
    section.data["x^2+y^2/end_dims"] = list(t.graded_dim(t.objects[0], t.objects[0]))
    section.check("x^2+y^2/tensor_rank", q.rank == (2, 2))
    section.check("x^2+y^2/shift_object", shift_mf(shift_mf(q)) == q)
    _category_checks(section, "x^2+y^2", t, pair.d)
    return section


def run_selftest(config: Settings) -> List[Section]:
    rng = random.Random(config.SELFTEST_SEED)
    logger.info(f"🚀 self-test battery, seed {config.SELFTEST_SEED}")
    sections = [
        check_milnor_numbers(),
        check_bulk_suite(),
        check_koszul_suite(),
        check_spectral(rng, config.SELFTEST_RANDOM_INSTANCES),
        check_filtered_compare(rng),
        check_finite_duality(rng),
        check_graded_pairing(),
        check_boundary_suite(),
        check_categories(),
    ]
    failed = [c.name for s in sections for c in s.checks if c.verdict.value == "FAIL"]
    if failed:
        logger.error(f"❌ self-test failures: {', '.join(failed)}")
    else:
        logger.info(f"✅ self-test passed ({sum(len(s.checks) for s in sections)} checks)")
    return sections
