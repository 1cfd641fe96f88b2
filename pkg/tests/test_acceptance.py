"""Acceptance suite: one test per acceptance criterion, each printing a
PASS/FAIL line (collected and echoed at the end of the session as well).

Criterion 5 records one known discrepancy: x^2 (x-1)^2 (x^2-4x-1) is the
characteristic polynomial of the triangle cycle product, not its minimal
polynomial (the product is annihilated by x (x-1) (x^2-4x-1) already).  The
literal minimal-polynomial form of the criterion is kept under a strict
xfail so the discrepancy stays visible without masking it; every consequence
used downstream (the dominant factor x^2-4x-1 and its largest root) is
verified in full.
"""

import json
from fractions import Fraction

import pytest

from refdyn import billiards, elliptic, germs, picard, transitions
from refdyn.cli import main as cli_main
from refdyn.core import RatMatrix, UniPoly, char_poly, minimal_poly

RESULTS: list[str] = []


def _criterion(number: str, label: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"{status}  criterion {number}: {label}"
    if detail:
        line += f"  [{detail}]"
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="session", autouse=True)
def _echo_results(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None and RESULTS:
        reporter.write_line("")
        reporter.write_line("acceptance criteria:")
        for line in RESULTS:
            reporter.write_line("  " + line)


@pytest.fixture(scope="module")
def conic_line_spectral():
    return transitions.dominant_growth(
        transitions.conic_line_matrix(), transitions.StateVector((0, 0, 1))
    )


@pytest.fixture(scope="module")
def triangle_spectral():
    return transitions.dominant_growth(
        transitions.triangle_cycle_product(),
        transitions.StateVector((1, 0, 0, 0, 0, 0)),
    )


def _enclosure_covers(value, digits: int, decimal_digits: int) -> bool:
    """The width-10^-digits enclosure agrees with the stated decimal prefix."""
    refined = value.refined(Fraction(1, 10**digits))
    scale = 10**digits
    lo_floor = refined.lo.numerator * scale // refined.lo.denominator
    hi_floor = refined.hi.numerator * scale // refined.hi.denominator
    return lo_floor <= decimal_digits <= hi_floor and refined.width() < Fraction(
        1, 10**digits
    )


# -- criterion 1: single reflection -------------------------------------------------


def test_criterion_1_single_reflection():
    action = picard.single_reflection_action()
    involution = action.matrix * action.matrix == RatMatrix.identity(3)
    cp = char_poly(action.matrix)
    expected = UniPoly((-1, 1)) ** 2 * UniPoly((1, 1))
    triple = picard.degree_tuple_generic(1)
    tuple_ok = all(v.rational_value() == 1 for v in triple)
    _criterion(
        "1",
        "single reflection: involutive lattice action, char poly (x-1)^2 (x+1),"
        " spectral radius 1, tuple (1,1,1)",
        involution and cp == expected and tuple_ok,
    )


# -- criterion 2: two points ----------------------------------------------------------


def test_criterion_2_two_points():
    action = picard.two_point_action()
    cp = char_poly(action.matrix)
    unipotent = cp == UniPoly((-1, 1)) ** 4
    triple = picard.degree_tuple_generic(2)
    tuple_ok = all(v.rational_value() == 1 for v in triple)
    _criterion(
        "2",
        "two points: char poly exactly (x-1)^4, derived tuple (1,1,1)",
        unipotent and tuple_ok,
    )


# -- criterion 3: general N ------------------------------------------------------------


def test_criterion_3_general_tuples(capsys):
    ok = True
    for n in range(3, 11):
        code = cli_main(["reproduce", "general", "--n", str(n)])
        out = capsys.readouterr().out
        obj = json.loads(out)
        expected = ["1"] + [str(2**n)] * 3 + ["1"]
        ok = ok and code == 0 and obj["outputs"]["degree_tuple"] == expected
    _criterion("3a", "reproduce general prints (1, 2^N, 2^N, 2^N, 1) for N = 3..10", ok)

    avoid_ok = True
    drift_ok = True
    for n in range(3, 9):
        report = elliptic.avoidance_check(n, 200)
        avoid_ok = avoid_ok and not report["hits"]
        if n % 2 == 0:
            for cert in report["certificate"]["starts"].values():
                drift_ok = (
                    drift_ok
                    and cert["coeffs_after_own_reflection"][:4] == [0, -1, -2, -3]
                    and cert["conclusive"]
                )
    _criterion(
        "3b",
        "orbit avoidance clean for N = 3..8 at horizon 200, even-case drift"
        " certificate 0, -1, -2, -3",
        avoid_ok and drift_ok,
    )


# -- criterion 4: conic + line -----------------------------------------------------------


def test_criterion_4_conic_line(conic_line_spectral):
    cp = char_poly(transitions.conic_line_matrix())
    factored = cp == UniPoly((-1, 1)) * UniPoly((-2, -5, 1))
    hyp = conic_line_spectral.hypotheses
    hypotheses_ok = all(hyp.values())
    factor_ok = conic_line_spectral.factor == UniPoly((-2, -5, 1))
    enclosure_ok = _enclosure_covers(conic_line_spectral.mu1, 9, 5372281323)

    seq = [
        s.entries[2]
        for s in transitions.iterate(
            transitions.conic_line_system(), transitions.StateVector((0, 0, 1)), 12
        )
    ]
    seq_ok = seq[:5] == [1, 6, 36, 196, 1056]
    ratio = Fraction(seq[12], seq[11])
    mu = conic_line_spectral.mu1.refined(Fraction(1, 10**9))
    ratio_ok = abs(ratio - mu.lo) < Fraction(1, 10**6) and abs(
        ratio - mu.hi
    ) < Fraction(1, 10**6)
    _criterion(
        "4",
        "conic+line: char poly (x-1)(x^2-5x-2), all growth hypotheses certified,"
        " enclosure 5.372281323 at width < 1e-9, degrees 1,6,36,196,1056,"
        " ratio within 1e-6 by step 12",
        factored and hypotheses_ok and factor_ok and enclosure_ok and seq_ok and ratio_ok,
    )


# -- criterion 5: triangle ----------------------------------------------------------------


DISPLAYED_PRODUCT = RatMatrix(
    [
        [3, 1, 1, -3, -2, 0],
        [2, 2, 1, -3, -2, 0],
        [2, 1, 2, -3, -2, 0],
        [0, 0, 0, 0, 0, 0],
        [1, 0, 1, -1, -1, 0],
        [1, 1, 1, -2, -1, 0],
    ]
)

CYCLE_SEXTIC = UniPoly((0, 1)) ** 2 * UniPoly((-1, 1)) ** 2 * UniPoly((-1, -4, 1))


def test_criterion_5_triangle(triangle_spectral):
    product = transitions.triangle_cycle_product()
    product_ok = product == DISPLAYED_PRODUCT

    # the sextic is verified as the characteristic polynomial and as an
    # annihilator; the literal minimal-polynomial form is covered by the
    # companion xfail test below
    annihilates = _evaluate_on_matrix(CYCLE_SEXTIC, product) == RatMatrix.zero(6, 6)
    char_ok = char_poly(product) == CYCLE_SEXTIC
    true_min = minimal_poly(product)
    min_divides = (CYCLE_SEXTIC.divmod(true_min))[1].is_zero()
    dominant_factor_ok = triangle_spectral.factor == UniPoly((-1, -4, 1))
    enclosure_ok = _enclosure_covers(triangle_spectral.mu1, 9, 4236067977)

    chain_ok = True
    d = germs.transverse_start()
    v = transitions.StateVector(d.vals)
    sys3 = transitions.triangle_system()
    for k in range(60):
        d, _ = germs.valuation_step(d)
        v = transitions.StateVector(
            tuple(int(x) for x in sys3.matrix_at(k).matvec(v.entries)), v.phase + 1
        )
        chain_ok = chain_ok and d.vals == v.entries

    pairs_ok = germs.verify_minimal_pairs(60)["all_match"]

    series_ok = True
    for draw in range(10):
        trait = germs.random_transverse_trait(seed=draw, order=32)
        try:
            germs.series_evolve(trait, 30, seed=draw)
        except germs.CancellationError:
            series_ok = False
    _criterion(
        "5",
        "triangle: product matches the displayed matrix, the sextic is the"
        " characteristic polynomial and annihilates it, enclosure 4.236067977"
        " at width < 1e-9, valuation chain matches matrices for 60 steps,"
        " minimal pairs match for 60 steps, series cross-check 30 steps x 10 draws",
        product_ok
        and annihilates
        and char_ok
        and min_divides
        and dominant_factor_ok
        and enclosure_ok
        and chain_ok
        and pairs_ok
        and series_ok,
    )


@pytest.mark.xfail(
    strict=True,
    reason="x^2 (x-1)^2 (x^2-4x-1) is the characteristic polynomial of the"
    " cycle product; the actual minimal polynomial is x (x-1) (x^2-4x-1),"
    " which has the same dominant factor",
)
def test_criterion_5_minimal_polynomial_as_quoted():
    product = transitions.triangle_cycle_product()
    stated_ok = minimal_poly(product) == CYCLE_SEXTIC.monic()
    _criterion(
        "5*",
        "triangle: minimal polynomial literally equals x^2 (x-1)^2 (x^2-4x-1)"
        " (known discrepancy: that polynomial is the characteristic one)",
        stated_ok,
    )


def _evaluate_on_matrix(poly: UniPoly, m: RatMatrix) -> RatMatrix:
    acc = RatMatrix.zero(m.rows, m.cols)
    power = RatMatrix.identity(m.rows)
    for c in poly.coeffs:
        if c:
            acc = acc + power.scale(c)
        power = power * m
    return acc


# -- criterion 6: symbolic identities ---------------------------------------------------------


def test_criterion_6_symbolic_identities():
    from refdyn.reflection_maps import (
        random_adapted_cubic,
        verify_involution,
        verify_preserves_cubic,
    )

    ok = True
    for seed in range(20):
        ac = random_adapted_cubic(seed)
        ok = ok and verify_preserves_cubic(ac) and verify_involution(ac)
    _criterion(
        "6",
        "20 random adapted cubics: F o sigma = -X1^3 F and sigma o sigma ="
        " -X1^3 id hold exactly",
        ok,
    )


# -- criterion 7: billiards ---------------------------------------------------------------------


def test_criterion_7_billiards():
    cfg = billiards.build_configuration(7)
    import random as _random

    rng = _random.Random(77)
    involution_count = 0
    involution_ok = True
    while involution_count < 100:
        t = rng.randint(-60, 60)
        pt = cfg.point_from_parameter(1, t)
        if pt in (cfg.a, cfg.b):
            continue
        name = rng.choice(("p", "q", "r"))
        center = cfg.reflection_point(name)
        if pt == center or (name in ("p", "q") and cfg.on_line(pt)):
            # route through the conic first so the chord is honest
            try:
                pt = billiards.third_intersection(cfg.surface, cfg.r, pt)
            except billiards.IndeterminacyError:
                continue
            if pt == center:
                continue
        try:
            img = billiards.third_intersection(cfg.surface, center, pt)
            back = billiards.third_intersection(cfg.surface, center, img)
        except billiards.IndeterminacyError:
            continue
        involution_ok = involution_ok and back == pt
        involution_count += 1
    _criterion(
        "7a", "third intersection is an exact involution on 100 instances", involution_ok
    )

    found_seed = None
    report = None
    for seed in range(1000):
        try:
            candidate = billiards.build_configuration(seed)
            phi = billiards.return_map(candidate)
            spec = billiards.attractor_analysis(
                phi,
                candidate.line_parameter(candidate.a),
                candidate.line_parameter(candidate.b),
            )
            if not spec["distinct_moduli"]:
                continue
            chk = billiards.check_configuration(candidate, horizon=300, precision=9)
        except (billiards.ConfigurationError, billiards.IndeterminacyError):
            continue
        if chk["status"] == "success":
            found_seed = seed
            report = chk
            break
    fixes_ok = False
    k0_ok = False
    if report is not None:
        candidate = billiards.build_configuration(found_seed)
        phi = billiards.return_map(candidate)
        fixes_ok = phi.fixes(*candidate.line_parameter(candidate.a)) and phi.fixes(
            *candidate.line_parameter(candidate.b)
        )
        k0_ok = all(e["k0"] % 3 == 0 for e in report["starts"].values())
    _criterion(
        "7b",
        "a seed in 0..999 yields a certified return map fixing both"
        " intersection points, distinct eigenvalue moduli, and a safe-radius"
        " certificate with k0 = 0 (mod 3)",
        report is not None and fixes_ok and k0_ok,
        detail=f"seed {found_seed}",
    )


# -- criterion 8: tuple utilities ------------------------------------------------------------------


def test_criterion_8_tuple_utilities(conic_line_spectral, triangle_spectral):
    produced = []
    for n in (1, 2, 3, 5, 8, 10):
        produced.append(transitions.degree_tuple([1, *picard.degree_tuple_generic(n), 1]))
    for spectral in (conic_line_spectral, triangle_spectral):
        mu = spectral.mu1
        produced.append(transitions.degree_tuple([1, mu, mu, mu, 1]))
    concave_ok = all(transitions.check_log_concavity(t)[0] for t in produced)
    palindrome_ok = all(
        transitions.tuples_equal(t, transitions.inverse_tuple(t)) for t in produced
    )
    fib = transitions.fibration_degrees(transitions.degree_tuple([1, 1, 1, 1]))
    fib_ok = [v.rational_value() for v in fib.values] == [1] * 5
    _criterion(
        "8",
        "all produced tuples are log-concave and palindromic; the fibration"
        " lift of (1,1,1,1) is (1,1,1,1,1)",
        concave_ok and palindrome_ok and fib_ok,
    )
