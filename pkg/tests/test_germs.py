import pytest

from refdyn.germs import (
    CancellationError,
    CurveTrait,
    ValuationVector,
    dominance_holds,
    random_transverse_trait,
    series_evolve,
    transverse_start,
    valuation_step,
    verify_minimal_pairs,
)
from refdyn.transitions import StateVector, triangle_matrices, triangle_system


def test_valuation_step_chain():
    d = transverse_start()
    d1, pair1 = valuation_step(d)
    assert d1.vals == (2, 1, 1, 1, 1, 0) and pair1 == (3, 4)
    d2, pair2 = valuation_step(d1)
    assert d2.vals == (2, 1, 1, 1, 0, 0) and pair2 == (3, 5)
    d3, pair3 = valuation_step(d2)
    assert d3.vals == (3, 2, 2, 0, 1, 1) and pair3 == (4, 5)


def test_valuation_step_agrees_with_matrices():
    d = transverse_start()
    v = StateVector(d.vals)
    sys3 = triangle_system()
    for k in range(60):
        d, _ = valuation_step(d)
        v = StateVector(
            tuple(int(x) for x in sys3.matrix_at(k).matvec(v.entries)), v.phase + 1
        )
        assert d.vals == v.entries


def test_dominance_preserved_sixty_steps():
    d = transverse_start()
    for _ in range(60):
        d, _ = valuation_step(d)
        assert dominance_holds(d.vals)


def test_valuation_vector_validation():
    with pytest.raises(ValueError):
        ValuationVector((1, 1, 1, 1, 1, 1))  # no zero entry
    with pytest.raises(ValueError):
        ValuationVector((0, 1, 1, 2, 0, 0))  # dominance violated


def test_verify_minimal_pairs_sixty():
    report = verify_minimal_pairs(60)
    assert report["all_match"] and report["first_mismatch"] is None
    assert report["rows"][0]["predicted_pair"] == [3, 4]
    assert report["rows"][1]["predicted_pair"] == [3, 5]
    assert report["rows"][2]["predicted_pair"] == [4, 5]
    # ties happen only in the first two steps of the degenerate start
    assert all(len(r["tied_pairs"]) == 1 for r in report["rows"][2:])


def test_verify_minimal_pairs_detects_broken_system(monkeypatch):
    import refdyn.germs as germs_mod

    p0, p1, p2 = triangle_matrices()
    monkeypatch.setattr(germs_mod, "PREDICTED_PAIRS", {0: (3, 4), 1: (1, 4), 2: (4, 5)})
    report = germs_mod.verify_minimal_pairs(12)
    assert not report["all_match"]
    assert report["first_mismatch"] == 1


def test_verify_minimal_pairs_needs_three_steps():
    with pytest.raises(ValueError):
        verify_minimal_pairs(2)


def test_series_evolve_three_steps():
    trait = random_transverse_trait(seed=1, order=32)
    vals = series_evolve(trait, 3, seed=1)
    assert [v.vals for v in vals] == [
        (2, 1, 1, 1, 1, 0),
        (2, 1, 1, 1, 0, 0),
        (3, 2, 2, 0, 1, 1),
    ]


def test_series_evolve_matches_symbolic_chain():
    trait = random_transverse_trait(seed=2, order=64)
    vals = series_evolve(trait, 30, seed=2)
    d = transverse_start()
    for k in range(30):
        d, _ = valuation_step(d)
        assert vals[k].vals == d.vals


def test_series_evolve_block_ratio_converges():
    from fractions import Fraction

    trait = random_transverse_trait(seed=3, order=64)
    vals = series_evolve(trait, 30, seed=3)
    blocks = [v.vals[0] for v in vals if v.phase % 3 == 0]
    ratio = Fraction(blocks[-1], blocks[-2])
    # 2 + sqrt(5) = 4.23606797...
    assert abs(ratio - Fraction(4236068, 10**6)) < Fraction(1, 10**4)


@pytest.mark.parametrize("seed", range(10))
def test_series_evolve_many_draws(seed):
    trait = random_transverse_trait(seed=seed, order=24)
    vals = series_evolve(trait, 30, seed=seed)
    d = transverse_start()
    for k in range(30):
        d, _ = valuation_step(d)
    assert vals[-1].vals == d.vals


def test_series_evolve_rejects_zero_steps():
    trait = random_transverse_trait(seed=0)
    with pytest.raises(ValueError):
        series_evolve(trait, 0)


def test_curve_trait_validation():
    trait = random_transverse_trait(seed=0, order=16)
    with pytest.raises(ValueError):
        CurveTrait(trait.series, ValuationVector((0, 1, 1, 0, 0, 0)))
    with pytest.raises(ValueError):
        CurveTrait(trait.series[:5], trait.valuations)


def test_cancellation_reported():
    # force a genuine cancellation in the quadric slot at the first step:
    # with q0 = x1*x3 + x3*x4 the slot's leading coefficient is
    # f3(0) * (f1(0) + f4(0)), which a tuned trait makes vanish
    from refdyn.core import MultiPoly, TruncatedSeries
    from refdyn.reflection_maps import NVARS, TriangleChart, random_chart

    base = random_chart(0)
    q0 = MultiPoly(NVARS, {(0, 1, 0, 1, 0, 0): 1, (0, 0, 0, 1, 1, 0): 1})
    chart = TriangleChart(q0=q0, q1=base.q1, q2=base.q2)
    order = 16

    def series(*leading):
        cs = [0] * order
        for i, c in enumerate(leading):
            cs[i] = c
        return TruncatedSeries(cs, order)

    trait = CurveTrait(
        (
            series(0, 1),  # f0 = t
            series(1),  # f1 = 1
            series(1),  # f2
            series(1),  # f3
            series(-1),  # f4 = -1: cancels f1 in the slot
            series(1),  # f5
        ),
        transverse_start(),
    )
    with pytest.raises(CancellationError) as err:
        series_evolve(trait, 1, chart=chart)
    assert err.value.step == 0
    assert err.value.component == 5
