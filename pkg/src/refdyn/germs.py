"""Valuation dynamics of curve branches through the triangle configuration.

A branch through the first vertex is a 6-tuple of power series in a local
parameter; each reflection substitutes the tuple into an explicit quadratic
map and divides out the largest common power of t, so only the vector of
valuations matters for the degree bookkeeping.  `valuation_step` advances
that vector symbolically (and checks it against the transition matrices);
`series_evolve` pushes an actual series tuple through the maps and verifies
that no coefficient cancellation ever disturbs the predicted valuations.

Series evolution bookkeeping: each component is stored as an explicit
valuation plus a coefficient window of fixed length starting at the leading
term, with coefficients reduced modulo a large prime.  A nonzero residue
certifies that the true rational coefficient is nonzero, which is all the
valuation check needs, while keeping coefficient growth bounded; residues
above a guard index are re-randomized each step so that the evolution stays
generic.  A zero leading residue is reported as a cancellation, never
silently absorbed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import TruncatedSeries, valuation as series_valuation
from .reflection_maps import MONOMIAL_SUPPORTS, TriangleChart, random_chart
from .transitions import triangle_matrices

_PRIME = (1 << 61) - 1

# quadratic-map layout per phase: every component except the listed slot is
# x_phase * x_j; the slot holds the support-drawn quadric
_Q_SLOT = {0: 5, 1: 4, 2: 3}

# support pair achieving the minimal valuation sum, per phase
PREDICTED_PAIRS = {0: (3, 4), 1: (3, 5), 2: (4, 5)}


class GenericityError(RuntimeError):
    """The predicted minimal pair does not achieve the minimum."""


class CancellationError(RuntimeError):
    """A leading series coefficient vanished against the valuation prediction."""

    def __init__(self, message: str, step: int, component: int):
        super().__init__(message)
        self.step = step
        self.component = component


@dataclass(frozen=True)
class ValuationVector:
    vals: tuple[int, int, int, int, int, int]
    phase: int = 0

    def __post_init__(self) -> None:
        vals = tuple(int(v) for v in self.vals)
        object.__setattr__(self, "vals", vals)
        if len(vals) != 6 or any(v < 0 for v in vals):
            raise ValueError("valuation vectors are 6-tuples of nonnegative integers")
        if min(vals) != 0:
            raise ValueError("valuation vectors are normalized: some entry is zero")
        if not dominance_holds(vals):
            raise ValueError("dominance violated: a tail entry exceeds a head entry")


def dominance_holds(vals: Sequence[int]) -> bool:
    """Each of the first three entries is >= each of the last three."""
    return min(vals[0], vals[1], vals[2]) >= max(vals[3], vals[4], vals[5])


def _raw_image_valuations(d: Sequence[int], phase: int) -> tuple[list[int], int]:
    """Component valuations of the reflected tuple before normalization,
    plus the minimal support sum used in the quadric slot."""
    slot = _Q_SLOT[phase]
    sums = {pair: d[pair[0]] + d[pair[1]] for pair in MONOMIAL_SUPPORTS[phase]}
    vq = min(sums.values())
    raw = [d[phase] + d[j] for j in range(6)]
    raw[slot] = vq
    return raw, vq


def minimal_pair(d: Sequence[int], phase: int) -> tuple[tuple[int, int], list[tuple[int, int]]]:
    """The predicted minimal support pair and the full list of minimizers.

    Raises GenericityError when the predicted pair fails to achieve the
    minimum (a strictly smaller competitor crosses the prediction).
    """
    sums = {pair: d[pair[0]] + d[pair[1]] for pair in MONOMIAL_SUPPORTS[phase]}
    mn = min(sums.values())
    ties = sorted(p for p, s in sums.items() if s == mn)
    predicted = PREDICTED_PAIRS[phase]
    if sums[predicted] != mn:
        raise GenericityError(
            f"predicted pair {predicted} does not achieve the minimum at phase {phase};"
            f" minimizers: {ties}"
        )
    return predicted, ties


def valuation_step(d: ValuationVector) -> tuple[ValuationVector, tuple[int, int]]:
    """One reflection applied to a valuation vector.

    Computes the raw image valuations, normalizes by the minimal entry and
    increments the phase; the result is asserted against left-multiplication
    by the corresponding transition matrix.
    """
    phase = d.phase % 3
    pair, _ = minimal_pair(d.vals, phase)
    raw, _ = _raw_image_valuations(d.vals, phase)
    mn = min(raw)
    new_vals = tuple(v - mn for v in raw)
    predicted = triangle_matrices()[phase].matvec(d.vals)
    if tuple(int(x) for x in predicted) != new_vals:
        raise AssertionError(
            f"valuation step disagrees with the phase-{phase} transition matrix"
        )
    return ValuationVector(new_vals, d.phase + 1), pair


def transverse_start() -> ValuationVector:
    """Valuation vector of a branch transverse to the first tangent divisor."""
    return ValuationVector((1, 0, 0, 0, 0, 0), 0)


def verify_minimal_pairs(steps: int) -> dict:
    """Run the valuation chain from the transverse start and record, at every
    step, whether the phase-predicted support pair achieves the minimum.

    Mismatches become report rows with match=False; the run continues so the
    report shows the full horizon.
    """
    if steps < 3:
        raise ValueError("need at least 3 steps to cover all phases")
    rows = []
    d = transverse_start()
    all_match = True
    for k in range(steps):
        phase = d.phase % 3
        predicted = PREDICTED_PAIRS[phase]
        sums = {p: d.vals[p[0]] + d.vals[p[1]] for p in MONOMIAL_SUPPORTS[phase]}
        mn = min(sums.values())
        ties = sorted(p for p, s in sums.items() if s == mn)
        match = sums[predicted] == mn
        rows.append(
            {
                "step": k,
                "phase": phase,
                "valuations": list(d.vals),
                "minimal_pair": list(predicted if match else ties[0]),
                "predicted_pair": list(predicted),
                "match": match,
                "tied_pairs": [list(t) for t in ties],
            }
        )
        all_match = all_match and match
        raw, _ = _raw_image_valuations(d.vals, phase)
        mn_raw = min(raw)
        d = ValuationVector(tuple(v - mn_raw for v in raw), d.phase + 1)
    first_bad = next((r["step"] for r in rows if not r["match"]), None)
    return {"steps": steps, "all_match": all_match, "first_mismatch": first_bad, "rows": rows}


# ---------------------------------------------------------------------------
# actual series evolution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveTrait:
    """Six truncated power series with their valuation vector."""

    series: tuple[TruncatedSeries, ...]
    valuations: ValuationVector

    def __post_init__(self) -> None:
        if len(self.series) != 6:
            raise ValueError("a trait has six coordinate series")
        orders = {s.order for s in self.series}
        if len(orders) != 1:
            raise ValueError("coordinate series must share a truncation order")
        computed = tuple(series_valuation(s) for s in self.series)
        if computed != self.valuations.vals:
            raise ValueError("stored valuations disagree with the series")


def random_transverse_trait(seed: int = 0, order: int = 64) -> CurveTrait:
    """A random branch transverse to the first tangent divisor: component 0
    vanishes to order exactly one, the others are units."""
    rng = random.Random(f"trait-{seed}")
    def unit_coeffs(val: int) -> list[int]:
        cs = [0] * order
        cs[val] = rng.choice([c for c in range(-9, 10) if c])
        for i in range(val + 1, order):
            cs[i] = rng.randint(-9, 9)
        return cs

    series = tuple(
        TruncatedSeries(unit_coeffs(1 if i == 0 else 0), order) for i in range(6)
    )
    return CurveTrait(series, transverse_start())


class _WindowSeries:
    """Valuation + leading coefficient window, residues mod a large prime."""

    __slots__ = ("val", "window")

    def __init__(self, val: int, window: list[int]):
        self.val = val
        self.window = window


def _to_window(s: TruncatedSeries, length: int) -> _WindowSeries:
    val = series_valuation(s)
    window = []
    for i in range(val, val + length):
        c = s.coeffs[i] if i < s.order else Fraction(0)
        window.append(c.numerator * pow(c.denominator, -1, _PRIME) % _PRIME)
    return _WindowSeries(val, window)


def _window_mul(a: list[int], b: list[int], length: int) -> list[int]:
    out = [0] * length
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), length - i)):
                if b[j]:
                    out[i + j] = (out[i + j] + x * b[j]) % _PRIME
    return out


def series_evolve(
    trait: CurveTrait,
    steps: int,
    chart: TriangleChart | None = None,
    guard: int = 8,
    seed: int = 0,
) -> list[ValuationVector]:
    """Push a trait through the reflections cyclically, recording the
    valuation vector after each step and checking it against the symbolic
    chain; any cancellation aborts with the offending step."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if chart is None:
        chart = random_chart(seed)
    order = trait.series[0].order
    rng = random.Random(f"evolve-{seed}")
    comps = [_to_window(s, order) for s in trait.series]
    q_res = []
    for l in range(3):
        poly = (chart.q0, chart.q1, chart.q2)[l]
        res = {}
        for exps, c in poly.terms.items():
            pair = tuple(i for i, e in enumerate(exps) for _ in range(e))
            res[pair] = c.numerator * pow(c.denominator, -1, _PRIME) % _PRIME
        q_res.append(res)

    predicted = trait.valuations
    out: list[ValuationVector] = []
    for k in range(steps):
        phase = predicted.phase % 3
        predicted, _ = valuation_step(predicted)
        slot = _Q_SLOT[phase]
        vals = [c.val for c in comps]
        new: list[_WindowSeries] = [None] * 6  # type: ignore[list-item]
        for j in range(6):
            if j == slot:
                continue
            window = _window_mul(comps[phase].window, comps[j].window, order)
            new[j] = _WindowSeries(vals[phase] + vals[j], window)
        sums = {
            pair: vals[pair[0]] + vals[pair[1]] for pair in MONOMIAL_SUPPORTS[phase]
        }
        vq = min(sums.values())
        acc = [0] * order
        for pair, coef in q_res[phase].items():
            off = sums[pair] - vq
            if off >= order:
                continue
            prod = _window_mul(comps[pair[0]].window, comps[pair[1]].window, order - off)
            for idx, x in enumerate(prod):
                acc[idx + off] = (acc[idx + off] + coef * x) % _PRIME
        new[slot] = _WindowSeries(vq, acc)
        for j in range(6):
            if new[j].window[0] == 0:
                raise CancellationError(
                    f"leading coefficient vanished at step {k}, component {j}",
                    step=k,
                    component=j,
                )
        mn = min(c.val for c in new)
        for c in new:
            c.val -= mn
            for idx in range(guard, order):
                c.window[idx] = rng.randrange(_PRIME)
        comps = new
        observed = ValuationVector(tuple(c.val for c in comps), predicted.phase)
        if observed.vals != predicted.vals:
            raise CancellationError(
                f"observed valuations {observed.vals} differ from predicted "
                f"{predicted.vals} at step {k}",
                step=k,
                component=-1,
            )
        out.append(observed)
    return out
