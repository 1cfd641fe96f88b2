"""Degree-evolution transition systems and certified dominant growth.

Two concrete systems live here: the period-1 system of the line-conic
configuration (reflections through two points of a line and one point of a
residual conic) and the period-3 system of the triangle of lines.  The
growth rate of either is certified by `dominant_growth`, an exact
implementation of the dominant-eigenvalue criterion: the top eigenvalue must
be a simple positive real root of the characteristic polynomial, strictly
dominant in absolute value over every other root (real roots by interval
comparison, complex roots factor-wise), the start vector must have a nonzero
component along the dominant eigenspace (left-eigenvector test over the
eigenvalue's number field), and the dominant eigenvector must see the first
coordinate.  No floating point is used anywhere in the certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    AlgebraicReal,
    NumberFieldElement,
    RatMatrix,
    UniPoly,
    abs_cmp,
    algebraic_cmp,
    algebraic_equal,
    as_rational,
    cauchy_root_bound,
    char_poly,
    cmp_with_rational,
    factor_over_rationals,
    field_kernel,
    isolate_real_roots,
    rat_to_str,
)


class CertificationError(RuntimeError):
    """A growth-certificate hypothesis failed; the partial report is attached."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


# ---------------------------------------------------------------------------
# transition systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateVector:
    entries: tuple[int, ...]
    phase: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    def to_obj(self) -> dict:
        return {"phase": self.phase, "v": list(self.entries)}

    @classmethod
    def from_obj(cls, obj: dict) -> "StateVector":
        return cls(tuple(obj["v"]), obj.get("phase", 0))

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str) -> "StateVector":
        return cls.from_obj(json.loads(s))


@dataclass(frozen=True)
class TransitionSystem:
    matrices: tuple[RatMatrix, ...]

    def __post_init__(self) -> None:
        if not self.matrices:
            raise ValueError("a transition system needs at least one matrix")
        dim = self.matrices[0].rows
        for m in self.matrices:
            if not m.is_square() or m.rows != dim:
                raise ValueError("all matrices must be square of a shared dimension")
            if not m.is_integer():
                raise ValueError("transition matrices must be integral")

    @property
    def period(self) -> int:
        return len(self.matrices)

    @property
    def dimension(self) -> int:
        return self.matrices[0].rows

    def matrix_at(self, phase: int) -> RatMatrix:
        return self.matrices[phase % self.period]

    def to_obj(self) -> dict:
        return {
            "period": self.period,
            "matrices": [m.to_int_lists() for m in self.matrices],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "TransitionSystem":
        mats = tuple(RatMatrix(m) for m in obj["matrices"])
        if obj.get("period", len(mats)) != len(mats):
            raise ValueError("period field disagrees with the matrix list")
        return cls(mats)

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str) -> "TransitionSystem":
        return cls.from_obj(json.loads(s))


def iterate(sys: TransitionSystem, v0: StateVector, steps: int) -> list[StateVector]:
    """v0, v1, ..., v_steps with v_{k+1} = (matrix at v0.phase + k) v_k, exact."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if len(v0.entries) != sys.dimension:
        raise ValueError("state dimension mismatch")
    out = [v0]
    cur = v0
    for k in range(steps):
        m = sys.matrix_at(cur.phase)
        nxt = m.matvec(cur.entries)
        cur = StateVector(tuple(int(x) for x in nxt), cur.phase + 1)
        out.append(cur)
    return out


# ---------------------------------------------------------------------------
# the line-conic system
# ---------------------------------------------------------------------------

# counted state: (points on the line L, points on the conic C, curve degree)


def _check_line_conic_state(s: StateVector) -> tuple[int, int, int]:
    if len(s.entries) != 3:
        raise ValueError("line-conic states are 3-vectors (lambda, gamma, delta)")
    lam, gam, delta = s.entries
    if lam < 0 or gam < 0 or delta < 0:
        raise ValueError("state entries must be nonnegative counts")
    if lam > delta:
        raise ValueError("inconsistent state: more points on L than the degree")
    return lam, gam, delta


def conic_line_step(s: StateVector, reflection: str) -> StateVector:
    """One reflection applied to the state.

    Reflecting through a point of L sends (lam, gam, delta) to
    (delta, gam, 2*delta - lam); reflecting through the conic point swaps the
    roles of L and C: (gam, lam + delta, 2*delta).  Chaining p, q, r
    reproduces the one-cycle matrix of `conic_line_matrix` exactly.
    """
    lam, gam, delta = _check_line_conic_state(s)
    if reflection in ("p", "q"):
        nxt = (delta, gam, 2 * delta - lam)
    elif reflection == "r":
        nxt = (gam, lam + delta, 2 * delta)
    else:
        raise ValueError("reflection must be one of 'p', 'q', 'r'")
    return StateVector(nxt, s.phase + 1)


def conic_line_table_row(s: StateVector, reflection: str) -> StateVector:
    """Cumulative state after applying the p,q,r cycle up through the given
    reflection, starting from s; these are the rows of the bookkeeping table
    (row q = two steps from s, row r = the full cycle = the matrix)."""
    lam, gam, delta = _check_line_conic_state(s)
    if reflection == "p":
        nxt = (delta, gam, 2 * delta - lam)
    elif reflection == "q":
        nxt = (2 * delta - lam, gam, 3 * delta - 2 * lam)
    elif reflection == "r":
        nxt = (gam, 5 * delta - 3 * lam, 6 * delta - 4 * lam)
    else:
        raise ValueError("reflection must be one of 'p', 'q', 'r'")
    return StateVector(nxt, s.phase)


def conic_line_matrix() -> RatMatrix:
    """Matrix of one full p,q,r cycle acting on (lambda, gamma, delta)^t."""
    return RatMatrix([[0, 1, 0], [-3, 0, 5], [-4, 0, 6]])


def conic_line_system() -> TransitionSystem:
    return TransitionSystem((conic_line_matrix(),))


# ---------------------------------------------------------------------------
# the triangle system
# ---------------------------------------------------------------------------


def triangle_matrices() -> tuple[RatMatrix, RatMatrix, RatMatrix]:
    p0 = RatMatrix(
        [
            [2, 0, 0, -1, -1, 0],
            [1, 1, 0, -1, -1, 0],
            [1, 0, 1, -1, -1, 0],
            [1, 0, 0, 0, -1, 0],
            [1, 0, 0, -1, 0, 0],
            [0, 0, 0, 0, 0, 0],
        ]
    )
    p1 = RatMatrix(
        [
            [1, 1, 0, -1, 0, -1],
            [0, 2, 0, -1, 0, -1],
            [0, 1, 1, -1, 0, -1],
            [0, 1, 0, 0, 0, -1],
            [0, 0, 0, 0, 0, 0],
            [0, 1, 0, -1, 0, 0],
        ]
    )
    p2 = RatMatrix(
        [
            [1, 0, 1, 0, -1, -1],
            [0, 1, 1, 0, -1, -1],
            [0, 0, 2, 0, -1, -1],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, -1],
            [0, 0, 1, 0, -1, 0],
        ]
    )
    return p0, p1, p2


def triangle_system() -> TransitionSystem:
    """Period-3 valuation-transition system of the triangle configuration."""
    return TransitionSystem(triangle_matrices())


def triangle_cycle_product() -> RatMatrix:
    """One full cycle: the phase-2 matrix times phase-1 times phase-0."""
    p0, p1, p2 = triangle_matrices()
    return p2 * p1 * p0


# ---------------------------------------------------------------------------
# dominant growth certification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralData:
    mu1: AlgebraicReal
    factor: UniPoly
    hypotheses: dict
    char_polynomial: UniPoly
    factorization: tuple[tuple[UniPoly, int], ...]

    def to_obj(self) -> dict:
        lo, hi = self.mu1.decimal_enclosure(12)
        return {
            "mu1": {
                "defining_poly": self.factor.format(),
                "enclosure": [lo, hi],
                "interval": [rat_to_str(self.mu1.lo), rat_to_str(self.mu1.hi)],
            },
            "char_poly": self.char_polynomial.format(),
            "factors": [[f.format(), m] for f, m in self.factorization],
            "hypotheses": dict(self.hypotheses),
        }


def _all_roots_in_unit_disk(h: UniPoly) -> bool:
    """Exact Schur-Cohn recursion: True iff every complex root of h has
    modulus strictly less than one.  h must be nonzero."""
    h = h.primitive()
    while h.degree >= 1:
        a0, an = h.coeff(0), h.leading()
        if abs(a0) >= abs(an):
            return False
        rev = UniPoly(tuple(reversed(h.coeffs)))
        nxt = h.scale(an) - rev.scale(a0)
        # the constant term cancels exactly; shift down by one degree
        if nxt.coeff(0) != 0:
            raise AssertionError("Schur transform lost exactness")
        h = (nxt // UniPoly.x()).primitive()
    return True


def _roots_below(g: UniPoly, r: Fraction) -> bool:
    """Certified: every complex root of g has modulus < r (rational r > 0)."""
    # substitute x = r*y and test the unit disk
    scaled = UniPoly(c * r**i for i, c in enumerate(g.coeffs))
    return _all_roots_in_unit_disk(scaled)


def dominant_growth(m: RatMatrix, v0: StateVector | Sequence[int]) -> SpectralData:
    """Certify the dominant-eigenvalue growth hypotheses for (m, v0).

    Returns the dominant eigenvalue as an exact algebraic number together
    with its irreducible factor and the verified hypothesis flags; raises
    CertificationError (with the partial report attached) when any
    hypothesis cannot be certified.
    """
    if not m.is_square():
        raise ValueError("non-square matrix")
    if not m.is_integer():
        raise ValueError("dominant_growth expects an integer matrix")
    entries = v0.entries if isinstance(v0, StateVector) else tuple(v0)
    if len(entries) != m.rows:
        raise ValueError("start vector dimension mismatch")

    cp = char_poly(m)
    factors = tuple(factor_over_rationals(cp))
    real_roots: list[tuple[AlgebraicReal, UniPoly, int]] = []
    for fac, mult in factors:
        for root in isolate_real_roots(fac):
            real_roots.append((root, fac, mult))

    report: dict = {"char_poly": cp.format()}
    positives = [t for t in real_roots if cmp_with_rational(t[0], 0) > 0]
    if not positives:
        raise CertificationError("no positive real eigenvalue", report)
    mu, mu_factor, mu_mult = positives[0]
    for cand in positives[1:]:
        if algebraic_cmp(cand[0], mu) > 0:
            mu, mu_factor, mu_mult = cand

    hypotheses = {
        "positive": True,
        "simple": mu_mult == 1,
        "strictly_dominant": True,
        "v0_sees_dominant_eigenspace": False,
        "eigenvector_sees_first_coordinate": False,
    }
    report["mu1_factor"] = mu_factor.format()

    failures: list[str] = []
    if mu_mult > 1:
        hypotheses["simple"] = False
        hypotheses["strictly_dominant"] = False  # the eigenvalue ties with itself
        failures.append(
            f"dominant eigenvalue is a repeated root (multiplicity {mu_mult})"
        )

    # dominance over every other real root
    if hypotheses["strictly_dominant"]:
        for root, fac, _ in real_roots:
            if fac == mu_factor and algebraic_cmp(root, mu) == 0:
                continue
            if abs_cmp(mu, root) != 1:
                hypotheses["strictly_dominant"] = False
                failures.append(
                    f"real root of {fac.format()} is not strictly smaller in modulus"
                )
                break

    # dominance over complex roots, factor by factor
    if hypotheses["strictly_dominant"]:
        for fac, _ in factors:
            n_real = len(isolate_real_roots(fac))
            if n_real == fac.degree:
                continue
            if fac == mu_factor:
                hypotheses["strictly_dominant"] = False
                failures.append("dominant factor has complex roots")
                break
            if not _complex_roots_dominated(fac, mu):
                hypotheses["strictly_dominant"] = False
                failures.append(
                    f"complex roots of {fac.format()} not certified below mu1"
                )
                break

    # eigenvector hypotheses over the number field of mu's factor
    if mu_mult == 1:
        modulus = mu_factor.monic()
        theta = NumberFieldElement.generator(modulus)

        def nfe(q) -> NumberFieldElement:
            return NumberFieldElement.from_rational(modulus, q)

        n = m.rows
        a_right = [
            [nfe(m[i, j]) - (theta if i == j else nfe(0)) for j in range(n)]
            for i in range(n)
        ]
        a_left = [
            [nfe(m[j, i]) - (theta if i == j else nfe(0)) for j in range(n)]
            for i in range(n)
        ]
        right = field_kernel(a_right)
        left = field_kernel(a_left)
        if len(right) != 1 or len(left) != 1:
            failures.append("eigenspace is not one-dimensional over the field")
        else:
            w = left[0]
            dot = nfe(0)
            for wi, vi in zip(w, entries):
                dot = dot + wi * nfe(vi)
            hypotheses["v0_sees_dominant_eigenspace"] = not dot.is_zero()
            hypotheses["eigenvector_sees_first_coordinate"] = not right[0][0].is_zero()
            if dot.is_zero():
                failures.append("start vector lies in the span of the other eigenspaces")
            if right[0][0].is_zero():
                failures.append("dominant eigenvector has zero first coordinate")

    report["hypotheses"] = dict(hypotheses)
    if failures:
        raise CertificationError("; ".join(failures), report)

    return SpectralData(
        mu1=mu.refined(Fraction(1, 10**12)),
        factor=mu_factor,
        hypotheses=hypotheses,
        char_polynomial=cp,
        factorization=factors,
    )


def _complex_roots_dominated(fac: UniPoly, mu: AlgebraicReal) -> bool:
    """Certify |z| < mu1 for every root z of fac (fac has complex roots and
    is not the dominant factor)."""
    if fac.degree == 2:
        # conjugate pair: |z|^2 = constant/lead exactly
        mod_sq = fac.coeff(0) / fac.leading()
        if mod_sq <= 0:
            raise AssertionError("quadratic with complex roots has positive norm")
        modulus_poly = UniPoly((-mod_sq.numerator, 0, mod_sq.denominator))
        modulus = isolate_real_roots(modulus_poly)[-1]
        return algebraic_cmp(mu, modulus) == 1
    # coarse certified bound first
    bound = cauchy_root_bound(fac)
    if cmp_with_rational(mu, bound) == 1:
        return True
    # Schur-Cohn at radii approaching mu1 from below
    cur = mu
    for _ in range(64):
        cur = cur.refined(cur.width() / 4)
        r = cur.lo
        if r > 0 and _roots_below(fac, r):
            return True
    return False


# ---------------------------------------------------------------------------
# growth diagnostics from integer sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthEstimate:
    ratios: tuple[Fraction, ...]
    mth_roots: tuple[Fraction, ...]

    def to_obj(self) -> dict:
        return {
            "ratios": [rat_to_str(r) for r in self.ratios],
            "mth_roots": [rat_to_str(r) for r in self.mth_roots],
        }


def integer_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by Newton iteration on integers."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n == 0:
        return 0
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def growth_estimate(seq: Sequence[int], digits: int = 9) -> GrowthEstimate:
    """Ratio and m-th-root diagnostics for a positive integer degree sequence.

    Ratios d_{m+1}/d_m are exact rationals; the m-th roots d_m^{1/m} are
    fixed-precision approximations (floor at the given digit count), for
    display only.
    """
    if not seq:
        raise ValueError("empty sequence")
    if any(s < 1 for s in seq):
        raise ValueError("entries must be at least 1")
    ratios = tuple(Fraction(b, a) for a, b in zip(seq, seq[1:]))
    scale = 10**digits
    roots = tuple(
        Fraction(integer_nth_root(int(s) * scale**m, m), scale)
        for m, s in enumerate(seq[1:], start=1)
    )
    return GrowthEstimate(ratios, roots)


# ---------------------------------------------------------------------------
# degree tuples
# ---------------------------------------------------------------------------

ValueLike = AlgebraicReal | Fraction | int


def _as_value(v: ValueLike) -> AlgebraicReal:
    if isinstance(v, AlgebraicReal):
        return v
    return AlgebraicReal.from_rational(as_rational(v))


@dataclass(frozen=True)
class DegreeTuple:
    values: tuple[AlgebraicReal, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 2:
            raise ValueError("a degree tuple has at least two entries")
        for end in (self.values[0], self.values[-1]):
            if not end.contains_rational(1):
                raise ValueError("the outer degrees must equal 1 exactly")
        for v in self.values:
            if cmp_with_rational(v, 1) < 0:
                raise ValueError("degrees are at least 1")

    def __len__(self) -> int:
        return len(self.values)

    def display(self, digits: int = 9) -> list[str]:
        out = []
        for v in self.values:
            q = v.rational_value()
            out.append(rat_to_str(q) if q is not None else v.decimal_enclosure(digits)[0])
        return out


def degree_tuple(values: Iterable[ValueLike]) -> DegreeTuple:
    return DegreeTuple(tuple(_as_value(v) for v in values))


def inverse_tuple(t: DegreeTuple) -> DegreeTuple:
    """Degree tuple of the inverse map: the reversed tuple."""
    return DegreeTuple(tuple(reversed(t.values)))


def tuples_equal(a: DegreeTuple, b: DegreeTuple) -> bool:
    return len(a) == len(b) and all(
        algebraic_equal(x, y) for x, y in zip(a.values, b.values)
    )


def _max_value(a: AlgebraicReal, b: AlgebraicReal) -> AlgebraicReal:
    return a if algebraic_cmp(a, b) >= 0 else b


def fibration_degrees(base: DegreeTuple) -> DegreeTuple:
    """Degrees of a fibration-preserving lift: lambda_k = max of the base
    degrees at k and k-1."""
    vals = base.values
    out = [vals[0]]
    for k in range(1, len(vals)):
        out.append(_max_value(vals[k], vals[k - 1]))
    out.append(vals[-1])
    return DegreeTuple(tuple(out))


_LOG_CONCAVITY_ROUNDS = 96


def check_log_concavity(t: DegreeTuple) -> tuple[bool, list[dict]]:
    """Certify lambda_j^2 >= lambda_{j-1} * lambda_{j+1} for interior j.

    Strict inequalities are decided by exact interval refinement; persistent
    overlaps are resolved by exact equality tests on defining polynomials
    (the only ties that occur are genuine equalities).  Returns the verdict
    and a per-index certificate recording the refined intervals.
    """
    certificate: list[dict] = []
    verdict = True
    for j in range(1, len(t.values) - 1):
        a, b, c = t.values[j], t.values[j - 1], t.values[j + 1]
        holds, cert = _certify_square_vs_product(a, b, c)
        cert["j"] = j
        certificate.append(cert)
        verdict = verdict and holds
    return verdict, certificate


def _certify_square_vs_product(
    a: AlgebraicReal, b: AlgebraicReal, c: AlgebraicReal
) -> tuple[bool, dict]:
    qa, qb, qc = a.rational_value(), b.rational_value(), c.rational_value()
    if qa is not None and qb is not None and qc is not None:
        holds = qa * qa >= qb * qc
        return holds, {
            "decided_by": "rational",
            "lhs": rat_to_str(qa * qa),
            "rhs": rat_to_str(qb * qc),
            "holds": holds,
        }
    x, y, z = a, b, c
    for _ in range(_LOG_CONCAVITY_ROUNDS):
        if x.lo > 0 and y.lo > 0 and z.lo > 0:
            sq = (x.lo * x.lo, x.hi * x.hi)
            pr = (y.lo * z.lo, y.hi * z.hi)
            cert = {
                "decided_by": "interval",
                "lhs_interval": [rat_to_str(sq[0]), rat_to_str(sq[1])],
                "rhs_interval": [rat_to_str(pr[0]), rat_to_str(pr[1])],
            }
            if sq[0] >= pr[1]:
                cert["holds"] = True
                return True, cert
            if sq[1] <= pr[0]:
                cert["holds"] = False
                return False, cert
        x, y, z = x._bisect_once(), y._bisect_once(), z._bisect_once()
    # persistent overlap: an exact tie
    if algebraic_equal(b, c) and algebraic_equal(a, b):
        return True, {"decided_by": "exact-equality", "holds": True}
    raise ArithmeticError("log-concavity comparison undecided at maximum refinement")
