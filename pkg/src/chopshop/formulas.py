"""Closed-form Hilbert-function predictions for generic point configurations.

Everything here is exact integer or rational arithmetic: generic Hilbert
functions, the expected Hilbert function of the ideal generated by a single
degree component (the "chopped" ideal), predicted saturation gaps, Froeberg
lower bounds, complete-intersection tables, and liaison bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import math

from .grading import HilbertTable, first_difference, hs


class RangeError(ValueError):
    """Parameters outside the admissible range of a formula."""


@dataclass(frozen=True)
class CaseParams:
    """A configuration size r in projective n-space, with its derived degree.

    ``d`` is the least degree whose generic Hilbert function reaches r, so
    the degree-d component of a generic configuration's ideal is the first
    nonzero one.
    """

    n: int
    r: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.r < 1:
            raise ValueError(f"need r >= 1, got {self.r}")

    @property
    def d(self) -> int:
        t = 0
        while hs(self.n, t) < self.r:
            t += 1
        return t


def generic_hf(params: CaseParams, t: int) -> int:
    """Hilbert function of r generic points: min(hs(n,t), r)."""
    return min(hs(params.n, t), params.r)


def generic_table(params: CaseParams, t_max: int | None = None) -> HilbertTable:
    """Generic Hilbert table, stored through its stabilization degree."""
    if t_max is None:
        t_max = params.d
    vals = [generic_hf(params, t) for t in range(t_max + 1)]
    if vals[-1] != params.r:
        vals += [generic_hf(params, t) for t in range(t_max + 1, params.d + 1)]
    return HilbertTable(params.n, tuple(vals), params.r)


def gap_upper_bound(n: int, d: int) -> int:
    """Proven ceiling (n-1)d - (n+1) for the saturation gap in the hard regime."""
    return (n - 1) * d - (n + 1)


def _admissible(params: CaseParams) -> None:
    if params.r >= hs(params.n, params.d) - params.n:
        raise RangeError(
            f"r={params.r} is not below hs({params.n},{params.d}) - {params.n}; "
            "the chopped ideal need not cut out the configuration"
        )


def _expected_ideal_dim_raw(params: CaseParams, t: int) -> int:
    """Syzygy-counting alternating sum for the chopped ideal's dimension.

    Sums over every k >= 1 whose hs argument is nonnegative; the binomial
    counts k-fold products of the hs(n,d) - r degree-d generators.
    """
    n, d = params.n, params.d
    s = hs(n, d) - params.r
    total = 0
    k = 1
    while t - k * d >= 0:
        total += (-1) ** (k + 1) * hs(n, t - k * d) * math.comb(s, k)
        k += 1
    return total


@lru_cache(maxsize=None)
def _gap_and_table(n: int, r: int) -> tuple[int, tuple[int, ...]]:
    params = CaseParams(n, r)
    _admissible(params)
    d = params.d
    quotient = [hs(n, t) for t in range(d)]
    e = 0
    while True:
        t = d + e
        raw = _expected_ideal_dim_raw(params, t)
        target = hs(n, t) - r
        if e > 0 and raw >= target:
            quotient.append(r)
            return e, tuple(quotient)
        quotient.append(hs(n, t) - raw)
        e += 1


def expected_chopped_hf(params: CaseParams, t: int) -> tuple[int, int]:
    """Expected (ideal_dim, quotient_dim) of the chopped ideal at degree t.

    Below the first overshoot degree the ideal dimension is the alternating
    syzygy count; from the gap degree onward it is hs(n,t) - r.
    """
    if t < params.d:
        raise RangeError(f"degree {t} is below the generation degree {params.d}")
    _admissible(params)
    gap, quotient = _gap_and_table(params.n, params.r)
    if t <= params.d + gap:
        q = quotient[t]
    else:
        q = params.r
    return hs(params.n, t) - q, q


@dataclass(frozen=True)
class GapPrediction:
    """Predicted saturation gap with the quotient table that witnesses it.

    ``table`` stores the expected chopped quotient from degree 0 through
    d + gap (full ring values below d); ``bound`` is the proven ceiling.
    """

    gap: int
    table: HilbertTable
    bound: int


def predicted_gap(params: CaseParams) -> GapPrediction:
    """Least e > 0 at which the expected chopped quotient returns to r."""
    gap, quotient = _gap_and_table(params.n, params.r)
    table = HilbertTable(params.n, quotient, params.r)
    return GapPrediction(gap, table, gap_upper_bound(params.n, params.d))


def froberg(n: int, d: int, s: int, t: int) -> int:
    """Generic-forms lower bound series value at degree t.

    Alternating sum over k >= 0 of hs(n, t-kd)*C(s,k), truncated to zero
    from the first degree where it becomes nonpositive onward.
    """
    if s < 1 or d < 1:
        raise ValueError(f"need s >= 1 and d >= 1, got s={s}, d={d}")

    def raw(u: int) -> int:
        total = 0
        k = 0
        while u - k * d >= 0:
            total += (-1) ** k * hs(n, u - k * d) * math.comb(s, k)
            k += 1
        return total

    for u in range(t + 1):
        if raw(u) <= 0:
            return 0
    return raw(t)


def froberg_meets_hypothesis(n: int, s: int) -> bool:
    """Whether the count s of degree-d forms is in the proven regime."""
    return s >= n + 1


def lex_lower_bound_table(params: CaseParams, t_max: int) -> HilbertTable:
    """Capped Froeberg table: the proven lexicographic floor for the
    chopped quotient.  Froeberg values until they first drop to r, then r."""
    n, d = params.n, params.d
    s = hs(n, d) - params.r
    t1 = d + 1
    while froberg(n, d, s, t1) > params.r:
        t1 += 1
    vals = [froberg(n, d, s, t) if t < t1 else params.r for t in range(max(t_max, t1) + 1)]
    return HilbertTable(n, tuple(vals), params.r)


def interesting_range(n: int, d: int) -> tuple[Fraction, int]:
    """Exclusive bounds on r between which the chopped ideal gains a
    degree-(d+1) generator but still cuts out the configuration."""
    lower = Fraction((n + 1) * hs(n, d) - hs(n, d + 1), n)
    upper = hs(n, d) - n
    return lower, upper


def r_extremes_plane(d: int) -> tuple[int, int]:
    """Smallest and largest interesting r in the plane for degree d."""
    if d < 5:
        raise RangeError(f"the plane range is empty for d={d} < 5")
    r_min = (d * d + 2 * d + 2) // 2
    r_max = (d + 2) * (d + 1) // 2 - 3
    return r_min, r_max


def igc_gens_d1(params: CaseParams) -> int:
    """Expected number of degree-(d+1) minimal generators of the full ideal."""
    n, r, d = params.n, params.r, params.d
    return max(0, hs(n, d + 1) - r - (n + 1) * (hs(n, d) - r))


def betti_p2(r: int) -> tuple[int, int, int, int]:
    """Expected graded Betti numbers of r generic plane points.

    Returns (b1_d, b1_d1, b2_d1, b2_d2): generators in degrees d and d+1,
    relations in degrees d+1 and d+2.  The split of the relations is what
    exactness of the length-two resolution forces on the Hilbert series.
    """
    params = CaseParams(2, r)
    d = params.d
    b1d = hs(2, d) - r
    x = hs(2, d + 1) - 3 * b1d - r
    b1d1 = max(0, x)
    b2d1 = max(0, -x) if x <= 0 else 0
    b2d2 = b1d + b1d1 - 1 - b2d1
    if b2d2 < 0:
        raise RangeError(f"no generic resolution of this shape for r={r}")
    return b1d, b1d1, b2d1, b2d2


def ci_socle(n: int, degrees) -> int:
    """Last degree where a complete-intersection table still moves."""
    return sum(degrees) - n


@lru_cache(maxsize=None)
def _ci_numerator(degrees: tuple[int, ...]) -> tuple[int, ...]:
    # Coefficients of prod_i (1 - T^{d_i}).
    coeffs = [1]
    for d in degrees:
        nxt = coeffs + [0] * d
        for i, c in enumerate(coeffs):
            nxt[i + d] -= c
        coeffs = nxt
    return tuple(coeffs)


def ci_hf(n: int, degrees, t: int) -> int:
    """Hilbert function of a complete intersection of n forms in n+1 variables.

    Series expansion of prod (1 - T^{d_i}) / (1 - T)^{n+1}; the value
    stabilizes at prod d_i from the socle degree on.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != n:
        raise ValueError(f"need exactly n={n} degrees, got {len(degrees)}")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    if t < 0:
        return 0
    return sum(c * hs(n, t - j) for j, c in enumerate(_ci_numerator(degrees)) if t - j >= 0)


def ci_table(n: int, degrees, t_max: int | None = None) -> HilbertTable:
    """Complete-intersection Hilbert table through stabilization."""
    rho = ci_socle(n, degrees)
    top = max(rho, 0 if t_max is None else t_max)
    vals = tuple(ci_hf(n, degrees, t) for t in range(top + 1))
    return HilbertTable(n, vals, vals[-1])


def liaison_delta(n: int, degrees, delta_z) -> tuple[int, ...]:
    """Difference table of the residual of a configuration inside a
    complete intersection:  Dh_res(t) = Dh_ci(rho - t) - Dh_z(rho - t).

    ``delta_z`` lists the configuration's difference table from degree 0;
    entries past its end are zero.  Trailing zeros are trimmed.
    """
    rho = ci_socle(n, degrees)
    ci = ci_table(n, degrees)
    dci = first_difference(ci)
    dz = list(delta_z)

    def dz_at(t: int) -> int:
        return dz[t] if 0 <= t < len(dz) else 0

    out = []
    for t in range(rho + 1):
        v = dci.value_at(rho - t) - dz_at(rho - t)
        if v < 0:
            raise RangeError(
                f"difference table exceeds the complete intersection at degree {rho - t}"
            )
        out.append(v)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def theorem_oracle(family: str, t: int, *, d: int, n: int = 2) -> int:
    """Closed-form chopped quotient for the three proven families.

    family "rmax_p2": largest interesting r in the plane (d >= 5).
    family "rmin_p2_odd": smallest interesting r in the plane, odd d >= 5.
    family "rmax_general": r = hs(n,d) - (n+1) in any dimension.
    """
    if family == "rmax_p2":
        if n != 2:
            raise ValueError("rmax_p2 is a plane family")
        _, r = r_extremes_plane(d)
        if t < d:
            return hs(2, t)
        if t <= 2 * d - 3:
            return hs(2, t) - 3 * hs(2, t - d)
        return r
    if family == "rmin_p2_odd":
        if n != 2:
            raise ValueError("rmin_p2_odd is a plane family")
        if d % 2 == 0:
            raise RangeError(f"family needs odd d, got {d}")
        r, _ = r_extremes_plane(d)
        if t < d:
            return hs(2, t)
        if t == d + 1:
            return r + 1
        return r
    if family == "rmax_general":
        r = hs(n, d) - (n + 1)
        if r < 1 or hs(n, d - 1) >= r:
            raise RangeError(f"(n,d)=({n},{d}) does not give a minimal-degree case")
        if t < d:
            return hs(n, t)
        gap = max(gap_upper_bound(n, d), 0)
        if t > d + gap:
            return r
        total = 0
        k = 0
        while t - k * d >= 0:
            total += (-1) ** k * hs(n, t - k * d) * math.comb(n + 1, k)
            k += 1
        return total
    raise ValueError(f"unknown family {family!r}")
