"""Verification harness for the chopped-ideal Hilbert function conjecture.

A single case samples generic points over F_p, scans the chopped quotient,
compares it with the closed-form prediction, and emits a certificate: the
prime, the seed, the coordinates, and both value tables.  Anyone can replay
the certificate and land on the same integers, and one passing witness
settles the generic case by semicontinuity.

The harness also hunts for monomial ideals with the same chopped Hilbert
behavior (a combinatorial certificate needing no sampling at all) and runs
the missing-sextic membership demonstration for 18 plane points.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .formulas import CaseParams, expected_chopped_hf, predicted_gap
from .grading import Exponent, hs, monomials, product_index_map
from .modlinalg import PrimeField, in_span, rank
from .pointideals import (
    RETRY_BUDGET,
    GenericityError,
    PointConfig,
    chopped_profile,
    ideal_component,
    macaulay_matrix,
    sample_points,
)
from .version import __version__

SCHEMA_VERSION = 1

_MASK64 = (1 << 64) - 1


def _splitmix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, n: int, r: int, trial: int) -> int:
    """Per-case seed, a pure 64-bit hash of (base_seed, n, r, trial).

    Cases get independent streams no matter how the grid is scheduled, and
    rerunning any single case reproduces it exactly.
    """
    z = base_seed & _MASK64
    for v in (n, r, trial):
        z = _splitmix((z + 0x9E3779B97F4A7C15 * (v + 1)) & _MASK64)
    return z


@dataclass(frozen=True)
class Certificate:
    """Replayable witness of one verification case.

    ``points`` are the exact sampled coordinates; feeding them back through
    the same computation must reproduce ``observed_quotient`` bit for bit.
    Quotient arrays are indexed by degree starting at 0.
    """

    n: int
    r: int
    d: int
    prime: int
    seed: int
    retries: int
    points: tuple[tuple[int, ...], ...]
    observed_quotient: tuple[int, ...]
    expected_quotient: tuple[int, ...]
    observed_gap: int | None
    expected_gap: int
    verdict: str
    first_mismatch_degree: int | None
    tool_version: str
    wall_ms: int

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "r": self.r,
            "d": self.d,
            "prime": self.prime,
            "seed": self.seed,
            "retries": self.retries,
            "points": [list(row) for row in self.points],
            "observed_quotient": list(self.observed_quotient),
            "expected_quotient": list(self.expected_quotient),
            "observed_gap": self.observed_gap,
            "expected_gap": self.expected_gap,
            "verdict": self.verdict,
            "first_mismatch_degree": self.first_mismatch_degree,
            "tool_version": self.tool_version,
            "wall_ms": self.wall_ms,
        }

    @staticmethod
    def from_dict(data: dict) -> "Certificate":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {data.get('schema_version')}")
        return Certificate(
            n=data["n"],
            r=data["r"],
            d=data["d"],
            prime=data["prime"],
            seed=data["seed"],
            retries=data["retries"],
            points=tuple(tuple(row) for row in data["points"]),
            observed_quotient=tuple(data["observed_quotient"]),
            expected_quotient=tuple(data["expected_quotient"]),
            observed_gap=data["observed_gap"],
            expected_gap=data["expected_gap"],
            verdict=data["verdict"],
            first_mismatch_degree=data["first_mismatch_degree"],
            tool_version=data["tool_version"],
            wall_ms=data["wall_ms"],
        )


def verify_case(
    n: int, r: int, prime: PrimeField, seed: int, e_max: int | None = None
) -> Certificate:
    """Run one (n, r) case end to end and certify the outcome.

    Raises RangeError when r is too large for the chopped ideal to cut out
    the configuration.  A sampling failure becomes a GENERICITY_FAIL
    verdict rather than an exception, so grids keep going.
    """
    params = CaseParams(n, r)
    prediction = predicted_gap(params)  # also rejects inadmissible r
    start = time.perf_counter()
    try:
        config = sample_points(n, r, prime, seed)
    except GenericityError:
        wall = int((time.perf_counter() - start) * 1000)
        return Certificate(
            n=n,
            r=r,
            d=params.d,
            prime=prime.p,
            seed=seed,
            retries=RETRY_BUDGET,
            points=(),
            observed_quotient=(),
            expected_quotient=prediction.table.values,
            observed_gap=None,
            expected_gap=prediction.gap,
            verdict="GENERICITY_FAIL",
            first_mismatch_degree=None,
            tool_version=__version__,
            wall_ms=wall,
        )
    profile = chopped_profile(config, e_max=e_max)
    wall = int((time.perf_counter() - start) * 1000)
    return Certificate(
        n=n,
        r=r,
        d=params.d,
        prime=prime.p,
        seed=seed,
        retries=config.retries,
        points=tuple(tuple(int(v) for v in row) for row in config.coords),
        observed_quotient=profile.observed.values,
        expected_quotient=profile.expected.values,
        observed_gap=profile.observed_gap,
        expected_gap=prediction.gap,
        verdict="PASS" if profile.verdict == "match" else "FAIL",
        first_mismatch_degree=profile.first_mismatch_degree,
        tool_version=__version__,
        wall_ms=wall,
    )


def replay_certificate(cert: Certificate) -> bool:
    """Recompute a certificate from its stored points and compare.

    True when the stored coordinates reproduce the observed quotient table
    and gap exactly.  Certificates without points cannot be replayed.
    """
    if not cert.points:
        raise ValueError("certificate carries no points to replay")
    config = PointConfig(
        cert.n,
        cert.r,
        np.array(cert.points, dtype=np.int64),
        PrimeField(cert.prime),
        cert.seed,
        retries=cert.retries,
    )
    profile = chopped_profile(config)
    return (
        profile.observed.values == cert.observed_quotient
        and profile.observed_gap == cert.observed_gap
    )


@dataclass(frozen=True)
class SkippedCase:
    n: int
    r: int
    reason: str


@dataclass(frozen=True)
class GridReport:
    """All certificates of a grid run plus skip records and tallies."""

    certificates: tuple[Certificate, ...]
    skipped: tuple[SkippedCase, ...]
    summary: dict

    def to_dict(self) -> dict:
        return {
            "certificates": [c.to_dict() for c in self.certificates],
            "skipped": [
                {"n": s.n, "r": s.r, "reason": s.reason} for s in self.skipped
            ],
            "summary": dict(self.summary),
        }


def _run_case(args: tuple[int, int, int, int, int | None]) -> Certificate:
    n, r, p, seed, e_max = args
    return verify_case(n, r, PrimeField(p), seed, e_max=e_max)


def verify_grid(
    n: int,
    r_from: int,
    r_to: int,
    prime: PrimeField,
    base_seed: int,
    trials_per_case: int = 1,
    workers: int = 1,
    e_max: int | None = None,
) -> GridReport:
    """Verify every admissible r in [r_from, r_to].

    Inadmissible sizes (r at or above hs(n,d) - n for their degree) are
    recorded as skips with the reason spelled out.  Every admissible size
    runs, including the ones whose predicted gap is 1.  Per-case seeds come
    from derive_seed, so reports are reproducible and independent of the
    worker count.
    """
    start = time.perf_counter()
    jobs: list[tuple[int, int, int, int, int | None]] = []
    skipped: list[SkippedCase] = []
    for r in range(r_from, r_to + 1):
        params = CaseParams(n, r)
        d = params.d
        if r >= hs(n, d) - n:
            skipped.append(
                SkippedCase(
                    n, r, f"r >= hs({n},{d}) - {n}: chopped ideal cannot cut out Z"
                )
            )
            continue
        for trial in range(trials_per_case):
            jobs.append((n, r, prime.p, derive_seed(base_seed, n, r, trial), e_max))

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certificates = list(pool.map(_run_case, jobs, chunksize=1))
    else:
        certificates = [_run_case(job) for job in jobs]

    tally = {"PASS": 0, "FAIL": 0, "GENERICITY_FAIL": 0}
    for cert in certificates:
        tally[cert.verdict] += 1
    summary = {
        "pass": tally["PASS"],
        "fail": tally["FAIL"] + tally["GENERICITY_FAIL"],
        "skip": len(skipped),
        "total_wall_ms": int((time.perf_counter() - start) * 1000),
    }
    return GridReport(tuple(certificates), tuple(skipped), summary)


# ---------------------------------------------------------------------------
# Monomial-ideal certificates


def _divides(a: Exponent, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal generated by monomials, stored as minimal exponent vectors."""

    n: int
    generators: frozenset

    def __post_init__(self):
        gens = frozenset(Exponent(g) for g in self.generators)
        for a, b in itertools.permutations(gens, 2):
            if _divides(a, b):
                raise ValueError(f"generator {tuple(a)} divides {tuple(b)}")
        object.__setattr__(self, "generators", gens)

    def sorted_generators(self) -> tuple[Exponent, ...]:
        return tuple(sorted(self.generators))

    def permuted(self, perm: tuple[int, ...]) -> "MonomialIdeal":
        moved = frozenset(
            Exponent(tuple(g[i] for i in perm)) for g in self.generators
        )
        return MonomialIdeal(self.n, moved)


def _multiples_of(generators, n: int, t: int) -> set:
    """Degree-t monomials divisible by at least one generator."""
    out: set = set()
    for gen in generators:
        room = t - sum(gen)
        if room < 0:
            continue
        for shift in monomials(n, room):
            out.add(tuple(g + s for g, s in zip(gen, shift)))
    return out


def monomial_hf(ideal: MonomialIdeal, t: int) -> int:
    """Quotient Hilbert function: degree-t monomials outside the ideal."""
    return hs(ideal.n, t) - len(_multiples_of(ideal.generators, ideal.n, t))


def monomial_chopped_hf(ideal: MonomialIdeal, t: int) -> int:
    """Degree-t monomials inside the ideal (the graded piece it spans).

    For a monomial ideal the generated ideal is monomial again, so the
    dimension count is pure divisibility marking.
    """
    return len(_multiples_of(ideal.generators, ideal.n, t))


_PERMS3 = tuple(itertools.permutations(range(3)))


def _canonical_form(exps: frozenset) -> frozenset:
    images = [
        frozenset(tuple(e[i] for i in perm) for e in exps) for perm in _PERMS3
    ]
    return min(images, key=lambda s: tuple(sorted(s)))


SEARCH_SIZES = (18, 25, 32, 33)


def _is_saturated(generators, n: int, d: int, horizon: int) -> bool:
    """No monomial outside the ideal may have every variable shift inside.

    Such a socle monomial would mean the ideal differs from its saturation,
    so it could not be the ideal of a zero-dimensional scheme, let alone a
    degeneration of distinct points.  Generators all live in degrees d and
    d+1 here, so degrees below d-1 cannot produce socle elements and the
    quotient is eventually pure; scanning through the horizon suffices.
    """
    for t in range(max(d - 1, 0), horizon + 1):
        inside = _multiples_of(generators, n, t)
        inside_next = _multiples_of(generators, n, t + 1)
        for mono in monomials(n, t):
            if mono in inside:
                continue
            shifts = (
                tuple(m + (j == i) for j, m in enumerate(mono))
                for i in range(n + 1)
            )
            if all(s in inside_next for s in shifts):
                return False
    return True


def search_monomial_ideals(r: int) -> tuple[MonomialIdeal, ...]:
    """All plane monomial ideals of point degenerations whose quotient has
    the generic Hilbert function of r points and whose chopped ideal
    matches the conjectured table.

    The enumeration picks the degree-d generator set (up to variable
    permutation), requires its multiples to hit the conjectured chopped
    dimensions through degree 3d, extends in degree d+1 to the generic
    dimension, demands the quotient stay at r through 3d, and finally keeps
    only saturated ideals.  Saturation is what ties the combinatorial
    object back to configurations of r points: a plane ideal with constant
    quotient dimension r defines a length-r scheme exactly when it is
    saturated, and such schemes deform to r distinct points.  The returned
    list is the full permutation closure of the satisfiers, sorted.
    """
    if r not in SEARCH_SIZES:
        raise ValueError(f"supported sizes are {SEARCH_SIZES}, got {r}")
    n = 2
    params = CaseParams(n, r)
    d = params.d
    g = hs(n, d) - r
    horizon = 3 * d

    chopped_targets = {
        t: expected_chopped_hf(params, t)[0] for t in range(d + 1, horizon + 1)
    }
    degree_d = monomials(n, d)
    extension_pool_size = hs(n, d + 1) - r

    satisfiers: set = set()
    for gens in itertools.combinations(degree_d, g):
        gen_set = frozenset(gens)
        if _canonical_form(gen_set) != gen_set:
            continue
        if not all(
            len(_multiples_of(gen_set, n, t)) == chopped_targets[t]
            for t in range(d + 1, horizon + 1)
        ):
            continue
        multiples_d1 = _multiples_of(gen_set, n, d + 1)
        missing = extension_pool_size - len(multiples_d1)
        if missing < 0:
            continue
        pool = [m for m in monomials(n, d + 1) if m not in multiples_d1]
        for extension in itertools.combinations(pool, missing):
            full = gen_set | frozenset(extension)
            if all(
                hs(n, t) - len(_multiples_of(full, n, t)) == r
                for t in range(d + 2, horizon + 1)
            ) and _is_saturated(full, n, d, horizon):
                satisfiers.add(full)

    closure: set = set()
    for gens in satisfiers:
        for perm in _PERMS3:
            closure.add(frozenset(tuple(e[i] for i in perm) for e in gens))
    ideals = [MonomialIdeal(n, gens) for gens in closure]
    ideals.sort(key=lambda ideal: ideal.sorted_generators())
    return tuple(ideals)


# ---------------------------------------------------------------------------
# Membership demonstration: the sextic outside the chopped ideal


def _poly_mul(n: int, deg_a: int, a_coeffs, deg_b: int, b_coeffs, p: int):
    """Coefficient vector of the product of two homogeneous polynomials."""
    positions = product_index_map(n, deg_a, deg_b)
    a = np.asarray(a_coeffs, dtype=np.int64) % p
    b = np.asarray(b_coeffs, dtype=np.int64) % p
    terms = b[:, None] * a[None, :] % p
    out = np.zeros(hs(n, deg_a + deg_b), dtype=np.int64)
    np.add.at(out, positions.ravel(), terms.ravel())
    return out % p


def missing_sextic_demo(prime: PrimeField, seed: int) -> dict:
    """Exhibit a sextic in the ideal of 18 plane points that the quintics
    do not generate.

    Splits the configuration into two halves of 9, takes the unique cubic
    through each half, and tests their product for membership in the full
    degree-6 component versus the quintic-generated one.  The expected
    record is g_in_I6 true, g_in_chopped6 false, dimensions 10 and 9.
    """
    config = sample_points(2, 18, prime, seed)
    halves = []
    for rows in (config.coords[:9], config.coords[9:]):
        half = PointConfig(2, 9, rows, prime, seed)
        cubics = ideal_component(half, 3)
        if cubics.dim != 1:
            raise GenericityError(
                f"a 9-point half admits {cubics.dim} cubics instead of 1"
            )
        halves.append(cubics.vectors.array[:, 0])
    g = _poly_mul(2, 3, halves[0], 3, halves[1], prime.p)

    full6 = ideal_component(config, 6)
    quintics = ideal_component(config, 5)
    chopped6 = macaulay_matrix(quintics, 1)
    return {
        "g_in_I6": in_span(full6.vectors, g),
        "g_in_chopped6": in_span(chopped6, g),
        "chopped6_dim": rank(chopped6),
        "I6_dim": full6.dim,
    }
