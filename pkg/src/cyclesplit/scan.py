"""Prime-by-prime verification of local r-cycle-splitness.

For each prime ``p`` up to a bound, the defining polynomials are factored
modulo ``p``; the irreducible-factor degrees are the residue degrees of the
points of the algebra over Q_p.  A prime dividing the discriminant of the
product of all polynomials is reported as ramified and skipped.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyComponent, InputError, InvalidPolynomial, NoRecords, NoWitness
from .etale import FibreModel, class_pattern_table, cycle_split_density, format_pattern_tuple
from .polys import IntPolynomial, ModPolynomial, discriminant, factor_degree_pattern, prime_stream

DEFAULT_BOUND = 100_000
DEFAULT_TOLERANCE = 0.02
THREADS_ENV = "CYCLESPLIT_THREADS"


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def bezout(values: Sequence[int]) -> tuple[int, list[int]]:
    """gcd of ``values`` and integer coefficients realising it (iterated ext_gcd)."""
    g, coeffs = values[0], [1]
    for v in values[1:]:
        g, a, b = ext_gcd(g, v)
        coeffs = [c * a for c in coeffs] + [b]
    return g, coeffs


def witness_cycle(degrees: Iterable[int], r: int) -> list[tuple[int, int]]:
    """A zero-cycle of degree ``r`` built from points of the given degrees.

    Returns ``[(degree, coefficient), ...]`` with ``sum(n * d) == r``.  The
    support is the shortest sorted prefix whose gcd divides ``r``: it has the
    smallest possible maximum degree and is the lexicographically least sorted
    sub-multiset that does.  Entries whose Bezout coefficient comes out zero
    are dropped.
    """
    degrees = sorted(degrees)
    if not degrees or r < 1:
        raise NoWitness("need at least one degree and r >= 1")
    if r % math.gcd(*degrees):
        raise NoWitness(f"gcd of {degrees} does not divide {r}")
    g = 0
    for i, d in enumerate(degrees):
        g = math.gcd(g, d)
        if r % g == 0:
            support = degrees[: i + 1]
            break
    g, coeffs = bezout(support)
    scale = r // g
    return [(d, c * scale) for d, c in zip(support, coeffs) if c]


def local_verdict(patterns: Sequence[tuple[int, Sequence[int]]], r: int) -> tuple[int, bool]:
    """Weighted local index ``gcd_m(m * gcd(pattern_m))`` and whether it divides r."""
    index = 0
    for m, pattern in patterns:
        if not pattern:
            raise EmptyComponent(f"component of multiplicity {m} has an empty pattern")
        index = math.gcd(index, m * math.gcd(*pattern))
    if index == 0:
        raise EmptyComponent("no components")
    return index, r % index == 0


@dataclass(frozen=True)
class ScanSpec:
    components: tuple[tuple[int, tuple[IntPolynomial, ...]], ...]
    r: int = 1
    bound: int = DEFAULT_BOUND
    model: FibreModel | None = None
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        comps = []
        seen = set()
        for m, polys in self.components:
            if not isinstance(m, int) or m < 1:
                raise InputError(f"multiplicity must be a positive integer, got {m!r}")
            if m in seen:
                raise InputError(f"duplicate multiplicity {m}")
            seen.add(m)
            polys = tuple(IntPolynomial.parse(f) for f in polys)
            if not polys:
                raise InputError(f"component of multiplicity {m} has no polynomials")
            comps.append((m, polys))
        if not comps:
            raise InputError("scan needs at least one component")
        comps.sort(key=lambda c: c[0])
        object.__setattr__(self, "components", tuple(comps))
        if not isinstance(self.r, int) or self.r < 1:
            raise InputError(f"r must be a positive integer, got {self.r!r}")
        if self.bound < 2:
            raise InputError("prime bound must be at least 2")
        if not 0 < self.tolerance < 1:
            raise InputError("tolerance must lie in (0, 1)")
        for f in self.polynomials:
            if discriminant(f) == 0:
                raise InvalidPolynomial(f"{f} is not squarefree over Q")

    @property
    def polynomials(self) -> list[IntPolynomial]:
        return [f for _, polys in self.components for f in polys]

    def product(self) -> IntPolynomial:
        polys = self.polynomials
        prod = polys[0]
        for f in polys[1:]:
            prod = prod * f
        return prod

    def ramification_discriminant(self) -> int:
        d = discriminant(self.product())
        if d == 0:
            raise InvalidPolynomial("the defining polynomials share a factor over Q")
        return d

    def echo(self) -> dict:
        return {
            "components": [
                {"multiplicity": m, "polynomials": [str(f) for f in polys]}
                for m, polys in self.components
            ],
            "r": self.r,
            "primes_up_to": self.bound,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class PrimeScanRecord:
    p: int
    ramified: bool
    patterns: tuple | None = None  # ((m, (factor pattern, ...)), ...)
    index: int | None = None
    verdict: bool | None = None
    witness: tuple[tuple[int, int], ...] | None = None

    @property
    def witness_maxdeg(self) -> int | None:
        if not self.witness:
            return None
        return max(d for d, _ in self.witness)

    def pattern_key(self) -> str:
        return format_pattern_tuple(self.patterns) if self.patterns else ""

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "ramified": self.ramified,
            "component_patterns": self.pattern_key() if self.patterns else None,
            "index": self.index,
            "verdict": self.verdict,
            "witness": [list(t) for t in self.witness] if self.witness else None,
            "witness_maxdeg": self.witness_maxdeg,
        }

    def csv_row(self) -> list:
        def fmt(v):
            return "" if v is None else str(v).lower() if isinstance(v, bool) else str(v)
        return [self.p, fmt(self.ramified), self.pattern_key(), fmt(self.index),
                fmt(self.verdict), fmt(self.witness_maxdeg)]


CSV_COLUMNS = ["p", "ramified", "component_patterns", "index", "verdict", "witness_maxdeg"]


def scan_prime(components: Sequence[tuple[int, Sequence[IntPolynomial]]], r: int,
               p: int, disc: int) -> PrimeScanRecord:
    if disc % p == 0:
        return PrimeScanRecord(p, True)
    patterns = tuple(
        (m, tuple(factor_degree_pattern(ModPolynomial(p, f.coefficients)) for f in polys))
        for m, polys in components
    )
    flat = [(m, [d for pat in pats for d in pat]) for m, pats in patterns]
    index, verdict = local_verdict(flat, r)
    witness = None
    if verdict:
        weighted = [m * d for m, pat in flat for d in pat]
        witness = tuple(witness_cycle(weighted, r))
    return PrimeScanRecord(p, False, patterns, index, verdict, witness)


def _scan_chunk(args) -> list[PrimeScanRecord]:
    components, r, disc, primes = args
    return [scan_prime(components, r, p, disc) for p in primes]


def _env_cap() -> int | None:
    value = os.environ.get(THREADS_ENV)
    if not value:
        return None
    try:
        return max(1, int(value))
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be an integer, got {value!r}") from None


def default_workers() -> int:
    """Worker count when none is requested: ``$CYCLESPLIT_THREADS`` or 1."""
    return _env_cap() or 1


def resolve_workers(requested: int | None) -> int:
    """An explicit request, capped by ``$CYCLESPLIT_THREADS`` when that is set."""
    if requested is None:
        return default_workers()
    cap = _env_cap()
    requested = max(1, requested)
    return min(requested, cap) if cap else requested


def scan_records(spec: ScanSpec, workers: int | None = None) -> list[PrimeScanRecord]:
    workers = resolve_workers(workers)
    disc = spec.ramification_discriminant()
    primes = prime_stream(spec.bound)
    if workers == 1 or len(primes) < 2:
        return _scan_chunk((spec.components, spec.r, disc, primes))
    n_chunks = min(len(primes), workers * 4)
    size = -(-len(primes) // n_chunks)
    chunks = [primes[i:i + size] for i in range(0, len(primes), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_scan_chunk, [(spec.components, spec.r, disc, c) for c in chunks])
        return [rec for part in parts for rec in part]


@dataclass(frozen=True)
class PatternRow:
    pattern: tuple
    key: str
    classes: tuple[int, ...]
    predicted: Fraction | None
    count: int
    empirical: float
    member: bool
    ok: bool

    def to_dict(self) -> dict:
        return {
            "pattern": self.key,
            "classes": list(self.classes),
            "predicted": str(self.predicted) if self.predicted is not None else None,
            "predicted_float": float(self.predicted) if self.predicted is not None else None,
            "count": self.count,
            "empirical": self.empirical,
            "member": self.member,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class CrossValidationReport:
    rows: tuple[PatternRow, ...]
    tolerance: float
    samples: int
    density_predicted: Fraction | None = None
    density_empirical: float | None = None
    density_ok: bool = True

    @property
    def membership_failures(self) -> list[str]:
        return [row.key for row in self.rows if not row.member]

    @property
    def passed(self) -> bool:
        return self.density_ok and all(row.ok for row in self.rows)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "membership_failures": self.membership_failures,
            "density_predicted": str(self.density_predicted) if self.density_predicted is not None else None,
            "density_empirical": self.density_empirical,
            "density_ok": self.density_ok,
            "rows": [row.to_dict() for row in self.rows],
        }


def cross_validate(records: Sequence[PrimeScanRecord], model: FibreModel,
                   tolerance: float = DEFAULT_TOLERANCE, r: int | None = None) -> CrossValidationReport:
    """Compare observed factorization patterns with the model's Cebotarev prediction.

    Every observed pattern tuple must be the pattern of some conjugacy class,
    and its frequency must be within ``tolerance`` of the summed class
    densities.  With ``r`` given the split density is compared as well.
    """
    unramified = [rec for rec in records if not rec.ramified]
    if not unramified:
        raise NoRecords("no unramified records to validate")
    total = len(unramified)
    order = model.group.order
    predicted: dict = {}
    for row in class_pattern_table(model):
        frac, classes = predicted.get(row.patterns, (Fraction(0), ()))
        predicted[row.patterns] = (frac + Fraction(row.size, order), classes + (row.class_id,))
    observed = Counter(rec.patterns for rec in unramified)

    rows = []
    for pat, (frac, classes) in predicted.items():
        count = observed.get(pat, 0)
        emp = count / total
        rows.append(PatternRow(pat, format_pattern_tuple(pat), classes, frac, count, emp,
                               True, abs(emp - float(frac)) <= tolerance))
    for pat in sorted(set(observed) - set(predicted), key=format_pattern_tuple):
        count = observed[pat]
        rows.append(PatternRow(pat, format_pattern_tuple(pat), (), None, count, count / total,
                               False, False))

    density_pred = density_emp = None
    density_ok = True
    if r is not None:
        density_pred = cycle_split_density(model, r)
        density_emp = sum(1 for rec in unramified if rec.verdict) / total
        density_ok = abs(density_emp - float(density_pred)) <= tolerance
    return CrossValidationReport(tuple(rows), tolerance, total, density_pred, density_emp, density_ok)


@dataclass(frozen=True)
class ScanSummary:
    spec: ScanSpec
    primes_scanned: int
    ramified: tuple[int, ...]
    split_count: int
    nonsplit_primes: tuple[int, ...]
    max_witness_maxdeg: int | None
    pattern_counts: tuple[tuple[str, int], ...]
    cross_validation: CrossValidationReport | None = None

    @property
    def unramified_count(self) -> int:
        return self.primes_scanned - len(self.ramified)

    @property
    def split_density(self) -> Fraction:
        if not self.unramified_count:
            return Fraction(0)
        return Fraction(self.split_count, self.unramified_count)

    @property
    def all_split(self) -> bool:
        return self.split_count == self.unramified_count

    def to_dict(self) -> dict:
        n = self.unramified_count
        return {
            "spec": self.spec.echo(),
            "primes_scanned": self.primes_scanned,
            "ramified_primes": list(self.ramified),
            "unramified_count": n,
            "split_count": self.split_count,
            "nonsplit_count": len(self.nonsplit_primes),
            "nonsplit_primes_head": list(self.nonsplit_primes[:20]),
            "split_density": str(self.split_density),
            "split_density_float": float(self.split_density),
            "all_split": self.all_split,
            "max_witness_maxdeg": self.max_witness_maxdeg,
            "patterns": [
                {"pattern": key, "count": count, "frequency": count / n if n else 0.0}
                for key, count in self.pattern_counts
            ],
            "cross_validation": self.cross_validation.to_dict() if self.cross_validation else None,
        }


def summarize(spec: ScanSpec, records: Sequence[PrimeScanRecord]) -> ScanSummary:
    unramified = [rec for rec in records if not rec.ramified]
    counts = Counter(rec.pattern_key() for rec in unramified)
    maxdegs = [rec.witness_maxdeg for rec in unramified if rec.witness_maxdeg is not None]
    cv = None
    if spec.model is not None and unramified:
        cv = cross_validate(records, spec.model, spec.tolerance, spec.r)
    return ScanSummary(
        spec=spec,
        primes_scanned=len(records),
        ramified=tuple(rec.p for rec in records if rec.ramified),
        split_count=sum(1 for rec in unramified if rec.verdict),
        nonsplit_primes=tuple(rec.p for rec in unramified if not rec.verdict),
        max_witness_maxdeg=max(maxdegs) if maxdegs else None,
        pattern_counts=tuple(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))),
        cross_validation=cv,
    )


def scan(spec: ScanSpec, workers: int | None = None) -> tuple[list[PrimeScanRecord], ScanSummary]:
    records = scan_records(spec, workers)
    return records, summarize(spec, records)
